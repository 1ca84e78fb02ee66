#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nsch/mollifier.hpp"
#include "nsch/solver.hpp"

namespace nsch {

/// Symmetric rank-2 tensor field, upper triangle stored row by row.
struct SymTensorField {
    Grid grid;
    std::vector<ScalarField> entries;

    explicit SymTensorField(const Grid& g);
    ScalarField& operator()(int i, int j);
    const ScalarField& operator()(int i, int j) const;
    static int slot(int dim, int i, int j);
};

/// r_eps(u,u)(x) = sum_y w(y) [u(x-y) - u(x)] (x) [u(x-y) - u(x)] over the kernel stencil.
SymTensorField cet_commutator(const VectorField& u, const MollifierKernel& kernel);

/// max over x and (i,j) of |(u u)_eps - u_eps u_eps - r_eps + (u - u_eps)(u - u_eps)|.
/// r_eps is always the stencil sum; `backend` selects how (u u)_eps and u_eps are formed,
/// so Convolution::spectral deliberately mixes two discretizations.
double cet_identity_residual(const VectorField& u, const MollifierKernel& kernel,
                             Convolution backend = Convolution::quadrature);

/// Least-squares line through (log eps, log |value|).
struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    bool identically_zero = false;  ///< every value was zero; slope undefined
    int excluded_zeros = 0;         ///< zero values dropped from the fit
};

DecayFit decay_fit(std::span<const double> epsilons, std::span<const double> values);

/// A quantity tracked across a sweep of mollification radii.
struct DecayReport {
    std::string term;
    std::vector<double> epsilons;  ///< strictly decreasing
    std::vector<double> values;
    DecayFit fit;
    double predicted_slope = 0.0;  ///< NaN when no rate is predicted
    double alpha = 0.0;
};

/// Geometric ladder of `count` radii from pi/4 down to 4 spacings. When that
/// interval is empty or too short (coarse grids) it widens to [3 spacings, 1].
std::vector<double> epsilon_ladder(const Grid& grid, int count = 8);

/// Checks the mollifier bounds on f:
///   conv2_ratio = max|f - f_eps| / ([f]_alpha eps^alpha)
///   conv3_ratio = max|grad f_eps| / ([f]_alpha eps^(alpha-1))
/// The fits are of the raw maxima (predicted slopes alpha and alpha - 1).
std::pair<DecayReport, DecayReport> lemma1_check(const VectorField& f, double alpha,
                                                 std::span<const double> epsilons,
                                                 Convolution backend = Convolution::quadrature);

/// Space-time integrals of the remainder terms at one mollification radius.
struct ProofTerms {
    double I11 = 0.0;
    double I12 = 0.0;
    double I21 = 0.0;
    double I221 = 0.0;
    double I222 = 0.0;
    double J111 = 0.0;
    double J112 = 0.0;
    double J21 = 0.0;
    double J22 = 0.0;
    /// Mollified minus unmollified change of the phase energy between the
    /// first and last sample.
    double J12 = 0.0;
    double cet_residual = 0.0;  ///< max over samples
};

/// Evaluates every remainder term on a time series (>= 2 samples, increasing t),
/// integrating in time with the trapezoidal rule.
ProofTerms proof_terms(const std::vector<State>& states, const PhysParams& params, const MollifierKernel& kernel,
                       Convolution backend = Convolution::quadrature);

/// proof_terms over a sweep of radii, one DecayReport per term (I11, I12, I21,
/// I221, J111, J112, J21, J12, CET_residual, I222_J22).
std::vector<DecayReport> proof_term_sweep(const std::vector<State>& states, const PhysParams& params,
                                          std::span<const double> epsilons, double alpha,
                                          Convolution backend = Convolution::quadrature);

/// Predicted log-log slope of a named term for Hoelder exponent alpha (NaN if none).
double predicted_slope(const std::string& term, double alpha);

}  // namespace nsch
