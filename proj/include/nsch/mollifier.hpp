#pragma once

#include <array>
#include <span>
#include <vector>

#include "nsch/field.hpp"

namespace nsch {

/// How a convolution with the mollifier is evaluated.
///
/// quadrature: lattice sum over the kernel support with the sampled, renormalized
///             weights. Every term of the commutator identity must use this one
///             discretization for the identity to hold to round-off.
/// spectral:   multiplication by the Fourier transform of the continuous kernel,
///             i.e. exact mollification of the trigonometric interpolant.
enum class Convolution { quadrature, spectral };

struct StencilPoint {
    std::array<int, 3> offset{};  ///< lattice offset y / spacing
    double weight = 0.0;          ///< spacing^dim * rho_eps(y), normalized to sum 1
};

/// checked: 3*spacing <= eps <= 1. unchecked: any eps in (0, pi) whose stencil is
/// nonempty; meant for exercising the lattice sum on grids too coarse for any
/// resolvable radius (oracle tests), not for diagnostics.
enum class Resolvability { checked, unchecked };

/// rho_eps(x) = eps^-dim rho(x/eps), rho(x) = Z^-1 exp(-1/(1-|x|^2)) on |x| < 1.
class MollifierKernel {
public:
    MollifierKernel(const Grid& grid, double epsilon, Resolvability check = Resolvability::checked);

    const Grid& grid() const { return grid_; }
    double epsilon() const { return epsilon_; }
    /// Nonzero lattice samples; weights are nonnegative and sum to one.
    std::span<const StencilPoint> stencil() const { return stencil_; }
    /// Kernel samples rho_eps(y) wrapped periodically onto the grid.
    ScalarField profile() const;
    /// Continuous-kernel Fourier multiplier per reduced spectral mode (real, <= 1).
    const std::vector<double>& multiplier() const { return multiplier_; }

private:
    Grid grid_;
    double epsilon_;
    std::vector<StencilPoint> stencil_;
    std::vector<double> multiplier_;
};

/// Validates 3*spacing <= epsilon <= 1 and builds the kernel.
MollifierKernel make_mollifier(const Grid& grid, double epsilon);

/// Fourier transform of the unit-mass bump in `dim` dimensions at |k| = q.
double bump_transform(int dim, double q);

ScalarField mollify(const ScalarField& f, const MollifierKernel& kernel,
                    Convolution backend = Convolution::spectral);
VectorField mollify(const VectorField& v, const MollifierKernel& kernel,
                    Convolution backend = Convolution::spectral);

}  // namespace nsch
