#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "nsch/errors.hpp"

namespace nsch {

/// Uniform periodic lattice on the torus [0, 2*pi)^dim.
class Grid {
public:
    Grid() = default;
    Grid(int dim, int n);

    int dim() const { return dim_; }
    int n() const { return n_; }
    double spacing() const { return 2.0 * std::numbers::pi / n_; }
    /// Volume element spacing^dim used by the grid quadrature.
    double cell_volume() const;
    /// Number of real samples, n^dim.
    std::size_t size() const;
    /// Number of stored complex coefficients, n^(dim-1) * (n/2+1).
    std::size_t spectral_size() const;
    /// Signed wavenumber of a full-axis index: 0..n/2 then -n/2+1..-1.
    int wavenumber(int index) const { return index <= n_ / 2 ? index : index - n_; }

    bool operator==(const Grid&) const = default;

private:
    int dim_ = 0;
    int n_ = 0;
};

/// Real field sampled on a grid, row-major with the last axis fastest.
struct ScalarField {
    Grid grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0) : grid(g), values(g.size(), fill) {}
    ScalarField(const Grid& g, std::vector<double> v);

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }
};

/// dim real components on a common grid.
struct VectorField {
    Grid grid;
    std::vector<ScalarField> components;
    /// Set by leray_project and by constructors that guarantee div u = 0.
    bool solenoidal = false;

    VectorField() = default;
    explicit VectorField(const Grid& g) : grid(g), components(g.dim(), ScalarField(g)) {}

    ScalarField& operator[](int i) { return components[i]; }
    const ScalarField& operator[](int i) const { return components[i]; }
    int dim() const { return grid.dim(); }
};

/// Hermitian-reduced Fourier coefficients of a real field. The forward
/// transform divides by n^dim, so coefficient 0 is the field mean.
struct SpectralField {
    Grid grid;
    std::vector<std::complex<double>> coefficients;

    SpectralField() = default;
    explicit SpectralField(const Grid& g) : grid(g), coefficients(g.spectral_size()) {}

    std::complex<double>& operator[](std::size_t i) { return coefficients[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return coefficients[i]; }
    std::size_t size() const { return coefficients.size(); }
};

// Pointwise helpers used throughout the diagnostics.

double mean(const ScalarField& f);
double max_abs(const ScalarField& f);
/// Max over grid points of the Euclidean norm of v(x).
double max_norm(const VectorField& v);
/// Grid quadrature of f: spacing^dim * sum f.
double integrate(const ScalarField& f);
/// Grid quadrature of f*g.
double inner(const ScalarField& f, const ScalarField& g);
double inner(const VectorField& f, const VectorField& g);
bool all_finite(const ScalarField& f);
bool all_finite(const VectorField& v);

void check_same_grid(const Grid& a, const Grid& b);

}  // namespace nsch
