#include "nsch/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nsch {

Grid::Grid(int dim, int n) : dim_(dim), n_(n) {
    if (dim != 2 && dim != 3) {
        throw ConfigError("grid dimension must be 2 or 3, got " + std::to_string(dim));
    }
    if (n < 8 || n % 2 != 0) {
        throw ConfigError("grid resolution must be even and >= 8, got " + std::to_string(n));
    }
}

double Grid::cell_volume() const { return std::pow(spacing(), dim_); }

std::size_t Grid::size() const {
    std::size_t s = 1;
    for (int i = 0; i < dim_; ++i) s *= static_cast<std::size_t>(n_);
    return s;
}

std::size_t Grid::spectral_size() const {
    if (dim_ == 0) return 0;
    return size() / static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_ / 2 + 1);
}

ScalarField::ScalarField(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size()) {
        throw ConfigError("field has " + std::to_string(values.size()) + " samples, grid expects " +
                          std::to_string(grid.size()));
    }
}

void check_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw ConfigError("fields live on different grids");
}

double mean(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s / static_cast<double>(f.size());
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double max_norm(const VectorField& v) {
    double m = 0.0;
    const std::size_t n = v.grid.size();
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (const auto& c : v.components) s += c[i] * c[i];
        m = std::max(m, s);
    }
    return std::sqrt(m);
}

double integrate(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s * f.grid.cell_volume();
}

double inner(const ScalarField& f, const ScalarField& g) {
    check_same_grid(f.grid, g.grid);
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
    return s * f.grid.cell_volume();
}

double inner(const VectorField& f, const VectorField& g) {
    double s = 0.0;
    for (int j = 0; j < f.dim(); ++j) s += inner(f[j], g[j]);
    return s;
}

bool all_finite(const ScalarField& f) {
    return std::all_of(f.values.begin(), f.values.end(), [](double v) { return std::isfinite(v); });
}

bool all_finite(const VectorField& v) {
    return std::all_of(v.components.begin(), v.components.end(),
                       [](const ScalarField& c) { return all_finite(c); });
}

}  // namespace nsch
