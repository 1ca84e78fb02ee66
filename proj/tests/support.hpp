#pragma once

// Small builders shared by the unit tests.

#include <array>
#include <cmath>
#include <random>

#include "nsch/field.hpp"
#include "nsch/spectral.hpp"

namespace testing_support {

using nsch::Grid;
using nsch::ScalarField;
using nsch::VectorField;

// Samples fn(x, y, z) on the grid (z = 0 in 2D).
template <typename Fn>
ScalarField sample(const Grid& g, Fn fn) {
    ScalarField f(g);
    const int n = g.n();
    const double h = g.spacing();
    const int zr = g.dim() == 3 ? n : 1;
    std::size_t i = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < zr; ++c, ++i) f[i] = fn(a * h, b * h, c * h);
    return f;
}

inline ScalarField random_field(const Grid& g, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    ScalarField f(g);
    for (auto& v : f.values) v = uni(rng);
    return f;
}

inline VectorField random_vector(const Grid& g, unsigned seed) {
    VectorField v(g);
    for (int j = 0; j < g.dim(); ++j) v[j] = random_field(g, seed * 31 + j);
    return v;
}

// Random field with every |k_j| <= band (dealiased, derivative-exact).
inline ScalarField band_limited(const Grid& g, int band, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    nsch::SpectralField h(g);
    const auto& w = nsch::wavenumbers(g);
    for (std::size_t i = 0; i < h.size(); ++i) {
        bool in = w.kept[i] != 0;
        for (int a = 0; a < g.dim(); ++a) in = in && std::abs(w.k[a][i]) <= band;
        if (in) h[i] = {gauss(rng), gauss(rng)};
    }
    return nsch::to_physical(h);
}

inline VectorField band_limited_vector(const Grid& g, int band, unsigned seed) {
    VectorField v(g);
    for (int j = 0; j < g.dim(); ++j) v[j] = band_limited(g, band, seed * 17 + j);
    return v;
}

inline double max_diff(const ScalarField& a, const ScalarField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_diff(const VectorField& a, const VectorField& b) {
    double m = 0.0;
    for (int j = 0; j < a.dim(); ++j) m = std::max(m, max_diff(a[j], b[j]));
    return m;
}

inline double max_abs_vec(const VectorField& v) {
    double m = 0.0;
    for (const auto& c : v.components) m = std::max(m, nsch::max_abs(c));
    return m;
}

}  // namespace testing_support
