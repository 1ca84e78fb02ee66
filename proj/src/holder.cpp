#include "nsch/holder.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>

#include "nsch/lattice.hpp"
#include "nsch/solver.hpp"
#include "nsch/spectral.hpp"

namespace nsch {
namespace {

std::vector<std::array<int, 3>> directions(int dim) {
    if (dim == 2) return {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, -1, 0}};
    return {{1, 0, 0},  {0, 1, 0},  {0, 0, 1},  {1, 1, 0},  {1, -1, 0}, {1, 0, 1},  {1, 0, -1},
            {0, 1, 1},  {0, 1, -1}, {1, 1, 1},  {1, 1, -1}, {1, -1, 1}, {-1, 1, 1}};
}

// Wavevectors of octave j: the shift directions scaled by 2^j, plus knight-move
// directions (2,1)-type scaled by 2^(j-1) for j >= 1. The knight moves give triads
// with three distinct |k|; with axis and diagonal modes alone every triad has two
// legs of equal length and the filtered 2D energy flux cancels identically.
std::vector<std::array<int, 3>> octave_wavevectors(int dim, int j) {
    std::vector<std::array<int, 3>> out;
    for (const auto& d : directions(dim)) out.push_back({d[0] * (1 << j), d[1] * (1 << j), d[2] * (1 << j)});
    if (j == 0) return out;
    std::vector<std::array<int, 3>> knights;
    if (dim == 2) {
        knights = {{2, 1, 0}, {1, 2, 0}, {2, -1, 0}, {1, -2, 0}};
    } else {
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                if (a == b) continue;
                for (int sign : {1, -1}) {
                    std::array<int, 3> d{};
                    d[a] = 2;
                    d[b] = sign;
                    knights.push_back(d);
                }
            }
    }
    const int s = 1 << (j - 1);
    for (const auto& d : knights) out.push_back({d[0] * s, d[1] * s, d[2] * s});
    return out;
}

VectorField as_vector(const ScalarField& f) {
    VectorField v;
    v.grid = f.grid;
    v.components = {f};
    return v;
}

// max_x |f(x + y) - f(x)| with f(x + y) = shifted(x) for offset -y.
double max_increment(const VectorField& f, std::array<int, 3> shift, std::vector<ScalarField>& scratch) {
    const std::array<int, 3> back{-shift[0], -shift[1], -shift[2]};
    const std::size_t ncomp = f.components.size();
    for (std::size_t c = 0; c < ncomp; ++c) shift_into(f.components[c], back, scratch[c]);
    double m = 0.0;
    const std::size_t size = f.grid.size();
    for (std::size_t i = 0; i < size; ++i) {
        double s = 0.0;
        for (std::size_t c = 0; c < ncomp; ++c) {
            const double d = scratch[c][i] - f.components[c][i];
            s += d * d;
        }
        m = std::max(m, s);
    }
    return std::sqrt(m);
}

}  // namespace

std::vector<std::array<int, 3>> holder_shifts(const Grid& grid, int shift_budget) {
    if (shift_budget < grid.dim()) {
        throw ConfigError("shift budget must be at least the grid dimension");
    }
    const int top = grid.n() / 2;
    std::set<int> magnitudes;
    for (int i = 0; i < shift_budget; ++i) {
        const double frac = shift_budget == 1 ? 0.0 : double(i) / (shift_budget - 1);
        magnitudes.insert(std::clamp(static_cast<int>(std::lround(std::pow(double(top), frac))), 1, top));
    }
    std::vector<std::array<int, 3>> shifts;
    for (const auto& d : directions(grid.dim()))
        for (int m : magnitudes) shifts.push_back({m * d[0], m * d[1], m * d[2]});
    return shifts;
}

std::vector<ShiftIncrement> shift_increments(const VectorField& f, int shift_budget) {
    std::vector<ScalarField> scratch(f.components.size(), ScalarField(f.grid));
    std::vector<ShiftIncrement> out;
    for (const auto& y : holder_shifts(f.grid, shift_budget))
        out.push_back({y, torus_distance(f.grid, y), max_increment(f, y, scratch)});
    return out;
}

double holder_seminorm(const VectorField& f, double alpha, int shift_budget) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("Hoelder exponent must lie in (0, 1]");
    double best = 0.0;
    for (const auto& s : shift_increments(f, shift_budget))
        best = std::max(best, s.max_increment / std::pow(s.distance, alpha));
    return best;
}

double holder_seminorm(const ScalarField& f, double alpha, int shift_budget) {
    return holder_seminorm(as_vector(f), alpha, shift_budget);
}

double holder_seminorm_brute_force(const VectorField& f, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("Hoelder exponent must lie in (0, 1]");
    const int n = f.grid.n();
    const int zr = f.grid.dim() == 3 ? n : 1;
    std::vector<ScalarField> scratch(f.components.size(), ScalarField(f.grid));
    double best = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < zr; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                const std::array<int, 3> y{a, b, c};
                best = std::max(best, max_increment(f, y, scratch) / std::pow(torus_distance(f.grid, y), alpha));
            }
    return best;
}

double holder_seminorm_brute_force(const ScalarField& f, double alpha) {
    return holder_seminorm_brute_force(as_vector(f), alpha);
}

double holder_norm(const VectorField& f, double alpha, int shift_budget) {
    return max_norm(f) + holder_seminorm(f, alpha, shift_budget);
}

VectorField synth_holder_field(const Grid& grid, double alpha, int octaves, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("synthetic field exponent must lie in (0, 1)");
    if (octaves < 0 || 3 * (1L << octaves) > grid.n()) {
        throw ConfigError("octave count " + std::to_string(octaves) + " needs 2^octaves <= n/3 (n = " +
                          std::to_string(grid.n()) + ")");
    }
    const int dim = grid.dim();
    const int n = grid.n();
    const double h = grid.spacing();
    std::mt19937_64 rng(seed);
    VectorField u(grid);

    for (int j = 0; j <= octaves; ++j) {
        const double scale = std::pow(2.0, -alpha * j);
        for (const auto& d : octave_wavevectors(dim, j)) {
            std::array<double, 3> k{};
            double k_sq = 0.0;
            for (int a = 0; a < dim; ++a) {
                k[a] = double(d[a]);
                k_sq += k[a] * k[a];
            }
            // Random unit amplitude perpendicular to k.
            std::array<double, 3> amp{};
            double norm = 0.0;
            while (norm < 1e-3) {
                for (int a = 0; a < dim; ++a) amp[a] = 2.0 * unit_uniform(rng()) - 1.0;
                double kd = 0.0;
                for (int a = 0; a < dim; ++a) kd += amp[a] * k[a];
                norm = 0.0;
                for (int a = 0; a < dim; ++a) {
                    amp[a] -= kd * k[a] / k_sq;
                    norm += amp[a] * amp[a];
                }
                norm = std::sqrt(norm);
            }
            for (int a = 0; a < dim; ++a) amp[a] *= scale / norm;
            const double phase = 2.0 * std::numbers::pi * unit_uniform(rng());

            std::size_t idx = 0;
            const int zr = dim == 3 ? n : 1;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < zr; ++c, ++idx) {
                        const double arg = h * (k[0] * a + k[1] * b + k[2] * c) + phase;
                        const double v = std::cos(arg);
                        for (int comp = 0; comp < dim; ++comp) u[comp][idx] += amp[comp] * v;
                    }
        }
    }
    return leray_project(u);
}

}  // namespace nsch
