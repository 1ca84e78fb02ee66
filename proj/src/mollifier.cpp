#include "nsch/mollifier.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "nsch/lattice.hpp"
#include "nsch/spectral.hpp"

namespace nsch {
namespace {

double bump(double r) { return r < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0; }

// Marginal g(s) = integral of the unit-ball bump over the hyperplane x_1 = s,
// sampled at midpoints of [0, 1). Normalized so that 2 * sum(g) * ds = 1.
struct Marginal {
    static constexpr int nodes = 2048;
    std::vector<double> s;
    std::vector<double> g;
    double ds = 1.0 / nodes;

    explicit Marginal(int dim) : s(nodes), g(nodes) {
        constexpr int inner = 1024;
        double mass = 0.0;
        for (int i = 0; i < nodes; ++i) {
            s[i] = (i + 0.5) * ds;
            const double reach = std::sqrt(1.0 - s[i] * s[i]);
            const double dt = reach / inner;
            double acc = 0.0;
            for (int j = 0; j < inner; ++j) {
                const double t = (j + 0.5) * dt;
                const double r = std::sqrt(s[i] * s[i] + t * t);
                acc += dim == 2 ? 2.0 * bump(r) : 2.0 * std::numbers::pi * bump(r) * t;
            }
            g[i] = acc * dt;
            mass += 2.0 * g[i] * ds;
        }
        for (double& v : g) v /= mass;
    }

    double transform(double q) const {
        double acc = 0.0;
        for (int i = 0; i < nodes; ++i) acc += g[i] * std::cos(q * s[i]);
        return 2.0 * acc * ds;
    }
};

const Marginal& marginal(int dim) {
    static const Marginal two(2);
    static const Marginal three(3);
    return dim == 2 ? two : three;
}

}  // namespace

double bump_transform(int dim, double q) {
    if (dim != 2 && dim != 3) throw ConfigError("mollifier dimension must be 2 or 3");
    return marginal(dim).transform(q);
}

MollifierKernel::MollifierKernel(const Grid& grid, double epsilon, Resolvability check)
    : grid_(grid), epsilon_(epsilon) {
    const double h = grid.spacing();
    if (check == Resolvability::unchecked) {
        if (!(epsilon > h && epsilon < std::numbers::pi)) {
            throw ResolvabilityError("unchecked mollification radius must lie in (spacing, pi)");
        }
    } else if (!(epsilon >= 3.0 * h * (1.0 - 1e-12))) {
        throw ResolvabilityError("mollification radius " + std::to_string(epsilon) +
                                 " is below 3 grid spacings (" + std::to_string(3.0 * h) + ")");
    }
    if (check == Resolvability::checked && !(epsilon <= 1.0 + 1e-12)) {
        throw ResolvabilityError("mollification radius must lie in (0, 1], got " + std::to_string(epsilon));
    }

    const int dim = grid.dim();
    const int reach = static_cast<int>(std::floor(epsilon / h));
    const int zr = dim == 3 ? reach : 0;
    double total = 0.0;
    for (int a = -reach; a <= reach; ++a)
        for (int b = -reach; b <= reach; ++b)
            for (int c = -zr; c <= zr; ++c) {
                const double r = h * std::sqrt(double(a * a + b * b + c * c)) / epsilon;
                const double w = bump(r);
                if (w <= 0.0) continue;
                stencil_.push_back({{a, b, c}, w});
                total += w;
            }
    for (auto& p : stencil_) p.weight /= total;

    const auto& k_sq = wavenumbers(grid).k_sq;
    std::unordered_map<double, double> cache;
    multiplier_.resize(k_sq.size());
    for (std::size_t i = 0; i < k_sq.size(); ++i) {
        auto [it, inserted] = cache.try_emplace(k_sq[i], 0.0);
        if (inserted) it->second = bump_transform(dim, std::sqrt(k_sq[i]) * epsilon);
        multiplier_[i] = it->second;
    }
}

ScalarField MollifierKernel::profile() const {
    ScalarField out(grid_);
    const double inv_cell = 1.0 / grid_.cell_volume();
    for (const auto& p : stencil_) out[lattice_index(grid_, p.offset)] += p.weight * inv_cell;
    return out;
}

MollifierKernel make_mollifier(const Grid& grid, double epsilon) { return MollifierKernel(grid, epsilon); }

ScalarField mollify(const ScalarField& f, const MollifierKernel& kernel, Convolution backend) {
    check_same_grid(f.grid, kernel.grid());
    if (backend == Convolution::spectral) {
        SpectralField h = to_spectral(f);
        const auto& m = kernel.multiplier();
        for (std::size_t i = 0; i < h.size(); ++i) h[i] *= m[i];
        return to_physical(h);
    }
    // f + sum w (f(x - y) - f(x)): same sum, but constants come back exactly
    ScalarField out = f;
    ScalarField shifted(f.grid);
    for (const auto& p : kernel.stencil()) {
        shift_into(f, p.offset, shifted);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += p.weight * (shifted[i] - f[i]);
    }
    return out;
}

VectorField mollify(const VectorField& v, const MollifierKernel& kernel, Convolution backend) {
    VectorField out(v.grid);
    for (int j = 0; j < v.dim(); ++j) out.components[j] = mollify(v[j], kernel, backend);
    out.solenoidal = v.solenoidal;
    return out;
}

}  // namespace nsch
