#include "nsch/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nsch/energy.hpp"
#include "nsch/io.hpp"
#include "nsch/spectral.hpp"

namespace nsch {

void PhysParams::validate(bool stabilized) const {
    if (!(nu > 0.0)) throw ConfigError("viscosity nu must be a positive constant");
    if (!(gamma > 0.0)) throw ConfigError("capillary coefficient gamma must be positive");
    if (!(mobility_m > 0.0)) throw ConfigError("mobility m must be a positive constant (non-degenerate)");
    potential.validate();
    if (!(stabilization_S >= 0.0)) throw ConfigError("stabilization S must be nonnegative");
    if (stabilized) {
        const double alpha = stabilization_alpha(potential);
        if (stabilization_S < 0.5 * alpha) {
            throw ConfigError("stabilized stepper needs S >= alpha/2 = " + std::to_string(0.5 * alpha) +
                              " where f' >= -alpha; got S = " + std::to_string(stabilization_S));
        }
    }
}

void StepperConfig::validate() const {
    if (!(dt > 0.0)) throw ConfigError("time step dt must be positive");
}

namespace {

ScalarField pointwise_f(const ScalarField& c, const PotentialSpec& spec) {
    ScalarField out(c.grid);
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = f_of_potential(spec, c[i]);
    return out;
}

ScalarField product(const ScalarField& a, const ScalarField& b) {
    ScalarField out(a.grid);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

SpectralField transformed_product(const ScalarField& a, const ScalarField& b, bool dealias) {
    SpectralField h = to_spectral(product(a, b));
    if (dealias) dealias_in_place(h);
    return h;
}

// mu_hat from c_hat and the pointwise f(c).
SpectralField chemical_potential_hat(const ScalarField& c, const SpectralField& c_hat, const PhysParams& params,
                                     bool dealias) {
    SpectralField mu = to_spectral(pointwise_f(c, params.potential));
    if (dealias) dealias_in_place(mu);
    const auto& ksq = wavenumbers(c.grid).k_sq;
    for (std::size_t i = 0; i < mu.size(); ++i) mu[i] += params.gamma * ksq[i] * c_hat[i];
    return mu;
}

// -div(sum_j T_ij) for the spectral tensor T (symmetric storage by (i,j) lookup).
void add_minus_divergence(std::vector<SpectralField>& acc, const std::vector<std::vector<SpectralField>>& t) {
    const Grid& g = acc.front().grid;
    const auto& w = wavenumbers(g);
    const int dim = g.dim();
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const auto& tij = t[std::min(i, j)][std::max(i, j) - std::min(i, j)];
            const auto& kj = w.k[j];
            for (std::size_t m = 0; m < acc[i].size(); ++m)
                acc[i][m] -= std::complex<double>(0.0, kj[m]) * tij[m];
        }
}

}  // namespace

ScalarField chemical_potential(const ScalarField& c, const PhysParams& params, bool dealias) {
    return to_physical(chemical_potential_hat(c, to_spectral(c), params, dealias));
}

VectorField capillary_force(const ScalarField& c, const ScalarField& mu, const PhysParams&, bool dealias) {
    check_same_grid(c.grid, mu.grid);
    const VectorField grad_c = gradient(c);
    std::vector<SpectralField> force;
    for (int j = 0; j < c.grid.dim(); ++j) force.push_back(transformed_product(mu, grad_c[j], dealias));
    leray_project_in_place(force);
    VectorField out = to_physical(force);
    out.solenoidal = true;
    return out;
}

VectorField korteweg_force(const ScalarField& c, const PhysParams& params, bool dealias) {
    const int dim = c.grid.dim();
    const VectorField grad_c = gradient(c);
    std::vector<SpectralField> force(dim, SpectralField(c.grid));
    std::vector<std::vector<SpectralField>> stress(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            SpectralField s = transformed_product(grad_c[i], grad_c[j], dealias);
            for (auto& v : s.coefficients) v *= params.gamma;
            stress[i].push_back(std::move(s));
        }
    add_minus_divergence(force, stress);
    leray_project_in_place(force);
    VectorField out = to_physical(force);
    out.solenoidal = true;
    return out;
}

State step(const State& state, const PhysParams& params, const StepperConfig& cfg) {
    const Grid& g = state.grid();
    const int dim = g.dim();
    const double dt = cfg.dt;
    const auto& w = wavenumbers(g);
    const std::size_t m = g.spectral_size();

    const SpectralField c_hat = to_spectral(state.c);
    SpectralField f_hat = to_spectral(pointwise_f(state.c, params.potential));
    if (cfg.dealias) dealias_in_place(f_hat);

    // Explicit concentration flux -div(c u).
    SpectralField nc(g);
    for (int j = 0; j < dim; ++j) {
        const SpectralField cu = transformed_product(state.c, state.u[j], cfg.dealias);
        for (std::size_t i = 0; i < m; ++i) nc[i] -= std::complex<double>(0.0, w.k[j][i]) * cu[i];
    }

    State next;
    next.t = state.t + dt;

    if (cfg.flow == FlowMode::coupled) {
        std::vector<SpectralField> nu_hat(dim, SpectralField(g));
        std::vector<std::vector<SpectralField>> uu(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) uu[i].push_back(transformed_product(state.u[i], state.u[j], cfg.dealias));
        add_minus_divergence(nu_hat, uu);

        SpectralField mu_hat = f_hat;
        for (std::size_t i = 0; i < m; ++i) mu_hat[i] += params.gamma * w.k_sq[i] * c_hat[i];
        const ScalarField mu = to_physical(mu_hat);
        for (int j = 0; j < dim; ++j) {
            const ScalarField dc = to_physical(derivative_hat(c_hat, j));
            const SpectralField f = transformed_product(mu, dc, cfg.dealias);
            for (std::size_t i = 0; i < m; ++i) nu_hat[j][i] += f[i];
        }
        leray_project_in_place(nu_hat);

        std::vector<SpectralField> u_hat = to_spectral(state.u);
        for (int j = 0; j < dim; ++j) {
            nu_hat[j][0] = 0.0;  // mean momentum is left to the k = 0 mode of u alone
            for (std::size_t i = 0; i < m; ++i)
                u_hat[j][i] = (u_hat[j][i] + dt * nu_hat[j][i]) / (1.0 + dt * params.nu * w.k_sq[i]);
            if (cfg.dealias) dealias_in_place(u_hat[j]);
        }
        leray_project_in_place(u_hat);
        next.u = to_physical(u_hat);
        next.u.solenoidal = true;
    } else {
        next.u = state.u;
    }

    SpectralField c_next(g);
    const double gm = params.gamma * params.mobility_m;
    const double sm = params.stabilization_S * params.mobility_m;
    for (std::size_t i = 0; i < m; ++i) {
        const double ksq = w.k_sq[i];
        const std::complex<double> rhs = c_hat[i] + dt * nc[i] -
                                         dt * params.mobility_m * ksq * (f_hat[i] - params.stabilization_S * c_hat[i]);
        c_next[i] = rhs / (1.0 + dt * gm * ksq * ksq + dt * sm * ksq);
    }
    if (cfg.dealias) dealias_in_place(c_next);
    next.c = to_physical(c_next);

    if (!all_finite(next.c) || !all_finite(next.u)) throw BlowUpError(state.t, dt);
    return next;
}

namespace {

bool due(double t, double target, double dt) { return t >= target - 0.5 * dt; }

}  // namespace

SimulationResult simulate(const State& initial, const PhysParams& params, const StepperConfig& cfg, double t_end,
                          const OutputSpec& outputs) {
    cfg.validate();
    params.validate(cfg.stabilized);
    if (!(t_end > initial.t)) throw ConfigError("t_end must exceed the initial time");

    SimulationResult result;
    std::vector<double> pending = outputs.snapshot_times;
    std::sort(pending.begin(), pending.end());
    std::size_t next_snapshot = 0;

    const bool to_disk = !outputs.directory.empty();
    if (to_disk) {
        std::filesystem::create_directories(outputs.directory);
        result.energy_csv = outputs.directory / "energy.csv";
    }

    auto take_snapshot = [&](const State& s) {
        if (outputs.keep_snapshots) result.snapshots.push_back(s);
        if (to_disk) {
            const auto path = outputs.directory / snapshot_file_name(result.snapshot_paths.size());
            write_snapshot(s, path);
            result.snapshot_paths.push_back(path);
        }
    };
    auto record = [&](const State& s) { result.records.push_back(energy(s, params, cfg.dealias)); };
    auto flush_energy = [&]() {
        energy_defect(result.records);
        if (to_disk) write_energy_csv(result.records, result.energy_csv);
    };

    State s = initial;
    record(s);
    while (next_snapshot < pending.size() && due(s.t, pending[next_snapshot], cfg.dt)) {
        take_snapshot(s);
        ++next_snapshot;
    }

    int steps = 0;
    try {
        while (s.t < t_end - 0.5 * cfg.dt) {
            s = step(s, params, cfg);
            ++steps;
            s.t = initial.t + steps * cfg.dt;  // no accumulated round-off in t
            const bool last = !(s.t < t_end - 0.5 * cfg.dt);
            if ((outputs.energy_every > 0 && steps % outputs.energy_every == 0) || last) {
                if (result.records.back().t != s.t) record(s);
            }
            while (next_snapshot < pending.size() && due(s.t, pending[next_snapshot], cfg.dt)) {
                take_snapshot(s);
                ++next_snapshot;
            }
        }
    } catch (const BlowUpError&) {
        flush_energy();
        throw;
    }
    flush_energy();
    result.final_state = std::move(s);
    result.steps = steps;
    return result;
}

VectorField taylor_green(const Grid& grid, double amplitude) {
    VectorField u(grid);
    const int n = grid.n();
    const double h = grid.spacing();
    if (grid.dim() == 2) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const double x = a * h, y = b * h;
                const std::size_t i = std::size_t(a) * n + b;
                u[0][i] = amplitude * std::sin(x) * std::cos(y);
                u[1][i] = -amplitude * std::cos(x) * std::sin(y);
            }
    } else {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    const double x = a * h, y = b * h, z = c * h;
                    const std::size_t i = (std::size_t(a) * n + b) * n + c;
                    u[0][i] = amplitude * std::sin(x) * std::cos(y) * std::cos(z);
                    u[1][i] = -amplitude * std::cos(x) * std::sin(y) * std::cos(z);
                    u[2][i] = 0.0;
                }
    }
    u.solenoidal = true;
    return u;
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

ScalarField spinodal_noise(const Grid& grid, double mean_value, double amplitude, int band, std::uint64_t seed) {
    if (band < 1) throw ConfigError("spinodal band must be >= 1");
    if (!(amplitude >= 0.0)) throw ConfigError("spinodal amplitude must be nonnegative");
    std::mt19937_64 rng(seed);
    const auto& w = wavenumbers(grid);
    SpectralField h(grid);
    for (std::size_t i = 0; i < grid.spectral_size(); ++i) {
        bool inside = w.k_sq[i] > 0.0 && w.kept[i];
        for (int j = 0; j < grid.dim(); ++j) inside = inside && std::abs(w.k[j][i]) <= band;
        // Draw for every mode so the stream does not depend on which modes are kept.
        const double r = unit_uniform(rng());
        const double phase = 2.0 * std::numbers::pi * unit_uniform(rng());
        if (inside) h[i] = std::polar(r, phase);
    }
    ScalarField c = to_physical(h);
    const double peak = max_abs(c);
    for (auto& v : c.values) v = mean_value + (peak > 0.0 ? amplitude * v / peak : 0.0);
    return c;
}

}  // namespace nsch
