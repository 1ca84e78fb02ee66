#include "nsch/energy.hpp"

#include <algorithm>
#include <cmath>

#include "nsch/holder.hpp"
#include "nsch/spectral.hpp"

namespace nsch {

double phase_energy(const ScalarField& c, const PhysParams& params) {
    const VectorField grad_c = gradient(c);
    double grad_sq = 0.0;
    double bulk = 0.0;
    for (std::size_t x = 0; x < c.size(); ++x) {
        for (const auto& g : grad_c.components) grad_sq += g[x] * g[x];
        bulk += free_energy(params.potential, c[x]);
    }
    return (0.5 * params.gamma * grad_sq + bulk) * c.grid.cell_volume();
}

EnergyRecord energy(const State& state, const PhysParams& params, bool dealias) {
    const Grid& g = state.grid();
    const int dim = g.dim();
    const double dv = g.cell_volume();
    EnergyRecord r;
    r.t = state.t;

    double kinetic = 0.0;
    for (const auto& comp : state.u.components)
        for (double v : comp.values) kinetic += v * v;
    r.kinetic = 0.5 * kinetic * dv;

    const VectorField grad_c = gradient(state.c);
    double grad_sq = 0.0, bulk = 0.0;
    for (std::size_t x = 0; x < state.c.size(); ++x) {
        for (const auto& gc : grad_c.components) grad_sq += gc[x] * gc[x];
        bulk += free_energy(params.potential, state.c[x]);
    }
    r.interfacial = 0.5 * params.gamma * grad_sq * dv;
    r.bulk = bulk * dv;
    r.max_abs_c = max_abs(state.c);

    const auto du = jacobian(state.u);
    double sym = 0.0, full = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (std::size_t x = 0; x < g.size(); ++x) {
                const double d = 0.5 * (du[i][j][x] + du[j][i][x]);
                sym += d * d;
                full += du[i][j][x] * du[i][j][x];
            }
    r.viscous_rate = params.nu * sym * dv;
    r.grad_sq_rate = params.nu * full * dv;

    const ScalarField mu = chemical_potential(state.c, params, dealias);
    const VectorField grad_mu = gradient(mu);
    double gm = 0.0;
    for (const auto& comp : grad_mu.components)
        for (double v : comp.values) gm += v * v;
    r.mobility_rate = params.mobility_m * gm * dv;
    return r;
}

std::vector<double> energy_defect(std::vector<EnergyRecord>& series) {
    std::vector<double> defect;
    if (series.empty()) return defect;
    for (std::size_t i = 1; i < series.size(); ++i)
        if (!(series[i].t > series[i - 1].t)) throw InputError("energy series must be strictly increasing in time");
    const double e0 = series.front().total();
    double cum = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (i > 0) {
            const double dt = series[i].t - series[i - 1].t;
            cum += 0.5 * dt * (series[i].dissipation_rate() + series[i - 1].dissipation_rate());
        }
        series[i].cum_dissipation = cum;
        series[i].defect = i == 0 ? 0.0 : series[i].total() + cum - e0;
        defect.push_back(series[i].defect);
    }
    return defect;
}

double hypothesis_norm(const std::vector<State>& snapshots, double alpha, double delta) {
    if (snapshots.size() < 2) throw InputError("hypothesis norm needs at least 2 snapshots");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("Hoelder exponent must lie in (0, 1)");
    if (!(delta > 0.0)) throw DomainError("time-integrability margin delta must be positive");
    for (std::size_t i = 1; i < snapshots.size(); ++i)
        if (!(snapshots[i].t > snapshots[i - 1].t)) throw InputError("snapshots must be strictly increasing in time");

    const double p = 2.0 / (1.0 + alpha) + delta;
    std::vector<double> values;
    for (const auto& s : snapshots) values.push_back(std::pow(holder_norm(s.u, alpha), p));
    double integral = 0.0;
    for (std::size_t i = 1; i < snapshots.size(); ++i)
        integral += 0.5 * (snapshots[i].t - snapshots[i - 1].t) * (values[i] + values[i - 1]);
    return std::pow(integral, 1.0 / p);
}

}  // namespace nsch
