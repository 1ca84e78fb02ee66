#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "nsch/energy.hpp"
#include "nsch/holder.hpp"
#include "nsch/potential.hpp"
#include "nsch/spectral.hpp"
#include "support.hpp"

using namespace nsch;

namespace {

constexpr double pi = std::numbers::pi;

PhysParams params(double nu, double gamma) {
    PhysParams p;
    p.nu = nu;
    p.gamma = gamma;
    p.mobility_m = 1.0;
    return p;
}

}  // namespace

TEST_CASE("constant state") {
    for (int dim : {2, 3}) {
        const Grid g(dim, 16);
        const PhysParams p = params(0.1, 0.5);
        const State s{0.0, VectorField(g), ScalarField(g, 0.3)};
        const EnergyRecord r = energy(s, p);
        CHECK(r.bulk == doctest::Approx(std::pow(2 * pi, dim) * free_energy(p.potential, 0.3)).epsilon(1e-13));
        CHECK(r.kinetic == 0.0);
        CHECK(r.interfacial == 0.0);
        CHECK(r.viscous_rate == 0.0);
        CHECK(r.grad_sq_rate == 0.0);
        CHECK(r.mobility_rate == 0.0);
        CHECK(r.max_abs_c == doctest::Approx(0.3));
    }
}

TEST_CASE("Taylor-Green energies at t = 0") {
    const Grid g(2, 32);
    const double nu = 0.1;
    const EnergyRecord r = energy(State{0.0, taylor_green(g, 1.0), ScalarField(g, 0.0)}, params(nu, 0.5));
    CHECK(r.kinetic == doctest::Approx(pi * pi).epsilon(1e-12));
    CHECK(r.bulk == doctest::Approx(4 * pi * pi / 4).epsilon(1e-12));
    CHECK(r.interfacial == 0.0);
    // every component has |k|^2 = 2
    CHECK(r.grad_sq_rate == doctest::Approx(4 * nu * pi * pi).epsilon(1e-12));
    CHECK(r.viscous_rate == doctest::Approx(2 * nu * pi * pi).epsilon(1e-12));
}

TEST_CASE("defect of trivial and analytic series") {
    std::vector<EnergyRecord> one(1);
    one[0].kinetic = 3.0;
    one[0].grad_sq_rate = 1.0;
    CHECK(energy_defect(one).at(0) == 0.0);

    // exact decay sampled at dt: E = pi^2 e^{-4 nu t} + pi^2, rate 4 nu pi^2 e^{-4 nu t}
    const Grid g(2, 32);
    const double nu = 0.5, dt = 0.05, T = 2.0;
    const PhysParams p = params(nu, 0.5);
    std::vector<EnergyRecord> series;
    for (int j = 0; j * dt <= T + 1e-12; ++j) {
        const double t = j * dt;
        auto r = energy(State{t, taylor_green(g, std::exp(-2 * nu * t)), ScalarField(g, 0.0)}, p);
        r.t = t;
        series.push_back(r);
    }
    const auto d = energy_defect(series);
    CHECK(d.front() == 0.0);
    const double rate0 = 4 * nu * pi * pi;
    const double bound = T * dt * dt / 12.0 * rate0 * std::pow(4 * nu, 2);
    double worst = 0.0;
    for (double v : d) worst = std::max(worst, std::abs(v));
    CHECK(worst <= bound * (1 + 1e-9) + 1e-12);
    CHECK(worst > 0.1 * bound);  // a real trapezoid error, not a zero by accident
    CHECK(series.back().cum_dissipation == doctest::Approx(pi * pi * (1 - std::exp(-4 * nu * T))).epsilon(1e-2));
}

TEST_CASE("unsorted series is rejected") {
    std::vector<EnergyRecord> s(2);
    s[0].t = 1.0;
    s[1].t = 0.5;
    CHECK_THROWS_AS(energy_defect(s), InputError);
}

// Fails as of writing: the recorded rate uses mu(c), not the scheme's mu~, and the
// defect comes out positive and first order in dt (about 0.03 here).
TEST_CASE("energy inequality for the stabilized scheme from rest") {
    const Grid g(2, 32);
    for (auto flow : {FlowMode::coupled, FlowMode::frozen}) {
        PhysParams p = params(0.1, 0.05);
        StepperConfig cfg;
        cfg.dt = 2e-3;
        cfg.flow = flow;
        OutputSpec out;
        out.energy_every = 1;
        const State s{0.0, VectorField(g), spinodal_noise(g, 0.0, 0.3, 6, 21)};
        const auto res = simulate(s, p, cfg, 0.5, out);
        double worst = -1e300;
        for (const auto& r : res.records) worst = std::max(worst, r.defect);
        INFO("max defect " << worst);
        CHECK(worst <= 1e-12);
    }
}

// The scheme dissipates m |grad mu~|^2 with mu~ = f(c^n) + S (c^{n+1} - c^n) - gamma Lap c^{n+1},
// rebuilt here from the two states.
TEST_CASE("discrete energy law of one stabilized step") {
    const Grid g(2, 32);
    PhysParams p = params(0.1, 0.05);
    StepperConfig cfg;
    cfg.dt = 2e-3;
    cfg.flow = FlowMode::frozen;
    State s{0.0, VectorField(g), spinodal_noise(g, 0.0, 0.3, 6, 21)};
    double worst = -1e300;
    for (int k = 0; k < 250; ++k) {
        const State next = step(s, p, cfg);
        ScalarField f(g);
        for (std::size_t i = 0; i < g.size(); ++i) f[i] = f_of_potential(p.potential, s.c[i]);
        const ScalarField lap = laplacian(next.c);
        ScalarField mu(g);
        for (std::size_t i = 0; i < g.size(); ++i)
            mu[i] = f[i] + p.stabilization_S * (next.c[i] - s.c[i]) - p.gamma * lap[i];
        const VectorField gm = gradient(mu);
        const double diss = p.mobility_m * inner(gm, gm);
        const double e0 = energy(s, p).total(), e1 = energy(next, p).total();
        worst = std::max(worst, (e1 - e0 + cfg.dt * diss) / e0);
        s = next;
    }
    INFO("worst relative step balance " << worst);
    CHECK(worst <= 1e-12);
}

TEST_CASE("hypothesis norm") {
    const Grid g(2, 32);
    const double alpha = 0.5, delta = 0.1;
    const double p = 2.0 / (1.0 + alpha) + delta;

    std::vector<State> zero{State{0.0, VectorField(g), ScalarField(g)}, State{1.0, VectorField(g), ScalarField(g)}};
    CHECK(hypothesis_norm(zero, alpha, delta) == 0.0);

    const VectorField u = synth_holder_field(g, alpha, 3, 5);
    const double norm = holder_norm(u, alpha);
    CHECK(norm > 0.0);
    std::vector<State> unit{State{0.0, u, ScalarField(g)}, State{1.0, u, ScalarField(g)}};
    CHECK(hypothesis_norm(unit, alpha, delta) == doctest::Approx(norm).epsilon(1e-12));

    const double T = 2.5;
    std::vector<State> steady;
    for (int j = 0; j <= 5; ++j) steady.push_back(State{T * j / 5.0, u, ScalarField(g)});
    CHECK(hypothesis_norm(steady, alpha, delta) == doctest::Approx(std::pow(T, 1.0 / p) * norm).epsilon(1e-12));
}
