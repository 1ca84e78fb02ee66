#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <numbers>

#include "nsch/solver.hpp"
#include "nsch/spectral.hpp"
#include "support.hpp"

using namespace nsch;
using testing_support::max_diff;
using testing_support::sample;

namespace {

std::size_t mode_index(const Grid& g, int k0, int k1) {
    // 2D reduced layout: row index over axis 0, last axis holds 0..n/2.
    const int n = g.n();
    return std::size_t((k0 + n) % n) * (n / 2 + 1) + k1;
}

}  // namespace

TEST_CASE("constant field has only the mean mode") {
    for (int dim : {2, 3}) {
        const Grid g(dim, 16);
        const SpectralField h = to_spectral(ScalarField(g, 1.0));
        CHECK(std::abs(h[0] - 1.0) < 1e-15);
        double rest = 0.0;
        for (std::size_t i = 1; i < h.size(); ++i) rest = std::max(rest, std::abs(h[i]));
        CHECK(rest < 1e-15);
    }
}

TEST_CASE("sin(x1) transforms to two modes with -i/2 at k = +e1") {
    const Grid g(2, 16);
    const SpectralField h = to_spectral(sample(g, [](double x, double, double) { return std::sin(x); }));
    const auto plus = h[mode_index(g, 1, 0)];
    const auto minus = h[mode_index(g, -1, 0)];
    CHECK(std::abs(plus - std::complex<double>(0.0, -0.5)) < 1e-15);
    CHECK(std::abs(minus - std::complex<double>(0.0, 0.5)) < 1e-15);
    int nonzero = 0;
    for (std::size_t i = 0; i < h.size(); ++i) nonzero += std::abs(h[i]) > 1e-14;
    CHECK(nonzero == 2);
}

TEST_CASE("round trip reproduces random data") {
    for (int dim : {2, 3}) {
        const Grid g(dim, dim == 2 ? 64 : 16);
        const ScalarField f = testing_support::random_field(g, 5);
        CHECK(max_diff(to_physical(to_spectral(f)), f) <= 1e-12 * max_abs(f));
    }
}

TEST_CASE("Parseval under the normalized convention") {
    const Grid g(3, 16);
    const ScalarField f = testing_support::random_field(g, 9);
    const double physical = inner(f, f);
    const double spectral = spectral_energy(to_spectral(f)) * std::pow(2.0 * std::numbers::pi, 3);
    CHECK(std::abs(physical - spectral) <= 1e-10 * physical);
}

TEST_CASE("gradient of single modes and analytic products") {
    const Grid g(3, 16);
    const VectorField d = gradient(sample(g, [](double x, double, double) { return std::sin(x); }));
    CHECK(max_diff(d[0], sample(g, [](double x, double, double) { return std::cos(x); })) < 1e-12);
    CHECK(max_abs(d[1]) < 1e-12);
    CHECK(max_abs(d[2]) < 1e-12);

    const VectorField z = gradient(ScalarField(g, 3.0));
    for (const auto& c : z.components) CHECK(max_abs(c) == 0.0);

    const Grid g2(2, 32);
    const VectorField p =
        gradient(sample(g2, [](double x, double y, double) { return std::sin(x) * std::cos(y); }));
    CHECK(max_diff(p[0], sample(g2, [](double x, double y, double) { return std::cos(x) * std::cos(y); })) < 1e-12);
    CHECK(max_diff(p[1], sample(g2, [](double x, double y, double) { return -std::sin(x) * std::sin(y); })) < 1e-12);
}

TEST_CASE("laplacian and divergence identities") {
    const Grid g(2, 32);
    const ScalarField s = sample(g, [](double x, double, double) { return std::sin(x); });
    ScalarField minus_s = s;
    for (auto& v : minus_s.values) v = -v;
    CHECK(max_diff(laplacian(s), minus_s) < 1e-12);

    // band-limited data: the Nyquist derivative is zero by convention
    const ScalarField f = testing_support::band_limited(g, 10, 3);
    const ScalarField lap = laplacian(f);
    CHECK(max_diff(divergence(gradient(f)), lap) <= 1e-12 * max_abs(lap));

    CHECK(max_abs(divergence(taylor_green(g, 1.0))) < 1e-12);
    CHECK(max_abs(divergence(taylor_green(Grid(3, 16), 1.0))) < 1e-12);
}

TEST_CASE("Leray projection") {
    const Grid g(3, 16);
    // gradients are annihilated
    const VectorField grad = gradient(testing_support::band_limited(g, 5, 4));
    CHECK(testing_support::max_abs_vec(leray_project(grad)) <= 1e-12 * testing_support::max_abs_vec(grad));

    // solenoidal fields are unchanged
    const VectorField tg = taylor_green(g, 1.0);
    CHECK(max_diff(leray_project(tg), tg) < 1e-12);

    // idempotent and self-adjoint
    const VectorField v = testing_support::random_vector(g, 1);
    const VectorField w = testing_support::random_vector(g, 2);
    const VectorField pv = leray_project(v);
    CHECK(pv.solenoidal);
    CHECK(max_diff(leray_project(pv), pv) <= 1e-10 * testing_support::max_abs_vec(pv));
    const double a = inner(pv, w);
    const double b = inner(v, leray_project(w));
    CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));

    // divergence free in spectral space, mean kept
    CHECK(spectral_divergence_ratio(pv) <= 1e-12);
    for (int j = 0; j < 3; ++j) CHECK(mean(pv[j]) == doctest::Approx(mean(v[j])).epsilon(1e-12));
}

TEST_CASE("dealiasing") {
    const Grid g(2, 48);
    const ScalarField band = testing_support::band_limited(g, 16, 7);
    CHECK(max_diff(to_physical(dealias(to_spectral(band))), band) < 1e-13);

    // pure Nyquist mode along axis 0
    const ScalarField nyq = sample(g, [](double x, double, double) { return std::cos(24.0 * x); });
    CHECK(max_abs(to_physical(dealias(to_spectral(nyq)))) < 1e-14);

    const SpectralField r = to_spectral(testing_support::random_field(g, 8));
    CHECK(spectral_energy(dealias(r)) <= spectral_energy(r));
    CHECK(spectral_energy(dealias(r)) < 0.7 * spectral_energy(r));
}

TEST_CASE("symmetric gradient identity on solenoidal fields") {
    for (int dim : {2, 3}) {
        const Grid g(dim, dim == 2 ? 32 : 16);
        const VectorField u = leray_project(testing_support::random_vector(g, 12));
        const auto du = jacobian(u);
        double full = 0.0, sym = 0.0;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (std::size_t x = 0; x < g.size(); ++x) {
                    const double d = 0.5 * (du[i][j][x] + du[j][i][x]);
                    sym += d * d;
                    full += du[i][j][x] * du[i][j][x];
                }
        CHECK(std::abs(2.0 * sym - full) <= 1e-10 * full);
    }
}
