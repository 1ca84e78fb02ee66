#include "nsch/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace nsch {
namespace {

struct Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
    Wavenumbers tables;

    Plans() = default;
    Plans(const Plans&) = delete;
    Plans& operator=(const Plans&) = delete;
    ~Plans() {
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
    }
};

Wavenumbers build_tables(const Grid& g) {
    const int n = g.n();
    const int dim = g.dim();
    const int nh = n / 2 + 1;
    const std::size_t m = g.spectral_size();
    Wavenumbers w;
    for (int j = 0; j < 3; ++j) w.k[j].assign(j < dim ? m : 0, 0.0);
    w.k_sq.resize(m);
    w.k_deriv_sq.resize(m);
    w.kept.resize(m);
    w.weight.resize(m);

    auto fill = [&](std::size_t idx, std::array<int, 3> full, int last) {
        double ksq = 0.0;
        double kdsq = 0.0;
        bool keep = true;
        for (int j = 0; j < dim; ++j) {
            const int kj = full[j];
            ksq += double(kj) * kj;
            keep = keep && (3 * std::abs(kj) <= n);
            const double kd = (std::abs(kj) == n / 2) ? 0.0 : double(kj);
            w.k[j][idx] = kd;
            kdsq += kd * kd;
        }
        w.k_sq[idx] = ksq;
        w.k_deriv_sq[idx] = kdsq;
        w.kept[idx] = keep ? 1 : 0;
        w.weight[idx] = (last == 0 || last == n / 2) ? 1.0 : 2.0;
    };

    std::size_t idx = 0;
    if (dim == 2) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < nh; ++b) fill(idx++, {g.wavenumber(a), b, 0}, b);
    } else {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < nh; ++c) fill(idx++, {g.wavenumber(a), g.wavenumber(b), c}, c);
    }
    return w;
}

const Plans& plans_for(const Grid& g) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<Plans>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{g.dim(), g.n()}];
    if (!slot) {
        auto p = std::make_unique<Plans>();
        int dims[3] = {g.n(), g.n(), g.n()};
        double* real = fftw_alloc_real(g.size());
        fftw_complex* cplx = fftw_alloc_complex(g.spectral_size());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        p->forward = fftw_plan_dft_r2c(g.dim(), dims, real, cplx, flags);
        p->backward = fftw_plan_dft_c2r(g.dim(), dims, cplx, real, flags);
        fftw_free(real);
        fftw_free(cplx);
        p->tables = build_tables(g);
        slot = std::move(p);
    }
    return *slot;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

const Wavenumbers& wavenumbers(const Grid& grid) { return plans_for(grid).tables; }

SpectralField to_spectral(const ScalarField& f) {
    const Plans& p = plans_for(f.grid);
    SpectralField out(f.grid);
    // r2c with FFTW_ESTIMATE leaves the input untouched.
    fftw_execute_dft_r2c(p.forward, const_cast<double*>(f.values.data()), as_fftw(out.coefficients.data()));
    const double scale = 1.0 / static_cast<double>(f.grid.size());
    for (auto& c : out.coefficients) c *= scale;
    return out;
}

ScalarField to_physical(const SpectralField& f) {
    const Plans& p = plans_for(f.grid);
    if (f.coefficients.size() != f.grid.spectral_size()) {
        throw ConfigError("spectral field size does not match its grid");
    }
    std::vector<std::complex<double>> scratch(f.coefficients);
    ScalarField out(f.grid);
    fftw_execute_dft_c2r(p.backward, as_fftw(scratch.data()), out.values.data());
    return out;
}

std::vector<SpectralField> to_spectral(const VectorField& v) {
    std::vector<SpectralField> out;
    out.reserve(v.dim());
    for (const auto& c : v.components) out.push_back(to_spectral(c));
    return out;
}

VectorField to_physical(const std::vector<SpectralField>& v) {
    VectorField out(v.front().grid);
    for (std::size_t j = 0; j < v.size(); ++j) out.components[j] = to_physical(v[j]);
    return out;
}

SpectralField derivative_hat(const SpectralField& f, int axis) {
    const auto& k = wavenumbers(f.grid).k[axis];
    SpectralField out(f.grid);
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::complex<double>(0.0, k[i]) * f[i];
    return out;
}

SpectralField laplacian_hat(const SpectralField& f) {
    const auto& ksq = wavenumbers(f.grid).k_sq;
    SpectralField out(f.grid);
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = -ksq[i] * f[i];
    return out;
}

void dealias_in_place(SpectralField& f) {
    const auto& kept = wavenumbers(f.grid).kept;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!kept[i]) f[i] = 0.0;
}

SpectralField dealias(const SpectralField& f) {
    SpectralField out = f;
    dealias_in_place(out);
    return out;
}

void leray_project_in_place(std::vector<SpectralField>& v) {
    const Grid& g = v.front().grid;
    const auto& w = wavenumbers(g);
    const int dim = g.dim();
    for (std::size_t i = 0; i < g.spectral_size(); ++i) {
        const double ksq = w.k_deriv_sq[i];
        if (ksq == 0.0) continue;
        std::complex<double> kdotv = 0.0;
        for (int j = 0; j < dim; ++j) kdotv += w.k[j][i] * v[j][i];
        const std::complex<double> s = kdotv / ksq;
        for (int j = 0; j < dim; ++j) v[j][i] -= w.k[j][i] * s;
    }
}

ScalarField laplacian(const ScalarField& f) { return to_physical(laplacian_hat(to_spectral(f))); }

VectorField gradient(const ScalarField& f) {
    const SpectralField fh = to_spectral(f);
    VectorField out(f.grid);
    for (int j = 0; j < f.grid.dim(); ++j) out.components[j] = to_physical(derivative_hat(fh, j));
    return out;
}

ScalarField divergence(const VectorField& v) {
    SpectralField acc(v.grid);
    for (int j = 0; j < v.dim(); ++j) {
        const SpectralField d = derivative_hat(to_spectral(v[j]), j);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += d[i];
    }
    return to_physical(acc);
}

VectorField leray_project(const VectorField& v) {
    auto vh = to_spectral(v);
    leray_project_in_place(vh);
    VectorField out = to_physical(vh);
    out.solenoidal = true;
    return out;
}

std::vector<std::vector<ScalarField>> jacobian(const VectorField& v) {
    std::vector<std::vector<ScalarField>> out(v.dim());
    for (int i = 0; i < v.dim(); ++i) {
        const SpectralField vh = to_spectral(v[i]);
        for (int j = 0; j < v.dim(); ++j) out[i].push_back(to_physical(derivative_hat(vh, j)));
    }
    return out;
}

double spectral_divergence_ratio(const VectorField& v) {
    const auto vh = to_spectral(v);
    const auto& w = wavenumbers(v.grid);
    double max_div = 0.0;
    double max_mag = 0.0;
    for (std::size_t i = 0; i < v.grid.spectral_size(); ++i) {
        std::complex<double> d = 0.0;
        double mag = 0.0;
        for (int j = 0; j < v.dim(); ++j) {
            d += w.k[j][i] * vh[j][i];
            mag += std::norm(vh[j][i]);
        }
        max_div = std::max(max_div, std::abs(d));
        max_mag = std::max(max_mag, std::sqrt(mag));
    }
    return max_mag == 0.0 ? 0.0 : max_div / max_mag;
}

double spectral_energy(const SpectralField& f) {
    const auto& w = wavenumbers(f.grid).weight;
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * std::norm(f[i]);
    return s;
}

}  // namespace nsch
