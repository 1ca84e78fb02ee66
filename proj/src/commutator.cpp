#include "nsch/commutator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nsch/energy.hpp"
#include "nsch/holder.hpp"
#include "nsch/lattice.hpp"
#include "nsch/spectral.hpp"

namespace nsch {

SymTensorField::SymTensorField(const Grid& g) : grid(g) {
    const int d = g.dim();
    entries.assign(d * (d + 1) / 2, ScalarField(g));
}

int SymTensorField::slot(int dim, int i, int j) {
    if (i > j) std::swap(i, j);
    return i * dim - i * (i - 1) / 2 + (j - i);
}

ScalarField& SymTensorField::operator()(int i, int j) { return entries[slot(grid.dim(), i, j)]; }
const ScalarField& SymTensorField::operator()(int i, int j) const { return entries[slot(grid.dim(), i, j)]; }

SymTensorField cet_commutator(const VectorField& u, const MollifierKernel& kernel) {
    check_same_grid(u.grid, kernel.grid());
    const int dim = u.dim();
    const std::size_t size = u.grid.size();
    SymTensorField r(u.grid);
    std::vector<ScalarField> diff(dim, ScalarField(u.grid));
    for (const auto& p : kernel.stencil()) {
        for (int a = 0; a < dim; ++a) {
            shift_into(u[a], p.offset, diff[a]);
            for (std::size_t x = 0; x < size; ++x) diff[a][x] -= u[a][x];
        }
        for (int a = 0; a < dim; ++a)
            for (int b = a; b < dim; ++b) {
                ScalarField& rab = r(a, b);
                for (std::size_t x = 0; x < size; ++x) rab[x] += p.weight * diff[a][x] * diff[b][x];
            }
    }
    return r;
}

namespace {

ScalarField product(const ScalarField& a, const ScalarField& b) {
    ScalarField out(a.grid);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) s += 0.5 * (t[i] - t[i - 1]) * (v[i] + v[i - 1]);
    return s;
}

bool is_uniform(const ScalarField& f) {
    return std::all_of(f.values.begin(), f.values.end(), [&](double v) { return v == f.values.front(); });
}

double identity_residual(const VectorField& u, const SymTensorField& r, const VectorField& ue,
                         const MollifierKernel& kernel, Convolution backend) {
    const int dim = u.dim();
    double worst = 0.0;
    for (int a = 0; a < dim; ++a)
        for (int b = a; b < dim; ++b) {
            const ScalarField uu_e = mollify(product(u[a], u[b]), kernel, backend);
            const ScalarField& rab = r(a, b);
            for (std::size_t x = 0; x < u.grid.size(); ++x) {
                const double da = u[a][x] - ue[a][x];
                const double db = u[b][x] - ue[b][x];
                const double res = uu_e[x] - ue[a][x] * ue[b][x] - rab[x] + da * db;
                worst = std::max(worst, std::abs(res));
            }
        }
    return worst;
}

}  // namespace

double cet_identity_residual(const VectorField& u, const MollifierKernel& kernel, Convolution backend) {
    return identity_residual(u, cet_commutator(u, kernel), mollify(u, kernel, backend), kernel, backend);
}

DecayFit decay_fit(std::span<const double> epsilons, std::span<const double> values) {
    if (epsilons.size() != values.size()) throw InputError("decay_fit: epsilon and value counts differ");
    if (epsilons.size() < 3) throw InputError("decay_fit needs at least 3 radii");
    DecayFit fit;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(epsilons[i] > 0.0)) throw InputError("decay_fit: radii must be positive");
        if (values[i] == 0.0) {
            ++fit.excluded_zeros;
            continue;
        }
        xs.push_back(std::log(epsilons[i]));
        ys.push_back(std::log(std::abs(values[i])));
    }
    if (xs.size() < 2) {
        fit.identically_zero = xs.empty();
        fit.slope = std::numeric_limits<double>::quiet_NaN();
        fit.intercept = std::numeric_limits<double>::quiet_NaN();
        fit.r_squared = std::numeric_limits<double>::quiet_NaN();
        return fit;
    }
    const double m = static_cast<double>(xs.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

std::vector<double> epsilon_ladder(const Grid& grid, int count) {
    if (count < 2) throw ConfigError("epsilon ladder needs at least 2 radii");
    const double h = grid.spacing();
    double hi = std::numbers::pi / 4.0;
    double lo = 4.0 * h;
    if (lo > 0.5 * hi) {
        hi = 1.0;
        lo = 3.0 * h;
    }
    if (lo >= hi) throw ResolvabilityError("grid too coarse for any resolvable mollification radius");
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = hi * std::pow(lo / hi, double(i) / (count - 1));
    out.back() = lo;
    return out;
}

double predicted_slope(const std::string& term, double alpha) {
    // Mollifier-bound arithmetic with u in C^alpha and c smooth.
    if (term == "I11" || term == "I12") return 3.0 * alpha - 1.0;
    if (term == "I21" || term == "J21") return 1.0 + alpha;
    if (term == "I221" || term == "J111" || term == "J112" || term == "J12") return 2.0;
    if (term == "conv2_ratio") return alpha;
    if (term == "conv3_ratio") return alpha - 1.0;
    return std::numeric_limits<double>::quiet_NaN();
}

std::pair<DecayReport, DecayReport> lemma1_check(const VectorField& f, double alpha, std::span<const double> epsilons,
                                                 Convolution backend) {
    DecayReport conv2{"conv2_ratio", {}, {}, {}, predicted_slope("conv2_ratio", alpha), alpha};
    DecayReport conv3{"conv3_ratio", {}, {}, {}, predicted_slope("conv3_ratio", alpha), alpha};
    const double seminorm = holder_seminorm(f, alpha);
    std::vector<double> raw2, raw3;
    for (double eps : epsilons) {
        const MollifierKernel kernel = make_mollifier(f.grid, eps);
        const VectorField fe = mollify(f, kernel, backend);
        VectorField d(f.grid);
        for (int j = 0; j < f.dim(); ++j)
            for (std::size_t x = 0; x < f.grid.size(); ++x) d[j][x] = f[j][x] - fe[j][x];
        const double sup_diff = max_norm(d);

        const auto grad = jacobian(fe);
        double sup_grad = 0.0;
        for (std::size_t x = 0; x < f.grid.size(); ++x) {
            double s = 0.0;
            for (const auto& row : grad)
                for (const auto& g : row) s += g[x] * g[x];
            sup_grad = std::max(sup_grad, s);
        }
        sup_grad = std::sqrt(sup_grad);

        raw2.push_back(sup_diff);
        raw3.push_back(sup_grad);
        conv2.epsilons.push_back(eps);
        conv3.epsilons.push_back(eps);
        conv2.values.push_back(seminorm > 0.0 ? sup_diff / (seminorm * std::pow(eps, alpha)) : 0.0);
        conv3.values.push_back(seminorm > 0.0 ? sup_grad / (seminorm * std::pow(eps, alpha - 1.0)) : 0.0);
    }
    if (epsilons.size() >= 3) {
        conv2.fit = decay_fit(epsilons, raw2);
        conv3.fit = decay_fit(epsilons, raw3);
    }
    return {conv2, conv3};
}

namespace {

// Spatial integrands of the remainder terms for one sample.
struct SampleTerms {
    double I11 = 0, I12 = 0, I21 = 0, I221 = 0, I222 = 0, J111 = 0, J112 = 0, J21 = 0, J22 = 0;
    double phase_mollified = 0, phase = 0;
    double cet = 0;
};

SampleTerms sample_terms(const State& s, const PhysParams& params, const MollifierKernel& kernel,
                         Convolution backend) {
    const Grid& g = s.grid();
    const int dim = g.dim();
    const std::size_t size = g.size();
    const double dv = g.cell_volume();
    auto conv = [&](const ScalarField& f) { return mollify(f, kernel, backend); };
    SampleTerms out;

    // Velocity terms.
    const VectorField ue = mollify(s.u, kernel, backend);
    const auto grad_ue = jacobian(ue);
    const SymTensorField r = cet_commutator(s.u, kernel);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const ScalarField& rij = r(i, j);
            const ScalarField& gij = grad_ue[i][j];
            double a = 0.0, b = 0.0;
            for (std::size_t x = 0; x < size; ++x) {
                a += rij[x] * gij[x];
                b += (s.u[i][x] - ue[i][x]) * (s.u[j][x] - ue[j][x]) * gij[x];
            }
            out.I11 += a * dv;
            out.I12 -= b * dv;
        }
    out.cet = backend == Convolution::quadrature
                  ? identity_residual(s.u, r, ue, kernel, backend)
                  : identity_residual(s.u, r, mollify(s.u, kernel, Convolution::quadrature), kernel,
                                      Convolution::quadrature);

    out.phase = phase_energy(s.c, params);
    if (is_uniform(s.c)) {
        out.phase_mollified = out.phase;
        return out;
    }

    // Concentration terms.
    const ScalarField ce = conv(s.c);
    out.phase_mollified = phase_energy(ce, params);
    const VectorField grad_c = gradient(s.c);
    const VectorField grad_ce = gradient(ce);

    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const ScalarField cc_e = conv(product(grad_c[i], grad_c[j]));
            const ScalarField& gij = grad_ue[i][j];
            double a = 0.0;
            for (std::size_t x = 0; x < size; ++x) a += (grad_ce[i][x] * grad_ce[j][x] - cc_e[x]) * gij[x];
            out.I21 -= params.gamma * a * dv;
        }

    ScalarField fc(g), fce(g);
    for (std::size_t x = 0; x < size; ++x) {
        fc[x] = f_of_potential(params.potential, s.c[x]);
        fce[x] = f_of_potential(params.potential, ce[x]);
    }
    const ScalarField fc_e = conv(fc);
    ScalarField gap(g);  // f(c)_eps - f(c_eps)
    for (std::size_t x = 0; x < size; ++x) gap[x] = fc_e[x] - fce[x];

    ScalarField adv(g);     // u . grad c
    ScalarField adv_e(g);   // u_eps . grad c_eps
    for (int j = 0; j < dim; ++j)
        for (std::size_t x = 0; x < size; ++x) {
            adv[x] += s.u[j][x] * grad_c[j][x];
            adv_e[x] += ue[j][x] * grad_ce[j][x];
        }
    const ScalarField adv_conv = conv(adv);

    const ScalarField mu = chemical_potential(s.c, params);
    const ScalarField mue = conv(mu);
    const VectorField grad_mue = gradient(mue);
    const VectorField grad_gap = gradient(gap);

    double i221 = 0, j111 = 0, j112 = 0, i222 = 0, j22 = 0;
    for (std::size_t x = 0; x < size; ++x) {
        i221 -= gap[x] * adv_e[x];
        j111 -= gap[x] * adv_conv[x];
        i222 += mue[x] * adv_e[x];
    }
    for (std::size_t x = 0; x < size; ++x) j22 -= mue[x] * adv_e[x];
    for (int j = 0; j < dim; ++j)
        for (std::size_t x = 0; x < size; ++x) j112 -= grad_gap[j][x] * grad_mue[j][x];
    out.I221 = i221 * dv;
    out.J111 = j111 * dv;
    out.J112 = params.mobility_m * j112 * dv;
    out.I222 = i222 * dv;
    out.J22 = j22 * dv;

    double j21 = 0.0;
    for (int j = 0; j < dim; ++j) {
        const ScalarField cu_e = conv(product(s.c, s.u[j]));
        for (std::size_t x = 0; x < size; ++x) j21 += grad_mue[j][x] * (ce[x] * ue[j][x] - cu_e[x]);
    }
    out.J21 = j21 * dv;
    return out;
}

}  // namespace

ProofTerms proof_terms(const std::vector<State>& states, const PhysParams& params, const MollifierKernel& kernel,
                       Convolution backend) {
    if (states.size() < 2) throw InputError("proof terms need at least 2 time samples");
    std::vector<double> t;
    std::vector<SampleTerms> samples;
    for (const auto& s : states) {
        check_same_grid(s.grid(), kernel.grid());
        if (!t.empty() && !(s.t > t.back())) throw InputError("proof terms need strictly increasing sample times");
        t.push_back(s.t);
        samples.push_back(sample_terms(s, params, kernel, backend));
    }
    auto column = [&](double SampleTerms::*member) {
        std::vector<double> v;
        for (const auto& s : samples) v.push_back(s.*member);
        return trapezoid(t, v);
    };
    ProofTerms p;
    p.I11 = column(&SampleTerms::I11);
    p.I12 = column(&SampleTerms::I12);
    p.I21 = column(&SampleTerms::I21);
    p.I221 = column(&SampleTerms::I221);
    p.I222 = column(&SampleTerms::I222);
    p.J111 = column(&SampleTerms::J111);
    p.J112 = column(&SampleTerms::J112);
    p.J21 = column(&SampleTerms::J21);
    p.J22 = column(&SampleTerms::J22);
    const auto& first = samples.front();
    const auto& last = samples.back();
    p.J12 = (last.phase_mollified - first.phase_mollified) - (last.phase - first.phase);
    for (const auto& s : samples) p.cet_residual = std::max(p.cet_residual, s.cet);
    return p;
}

std::vector<DecayReport> proof_term_sweep(const std::vector<State>& states, const PhysParams& params,
                                          std::span<const double> epsilons, double alpha, Convolution backend) {
    const std::vector<std::pair<std::string, double ProofTerms::*>> terms = {
        {"I11", &ProofTerms::I11},   {"I12", &ProofTerms::I12},   {"I21", &ProofTerms::I21},
        {"I221", &ProofTerms::I221}, {"J111", &ProofTerms::J111}, {"J112", &ProofTerms::J112},
        {"J21", &ProofTerms::J21},   {"J12", &ProofTerms::J12},   {"CET_residual", &ProofTerms::cet_residual}};
    std::vector<DecayReport> reports;
    for (const auto& [name, member] : terms)
        reports.push_back({name, {}, {}, {}, predicted_slope(name, alpha), alpha});
    DecayReport cancel{"I222_J22", {}, {}, {}, predicted_slope("I222_J22", alpha), alpha};

    for (std::size_t e = 0; e < epsilons.size(); ++e) {
        if (e > 0 && !(epsilons[e] < epsilons[e - 1])) throw InputError("epsilon list must be strictly decreasing");
        const MollifierKernel kernel = make_mollifier(states.front().grid(), epsilons[e]);
        const ProofTerms p = proof_terms(states, params, kernel, backend);
        for (std::size_t k = 0; k < terms.size(); ++k) {
            reports[k].epsilons.push_back(epsilons[e]);
            reports[k].values.push_back(p.*(terms[k].second));
        }
        cancel.epsilons.push_back(epsilons[e]);
        cancel.values.push_back(p.I222 == 0.0 ? std::abs(p.J22) : std::abs(p.I222 + p.J22) / std::abs(p.I222));
    }
    reports.push_back(std::move(cancel));
    if (epsilons.size() >= 3)
        for (auto& r : reports) r.fit = decay_fit(r.epsilons, r.values);
    return reports;
}

}  // namespace nsch
