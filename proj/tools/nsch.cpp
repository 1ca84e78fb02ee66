// nsch: command-line front end for the simulator and the diagnostics.
//
// Exit codes: 0 success, 1 runtime/domain error, 2 numerical blow-up, 64 usage error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nsch/commutator.hpp"
#include "nsch/energy.hpp"
#include "nsch/holder.hpp"
#include "nsch/io.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitBlowUp = 2;
constexpr int kExitUsage = 64;

std::vector<nsch::State> load_snapshots(const std::vector<std::string>& paths) {
    std::vector<nsch::State> out;
    for (const auto& p : paths) out.push_back(nsch::read_snapshot(p));
    return out;
}

int run_simulate(const std::string& config_path) {
    const nsch::RunConfig cfg = nsch::load_config(config_path);
    const nsch::State init = nsch::initial_state(cfg);
    nsch::OutputSpec out;
    out.energy_every = cfg.energy_every;
    out.snapshot_times = cfg.snapshot_times;
    out.directory = cfg.output_dir;
    std::filesystem::create_directories(cfg.output_dir);
    {
        std::ofstream dump(cfg.output_dir / "config.resolved");
        dump << nsch::dump_config(cfg);
    }
    try {
        const auto res = nsch::simulate(init, cfg.params, cfg.stepper, cfg.t_end, out);
        std::printf("steps %d  t %.6g  energy csv %s  snapshots %zu\n", res.steps, res.final_state.t,
                    res.energy_csv.string().c_str(), res.snapshot_paths.size());
        if (!res.records.empty()) {
            double worst = 0.0;
            for (const auto& r : res.records) worst = std::max(worst, std::abs(r.defect));
            std::printf("E(0) %.17g  E(T) %.17g  max|defect| %.3e\n", res.records.front().total(),
                        res.records.back().total(), worst);
        }
    } catch (const nsch::BlowUpError& e) {
        std::fprintf(stderr, "blow-up: %s\n", e.what());
        return kExitBlowUp;
    }
    return 0;
}

// Smallest positive time spacing in a record series; equals dt when every step was recorded.
double min_spacing(const std::vector<nsch::EnergyRecord>& rec) {
    double h = INFINITY;
    for (std::size_t i = 1; i < rec.size(); ++i) h = std::min(h, rec[i].t - rec[i - 1].t);
    return h;
}

int run_energy_audit(const std::vector<std::string>& paths, std::vector<double> dts) {
    if (!dts.empty() && dts.size() != paths.size()) {
        throw CLI::ValidationError("--dt", "give one --dt per CSV");
    }
    struct Row {
        std::string path;
        double dt, max_defect, e0;
    };
    std::vector<Row> rows;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        auto rec = nsch::read_energy_csv(paths[i]);
        if (rec.empty()) {
            std::printf("%s: no records\n", paths[i].c_str());
            continue;
        }
        const auto defect = nsch::energy_defect(rec);
        double worst = 0.0, stored = 0.0;
        for (std::size_t j = 0; j < rec.size(); ++j) worst = std::max(worst, std::abs(defect[j]));
        // rereading keeps the stored column for the comparison below
        const auto original = nsch::read_energy_csv(paths[i]);
        for (std::size_t j = 0; j < rec.size(); ++j)
            stored = std::max(stored, std::abs(original[j].defect - defect[j]));
        const double e0 = rec.front().total();
        const double dt = dts.empty() ? min_spacing(rec) : dts[i];
        std::printf("%s: records %zu  dt %.6g  max|defect| %.6e  relative %.6e  stored-column drift %.3e\n",
                    paths[i].c_str(), rec.size(), dt, worst, e0 != 0.0 ? worst / std::abs(e0) : NAN, stored);
        rows.push_back({paths[i], dt, worst, e0});
    }
    if (rows.size() >= 2) {
        std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.dt > b.dt; });
        std::printf("dt-extrapolation (first order):\n");
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const Row& c = rows[i - 1];
            const Row& f = rows[i];
            const double r = c.dt / f.dt;
            const double ratio = c.max_defect / f.max_defect;
            const double order = std::log(ratio) / std::log(r);
            const double limit = f.max_defect - (c.max_defect - f.max_defect) / (r - 1.0);
            std::printf("  dt %.6g -> %.6g  defect ratio %.4f  observed order %.3f  extrapolated defect %.3e\n", c.dt,
                        f.dt, ratio, order, limit);
        }
    }
    return 0;
}

int run_diagnose(const std::vector<std::string>& paths, double alpha, int eps_count, bool spectral,
                 const std::string& config_path, const std::string& out_path) {
    auto states = load_snapshots(paths);
    if (states.size() == 1) {
        // a single snapshot is treated as a steady sample over a unit time span
        nsch::State late = states.front();
        late.t += 1.0;
        states.push_back(late);
    }
    nsch::PhysParams params;
    if (!config_path.empty()) params = nsch::load_config(config_path).params;
    const auto eps = nsch::epsilon_ladder(states.front().grid(), eps_count);
    const auto reports = nsch::proof_term_sweep(
        states, params, eps, alpha, spectral ? nsch::Convolution::spectral : nsch::Convolution::quadrature);
    if (out_path.empty()) {
        std::cout << nsch::decay_csv(reports);
    } else {
        nsch::write_decay_csv(reports, out_path);
    }
    for (const auto& r : reports) {
        if (r.fit.identically_zero) {
            std::fprintf(stderr, "%-13s identically zero\n", r.term.c_str());
        } else {
            std::fprintf(stderr, "%-13s slope %8.4f  r2 %.4f  predicted %s\n", r.term.c_str(), r.fit.slope,
                         r.fit.r_squared,
                         std::isnan(r.predicted_slope) ? "-" : nsch::format_double(r.predicted_slope).c_str());
        }
    }
    return 0;
}

int run_holder(const std::string& path, double alpha, bool brute) {
    const auto s = nsch::read_snapshot(path);
    if (!(alpha > 0.0 && alpha < 1.0)) throw nsch::DomainError("Hoelder exponent must lie in (0, 1)");
    const double semi = brute ? nsch::holder_seminorm_brute_force(s.u, alpha) : nsch::holder_seminorm(s.u, alpha);
    std::printf("seminorm %.17g\nnorm %.17g\n", semi, nsch::max_norm(s.u) + semi);
    return 0;
}

int run_hypothesis(const std::vector<std::string>& paths, double alpha, double delta) {
    const auto states = load_snapshots(paths);
    std::printf("p %.17g\nnorm %.17g\n", 2.0 / (1.0 + alpha) + delta, nsch::hypothesis_norm(states, alpha, delta));
    return 0;
}

int run_make_synthetic(double alpha, int octaves, std::uint64_t seed, int n, int dim, const std::string& out) {
    nsch::State s;
    const nsch::Grid g(dim, n);
    s.u = nsch::synth_holder_field(g, alpha, octaves, seed);
    s.c = nsch::ScalarField(g);
    nsch::write_snapshot(s, out);
    std::printf("wrote %s  max|u| %.6g\n", out.c_str(), nsch::max_norm(s.u));
    return 0;
}

int run_lemma1(const std::string& path, double alpha, int eps_count) {
    const auto s = nsch::read_snapshot(path);
    const auto eps = nsch::epsilon_ladder(s.grid(), eps_count);
    const auto [conv2, conv3] = nsch::lemma1_check(s.u, alpha, eps);
    std::printf("epsilon,conv2_ratio,conv3_ratio\n");
    for (std::size_t i = 0; i < eps.size(); ++i)
        std::printf("%s,%s,%s\n", nsch::format_double(eps[i]).c_str(), nsch::format_double(conv2.values[i]).c_str(),
                    nsch::format_double(conv3.values[i]).c_str());
    std::printf("# conv2 slope %.4f (predicted %.4f)  conv3 slope %.4f (predicted %.4f)\n", conv2.fit.slope,
                conv2.predicted_slope, conv3.fit.slope, conv3.predicted_slope);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cahn-Hilliard/Navier-Stokes simulator and energy-identity diagnostics"};
    app.require_subcommand(1);

    std::string config_path;
    auto* sim = app.add_subcommand("simulate", "run a simulation from a config file");
    sim->add_option("config", config_path, "configuration file")->required();

    std::vector<std::string> csvs;
    std::vector<double> dts;
    auto* audit = app.add_subcommand("energy-audit", "recompute the energy defect of energy CSVs");
    audit->add_option("csv", csvs, "energy CSV files (several for a dt study)")->required();
    audit->add_option("--dt", dts, "time step of each CSV (default: smallest record spacing)");

    std::vector<std::string> snaps;
    double alpha = 0.5;
    int eps_count = 8;
    bool quadrature = false, spectral = false;
    std::string diag_config, out_path;
    auto* diag = app.add_subcommand("diagnose-commutator", "decay report for every proof term");
    diag->add_option("snapshots", snaps, "snapshot files in time order")->required();
    diag->add_option("--alpha", alpha, "Hoelder exponent")->required();
    diag->add_option("--eps-count", eps_count, "number of mollification radii")->check(CLI::Range(3, 64));
    auto* q_flag = diag->add_flag("--quadrature", quadrature, "lattice-sum convolution (default)");
    auto* s_flag = diag->add_flag("--spectral", spectral, "Fourier-multiplier convolution");
    q_flag->excludes(s_flag);
    diag->add_option("--config", diag_config, "config supplying the physical parameters");
    diag->add_option("--out", out_path, "CSV output path (default stdout)");

    std::string snapshot;
    bool brute = false;
    auto* holder = app.add_subcommand("holder-norm", "Hoelder seminorm and norm of a snapshot velocity");
    holder->add_option("snapshot", snapshot)->required();
    holder->add_option("--alpha", alpha)->required();
    holder->add_flag("--brute-force", brute, "all lattice shifts (slow)");

    double delta = 0.1;
    auto* hyp = app.add_subcommand("hypothesis-norm", "time-integrated C^alpha norm of a snapshot series");
    hyp->add_option("snapshots", snaps)->required();
    hyp->add_option("--alpha", alpha)->required();
    hyp->add_option("--delta", delta)->required();

    int octaves = 4, n = 128, dim = 2;
    std::uint64_t seed = 1;
    std::string synth_out;
    auto* synth = app.add_subcommand("make-synthetic", "write a synthetic Hoelder velocity snapshot");
    synth->add_option("--alpha", alpha)->required();
    synth->add_option("--octaves", octaves)->required();
    synth->add_option("--seed", seed);
    synth->add_option("--n", n);
    synth->add_option("--dim", dim)->check(CLI::IsMember({2, 3}));
    synth->add_option("--out", synth_out)->required();

    auto* lemma = app.add_subcommand("lemma1", "mollifier bound ratios on a snapshot velocity");
    lemma->add_option("snapshot", snapshot)->required();
    lemma->add_option("--alpha", alpha)->required();
    lemma->add_option("--eps-count", eps_count)->check(CLI::Range(3, 64));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return kExitUsage;
    }

    try {
        if (*sim) return run_simulate(config_path);
        if (*audit) return run_energy_audit(csvs, dts);
        if (*diag) return run_diagnose(snaps, alpha, eps_count, spectral, diag_config, out_path);
        if (*holder) return run_holder(snapshot, alpha, brute);
        if (*hyp) return run_hypothesis(snaps, alpha, delta);
        if (*synth) return run_make_synthetic(alpha, octaves, seed, n, dim, synth_out);
        if (*lemma) return run_lemma1(snapshot, alpha, eps_count);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const nsch::BlowUpError& e) {
        std::cerr << "blow-up: " << e.what() << '\n';
        return kExitBlowUp;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
