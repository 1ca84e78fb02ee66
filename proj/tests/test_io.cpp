#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nsch/io.hpp"
#include "support.hpp"

using namespace nsch;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"(# smallest useful run
grid.dim = 2
grid.n = 16
params.nu = 0.1
params.gamma = 0.5
params.mobility_m = 1
stepper.dt = 1e-3
stepper.t_end = 0.01
initial.kind = spinodal
)";

std::string error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
    const auto at = text.find(from);
    REQUIRE(at != std::string::npos);
    return text.replace(at, from.size(), to);
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "nsch_io_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    out << bytes;
}

SnapshotErrorCode read_error(const fs::path& p) {
    try {
        read_snapshot(p);
    } catch (const SnapshotError& e) {
        return e.code();
    }
    FAIL("snapshot was accepted");
    return SnapshotErrorCode::io;
}

}  // namespace

TEST_CASE("minimal config gets defaults") {
    const RunConfig c = parse_config(kMinimal);
    CHECK(c.dim == 2);
    CHECK(c.n == 16);
    CHECK(c.params.stabilization_S == 1.0);
    CHECK(c.params.potential.kind == PotentialKind::polynomial);
    CHECK(c.stepper.dealias);
    CHECK(c.stepper.flow == FlowMode::coupled);
    CHECK(c.initial.amplitude == 0.1);
    CHECK(c.initial.band == 4);
    CHECK(c.energy_every == 1);
    CHECK(c.output_dir == fs::path("out"));
    const std::string dump = dump_config(c);
    CHECK(dump.find("params.stabilization_S = 1") != std::string::npos);
    CHECK(dump.find("initial.kind = spinodal") != std::string::npos);
    CHECK(dump.find("output.dir = out") != std::string::npos);
}

TEST_CASE("config errors carry line numbers") {
    const std::string nu = error_of(replace(kMinimal, "params.nu = 0.1", "params.nu = -1"));
    CHECK(nu.find("line 4") != std::string::npos);
    CHECK(nu.find("viscosity") != std::string::npos);
    CHECK(nu.find("positive") != std::string::npos);

    CHECK(error_of(std::string(kMinimal) + "params.nuu = 1\n").find("line 10: unknown key") != std::string::npos);
    CHECK(error_of(replace(kMinimal, "stepper.dt = 1e-3\n", "")).find("stepper.dt") != std::string::npos);
    CHECK(error_of(replace(kMinimal, "params.gamma = 0.5", "params.gamma = 0.5x")).find("line 5") !=
          std::string::npos);
    CHECK(error_of(replace(kMinimal, "grid.n = 16", "grid.n = 15")).find("line 3") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "grid.n = 32\n").find("duplicate") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "output.snapshot_times = 0, 1\n").find("line 10") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "just some words\n").find("line 10") != std::string::npos);
    CHECK(error_of(replace(kMinimal, "initial.kind = spinodal", "initial.kind = file")).find("initial.path") !=
          std::string::npos);
}

TEST_CASE("canonical dump is idempotent") {
    const std::string text = std::string(kMinimal) +
                             "potential.kind = logarithmic\npotential.theta = 0.8\n"
                             "output.snapshot_times = 0.005, 0.01\nstepper.flow = frozen\ninitial.seed = 42\n";
    const std::string once = dump_config(parse_config(text));
    const std::string twice = dump_config(parse_config(once));
    CHECK(once == twice);
    const RunConfig back = parse_config(once);
    CHECK(back.params.potential.theta == 0.8);
    CHECK(back.snapshot_times == std::vector<double>{0.005, 0.01});
    CHECK(back.initial.seed == 42u);
}

TEST_CASE("initial states from config") {
    RunConfig c = parse_config(std::string(kMinimal) + "initial.mean = 0.2\n");
    const State s = initial_state(c);
    CHECK(mean(s.c) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(testing_support::max_abs_vec(s.u) == 0.0);

    c = parse_config(replace(kMinimal, "initial.kind = spinodal", "initial.kind = taylor_green"));
    const State tg = initial_state(c);
    CHECK(testing_support::max_abs_vec(tg.u) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("snapshot round trip is bit-exact") {
    for (int dim : {2, 3}) {
        const Grid g(dim, 8);
        State s{0.375, testing_support::random_vector(g, 4), testing_support::random_field(g, 5)};
        s.c[0] = -0.0;
        s.c[1] = 1e-310;  // subnormal
        const fs::path p = scratch("snap" + std::to_string(dim) + ".nsch");
        write_snapshot(s, p);
        const State r = read_snapshot(p);
        CHECK(r.t == s.t);
        CHECK(r.grid().dim() == dim);
        CHECK(r.grid().n() == 8);
        for (std::size_t i = 0; i < g.size(); ++i) {
            REQUIRE(std::bit_cast<std::uint64_t>(r.c[i]) == std::bit_cast<std::uint64_t>(s.c[i]));
            for (int j = 0; j < dim; ++j)
                REQUIRE(std::bit_cast<std::uint64_t>(r.u[j][i]) == std::bit_cast<std::uint64_t>(s.u[j][i]));
        }
        // header: magic, version, dim, n per axis, t, field count, names
        const std::string bytes = slurp(p);
        CHECK(bytes.substr(0, 4) == "NSCH");
        const std::size_t header = 4 + 4 + 4 + 4 * dim + 8 + 4 + 16 * (dim + 1);
        CHECK(bytes.size() == header + 8 * g.size() * (dim + 1));
        CHECK(bytes.substr(header - 16, 1) == "c");
    }
    CHECK(snapshot_file_name(7) == "snapshot_0007.nsch");
}

TEST_CASE("damaged snapshots are rejected with distinct codes") {
    const Grid g(2, 8);
    const State s{1.0, testing_support::random_vector(g, 1), testing_support::random_field(g, 2)};
    const fs::path good = scratch("good.nsch");
    write_snapshot(s, good);
    const std::string bytes = slurp(good);

    const fs::path bad = scratch("bad.nsch");
    spit(bad, bytes.substr(0, bytes.size() - 5));
    CHECK(read_error(bad) == SnapshotErrorCode::truncated_payload);

    std::string v = bytes;
    v[4] = static_cast<char>(kSnapshotVersion + 1);
    spit(bad, v);
    CHECK(read_error(bad) == SnapshotErrorCode::unsupported_version);

    std::string m = bytes;
    m[0] = 'X';
    spit(bad, m);
    CHECK(read_error(bad) == SnapshotErrorCode::corrupt_header);

    spit(bad, bytes.substr(0, 6));
    CHECK(read_error(bad) == SnapshotErrorCode::corrupt_header);

    std::string nan = bytes;
    const double q = std::nan("");
    std::memcpy(nan.data() + nan.size() - 8, &q, 8);  // little-endian host assumed by the test
    spit(bad, nan);
    CHECK(read_error(bad) == SnapshotErrorCode::non_finite_payload);

    CHECK(read_error(scratch("missing.nsch")) == SnapshotErrorCode::io);
}

TEST_CASE("energy csv") {
    const fs::path p = scratch("energy.csv");
    write_energy_csv({}, p);
    CHECK(slurp(p) == std::string(kEnergyCsvHeader) + "\n");
    CHECK(read_energy_csv(p).empty());

    std::vector<EnergyRecord> one(1);
    one[0].kinetic = 1.0 / 3.0;
    one[0].bulk = 2.0;
    one[0].mobility_rate = 0.1;
    energy_defect(one);
    write_energy_csv(one, p);
    const auto back = read_energy_csv(p);
    REQUIRE(back.size() == 1);
    CHECK(back[0].defect == 0.0);

    std::vector<EnergyRecord> rows(3);
    for (int i = 0; i < 3; ++i) {
        rows[i].t = 0.1 * i;
        rows[i].kinetic = std::exp(-0.3 * i) / 7.0;
        rows[i].interfacial = std::sqrt(2.0) * i;
        rows[i].bulk = std::numbers::pi / (i + 1);
        rows[i].viscous_rate = 1e-300 * (i + 1);
        rows[i].grad_sq_rate = 2.0 / 3.0;
        rows[i].mobility_rate = 1e17 + i;
        rows[i].max_abs_c = 0.1 + 0.2;
    }
    energy_defect(rows);
    write_energy_csv(rows, p);
    const auto r = read_energy_csv(p);
    REQUIRE(r.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(r[i].t == rows[i].t);
        CHECK(r[i].kinetic == rows[i].kinetic);
        CHECK(r[i].interfacial == rows[i].interfacial);
        CHECK(r[i].bulk == rows[i].bulk);
        CHECK(r[i].viscous_rate == rows[i].viscous_rate);
        CHECK(r[i].grad_sq_rate == rows[i].grad_sq_rate);
        CHECK(r[i].mobility_rate == rows[i].mobility_rate);
        CHECK(r[i].cum_dissipation == rows[i].cum_dissipation);
        CHECK(r[i].defect == rows[i].defect);
        CHECK(r[i].max_abs_c == rows[i].max_abs_c);
    }

    spit(p, "t,kinetic\n0,1\n");
    CHECK_THROWS_AS(read_energy_csv(p), InputError);
    spit(p, std::string(kEnergyCsvHeader) + "\n0,1,2\n");
    CHECK_THROWS_AS(read_energy_csv(p), InputError);
}

TEST_CASE("decay csv") {
    DecayReport r;
    r.term = "I12";
    r.epsilons = {0.5, 0.25, 0.125};
    r.values = {4.0, 2.0, 1.0};
    r.fit = decay_fit(r.epsilons, r.values);
    r.predicted_slope = 0.5;
    r.alpha = 0.5;
    const std::string csv = decay_csv({r});
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == kDecayCsvHeader);
    std::getline(in, line);
    CHECK(line.rfind("I12,0.5,4,", 0) == 0);
    CHECK(std::stod(line.substr(10, line.find(',', 10) - 10)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(line.substr(line.size() - 8) == ",0.5,0.5");
    int rows = 1;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 3);
    CHECK(format_double(0.1) == "0.10000000000000001");
}
