#include "nsch/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace nsch {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Entry {
    std::string value;
    int line = 0;
};

class Reader {
public:
    explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    double number(const std::string& key, std::optional<double> fallback) {
        const Entry* e = find(key, fallback.has_value());
        if (!e) return *fallback;
        double v = 0.0;
        const char* first = e->value.data();
        const char* last = first + e->value.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last || !std::isfinite(v)) fail(*e, key, "malformed number '" + e->value + "'");
        return v;
    }

    long integer(const std::string& key, std::optional<long> fallback) {
        const Entry* e = find(key, fallback.has_value());
        if (!e) return *fallback;
        long v = 0;
        const char* first = e->value.data();
        const char* last = first + e->value.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) fail(*e, key, "malformed integer '" + e->value + "'");
        return v;
    }

    std::string text(const std::string& key, std::optional<std::string> fallback) {
        const Entry* e = find(key, fallback.has_value());
        return e ? e->value : *fallback;
    }

    bool boolean(const std::string& key, bool fallback) {
        const Entry* e = find(key, true);
        if (!e) return fallback;
        if (e->value == "true") return true;
        if (e->value == "false") return false;
        fail(*e, key, "expected true or false, got '" + e->value + "'");
    }

    std::vector<double> list(const std::string& key) {
        const Entry* e = find(key, true);
        std::vector<double> out;
        if (!e) return out;
        std::stringstream ss(e->value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
            if (ec != std::errc() || ptr != item.data() + item.size()) fail(*e, key, "malformed number '" + item + "'");
            out.push_back(v);
        }
        return out;
    }

    /// Runs `check`; rethrows its ConfigError prefixed with the key's line.
    void positive(const std::string& key, double v, const std::string& what) {
        if (v > 0.0) return;
        const auto it = entries_.find(key);
        const std::string where = it == entries_.end() ? "" : "line " + std::to_string(it->second.line) + ": ";
        throw ConfigError(where + key + " = " + format_double(v) + ": " + what);
    }

    [[noreturn]] void fail(const Entry& e, const std::string& key, const std::string& msg) const {
        throw ConfigError("line " + std::to_string(e.line) + ": " + key + ": " + msg);
    }

    int line_of(const std::string& key) const {
        const auto it = entries_.find(key);
        return it == entries_.end() ? 0 : it->second.line;
    }

private:
    const Entry* find(const std::string& key, bool optional) const {
        const auto it = entries_.find(key);
        if (it == entries_.end()) {
            if (optional) return nullptr;
            throw ConfigError("missing required key '" + key + "'");
        }
        return &it->second;
    }

    std::map<std::string, Entry> entries_;
};

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "grid.dim",           "grid.n",
        "params.nu",          "params.gamma",
        "params.mobility_m",  "params.stabilization_S",
        "potential.kind",     "potential.theta",
        "potential.theta_c",  "potential.clamp_delta",
        "stepper.dt",         "stepper.t_end",
        "stepper.scheme",     "stepper.dealias",
        "stepper.stabilized", "stepper.flow",
        "initial.kind",       "initial.mean",
        "initial.amplitude",  "initial.band",
        "initial.seed",       "initial.velocity_amplitude",
        "initial.path",       "output.energy_every",
        "output.snapshot_times", "output.dir"};
    return keys;
}

std::string to_string(InitialKind k) {
    switch (k) {
        case InitialKind::taylor_green: return "taylor_green";
        case InitialKind::spinodal: return "spinodal";
        case InitialKind::file: return "file";
    }
    return "?";
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    std::map<std::string, Entry> entries;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    const auto& keys = known_keys();
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'section.key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        if (entries.count(key)) {
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
        if (value.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty value for '" + key + "'");
        entries[key] = {value, line_no};
    }

    Reader r(std::move(entries));
    RunConfig cfg;
    cfg.dim = static_cast<int>(r.integer("grid.dim", std::nullopt));
    cfg.n = static_cast<int>(r.integer("grid.n", std::nullopt));
    try {
        (void)cfg.grid();
    } catch (const ConfigError& e) {
        throw ConfigError("line " + std::to_string(r.line_of("grid.n")) + ": " + e.what());
    }

    cfg.params.nu = r.number("params.nu", std::nullopt);
    r.positive("params.nu", cfg.params.nu, "viscosity must be a positive constant");
    cfg.params.gamma = r.number("params.gamma", std::nullopt);
    r.positive("params.gamma", cfg.params.gamma, "capillary coefficient must be positive");
    cfg.params.mobility_m = r.number("params.mobility_m", std::nullopt);
    r.positive("params.mobility_m", cfg.params.mobility_m, "mobility must be a positive constant (non-degenerate)");
    cfg.params.stabilization_S = r.number("params.stabilization_S", 1.0);
    if (cfg.params.stabilization_S < 0.0) {
        throw ConfigError("line " + std::to_string(r.line_of("params.stabilization_S")) +
                          ": params.stabilization_S must be nonnegative");
    }

    try {
        cfg.params.potential.kind = potential_kind_from_string(r.text("potential.kind", "polynomial"));
    } catch (const ConfigError& e) {
        throw ConfigError("line " + std::to_string(r.line_of("potential.kind")) + ": " + e.what());
    }
    cfg.params.potential.theta = r.number("potential.theta", 1.0);
    cfg.params.potential.theta_c = r.number("potential.theta_c", 2.0);
    cfg.params.potential.clamp_delta = r.number("potential.clamp_delta", 1e-8);

    cfg.stepper.dt = r.number("stepper.dt", std::nullopt);
    r.positive("stepper.dt", cfg.stepper.dt, "time step must be positive");
    cfg.t_end = r.number("stepper.t_end", std::nullopt);
    r.positive("stepper.t_end", cfg.t_end, "end time must be positive");
    const std::string scheme = r.text("stepper.scheme", "imex1");
    if (scheme != "imex1") {
        throw ConfigError("line " + std::to_string(r.line_of("stepper.scheme")) + ": unknown scheme '" + scheme + "'");
    }
    cfg.stepper.dealias = r.boolean("stepper.dealias", true);
    cfg.stepper.stabilized = r.boolean("stepper.stabilized", true);
    const std::string flow = r.text("stepper.flow", "coupled");
    if (flow == "coupled") {
        cfg.stepper.flow = FlowMode::coupled;
    } else if (flow == "frozen") {
        cfg.stepper.flow = FlowMode::frozen;
    } else {
        throw ConfigError("line " + std::to_string(r.line_of("stepper.flow")) +
                          ": stepper.flow must be coupled or frozen");
    }

    const std::string kind = r.text("initial.kind", std::nullopt);
    if (kind == "taylor_green") {
        cfg.initial.kind = InitialKind::taylor_green;
    } else if (kind == "spinodal") {
        cfg.initial.kind = InitialKind::spinodal;
    } else if (kind == "file") {
        cfg.initial.kind = InitialKind::file;
    } else {
        throw ConfigError("line " + std::to_string(r.line_of("initial.kind")) + ": initial.kind must be "
                          "taylor_green, spinodal or file");
    }
    cfg.initial.mean = r.number("initial.mean", 0.0);
    cfg.initial.amplitude = r.number("initial.amplitude", 0.1);
    cfg.initial.band = static_cast<int>(r.integer("initial.band", 4));
    const long seed = r.integer("initial.seed", 1);
    if (seed < 0) throw ConfigError("line " + std::to_string(r.line_of("initial.seed")) + ": seed must be >= 0");
    cfg.initial.seed = static_cast<std::uint64_t>(seed);
    cfg.initial.velocity_amplitude =
        r.number("initial.velocity_amplitude", cfg.initial.kind == InitialKind::taylor_green ? 1.0 : 0.0);
    cfg.initial.path = r.text("initial.path", "");
    if (cfg.initial.kind == InitialKind::file && cfg.initial.path.empty()) {
        throw ConfigError("missing required key 'initial.path' for initial.kind = file");
    }
    if (cfg.initial.band < 1) {
        throw ConfigError("line " + std::to_string(r.line_of("initial.band")) + ": initial.band must be >= 1");
    }

    const long every = r.integer("output.energy_every", 1);
    if (every < 0) {
        throw ConfigError("line " + std::to_string(r.line_of("output.energy_every")) +
                          ": output.energy_every must be >= 0");
    }
    cfg.energy_every = static_cast<int>(every);
    cfg.snapshot_times = r.list("output.snapshot_times");
    for (double t : cfg.snapshot_times) {
        if (t < 0.0 || t > cfg.t_end) {
            throw ConfigError("line " + std::to_string(r.line_of("output.snapshot_times")) + ": snapshot time " +
                              format_double(t) + " outside [0, t_end]");
        }
    }
    cfg.output_dir = r.text("output.dir", "out");

    try {
        cfg.params.validate(cfg.stepper.stabilized);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("invalid physical parameters: ") + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read configuration file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string dump_config(const RunConfig& c) {
    std::ostringstream out;
    auto kv = [&](const char* key, const std::string& value) { out << key << " = " << value << '\n'; };
    kv("grid.dim", std::to_string(c.dim));
    kv("grid.n", std::to_string(c.n));
    kv("params.nu", format_double(c.params.nu));
    kv("params.gamma", format_double(c.params.gamma));
    kv("params.mobility_m", format_double(c.params.mobility_m));
    kv("params.stabilization_S", format_double(c.params.stabilization_S));
    kv("potential.kind", to_string(c.params.potential.kind));
    kv("potential.theta", format_double(c.params.potential.theta));
    kv("potential.theta_c", format_double(c.params.potential.theta_c));
    kv("potential.clamp_delta", format_double(c.params.potential.clamp_delta));
    kv("stepper.dt", format_double(c.stepper.dt));
    kv("stepper.t_end", format_double(c.t_end));
    kv("stepper.scheme", "imex1");
    kv("stepper.dealias", c.stepper.dealias ? "true" : "false");
    kv("stepper.stabilized", c.stepper.stabilized ? "true" : "false");
    kv("stepper.flow", c.stepper.flow == FlowMode::coupled ? "coupled" : "frozen");
    kv("initial.kind", to_string(c.initial.kind));
    kv("initial.mean", format_double(c.initial.mean));
    kv("initial.amplitude", format_double(c.initial.amplitude));
    kv("initial.band", std::to_string(c.initial.band));
    kv("initial.seed", std::to_string(c.initial.seed));
    kv("initial.velocity_amplitude", format_double(c.initial.velocity_amplitude));
    if (!c.initial.path.empty()) kv("initial.path", c.initial.path.string());
    kv("output.energy_every", std::to_string(c.energy_every));
    std::string times;
    for (std::size_t i = 0; i < c.snapshot_times.size(); ++i) {
        if (i) times += ", ";
        times += format_double(c.snapshot_times[i]);
    }
    if (!times.empty()) kv("output.snapshot_times", times);
    kv("output.dir", c.output_dir.string());
    return out.str();
}

State initial_state(const RunConfig& config) {
    if (config.initial.kind == InitialKind::file) {
        State s = read_snapshot(config.initial.path);
        if (!(s.grid() == config.grid())) throw ConfigError("initial snapshot grid does not match grid.dim/grid.n");
        return s;
    }
    const Grid g = config.grid();
    State s;
    s.t = 0.0;
    s.u = taylor_green(g, config.initial.velocity_amplitude);
    if (config.initial.kind == InitialKind::taylor_green) {
        s.c = ScalarField(g, config.initial.mean);
    } else {
        s.c = spinodal_noise(g, config.initial.mean, config.initial.amplitude, config.initial.band, config.initial.seed);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Snapshots
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'N', 'S', 'C', 'H'};
constexpr std::size_t kNameBytes = 16;

template <typename T>
void put(std::string& buf, T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    char bytes[sizeof(T)];
    std::memcpy(bytes, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    buf.append(bytes, sizeof(T));
}

class ByteReader {
public:
    explicit ByteReader(std::string data) : data_(std::move(data)) {}

    template <typename T>
    T get(SnapshotErrorCode code, const char* what) {
        if (pos_ + sizeof(T) > data_.size()) throw SnapshotError(code, what);
        char bytes[sizeof(T)];
        std::memcpy(bytes, data_.data() + pos_, sizeof(T));
        if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
        pos_ += sizeof(T);
        T v;
        std::memcpy(&v, bytes, sizeof(T));
        return v;
    }

    std::string bytes(std::size_t n, SnapshotErrorCode code, const char* what) {
        if (pos_ + n > data_.size()) throw SnapshotError(code, what);
        std::string out = data_.substr(pos_, n);
        pos_ += n;
        return out;
    }

private:
    std::string data_;
    std::size_t pos_ = 0;
};

std::vector<std::string> field_names(int dim) {
    std::vector<std::string> names;
    for (int j = 1; j <= dim; ++j) names.push_back("u" + std::to_string(j));
    names.push_back("c");
    return names;
}

}  // namespace

std::string snapshot_file_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snapshot_%04zu.nsch", index);
    return buf;
}

void write_snapshot(const State& state, const std::filesystem::path& path) {
    const Grid& g = state.grid();
    std::string buf;
    buf.append(kMagic, 4);
    put<std::uint32_t>(buf, kSnapshotVersion);
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.dim()));
    for (int j = 0; j < g.dim(); ++j) put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.n()));
    put<double>(buf, state.t);
    const auto names = field_names(g.dim());
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(names.size()));
    for (const auto& name : names) {
        std::string padded = name;
        padded.resize(kNameBytes, '\0');
        buf += padded;
    }
    for (int j = 0; j < g.dim(); ++j)
        for (double v : state.u[j].values) put<double>(buf, v);
    for (double v : state.c.values) put<double>(buf, v);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SnapshotError(SnapshotErrorCode::io, "cannot open " + path.string() + " for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw SnapshotError(SnapshotErrorCode::io, "write failed for " + path.string());
}

State read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError(SnapshotErrorCode::io, "cannot open snapshot " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    ByteReader r(ss.str());

    using enum SnapshotErrorCode;
    if (r.bytes(4, corrupt_header, "corrupt header: file too short") != std::string(kMagic, 4)) {
        throw SnapshotError(corrupt_header, "corrupt header: bad magic");
    }
    const auto version = r.get<std::uint32_t>(corrupt_header, "corrupt header: missing version");
    if (version != kSnapshotVersion) {
        throw SnapshotError(unsupported_version, "unsupported version " + std::to_string(version));
    }
    const auto dim = r.get<std::uint32_t>(corrupt_header, "corrupt header: missing dim");
    if (dim != 2 && dim != 3) throw SnapshotError(corrupt_header, "corrupt header: dim " + std::to_string(dim));
    std::uint32_t n = 0;
    for (std::uint32_t j = 0; j < dim; ++j) {
        const auto nj = r.get<std::uint32_t>(corrupt_header, "corrupt header: missing resolution");
        if (j > 0 && nj != n) throw SnapshotError(corrupt_header, "corrupt header: anisotropic resolution");
        n = nj;
    }
    Grid g;
    try {
        g = Grid(static_cast<int>(dim), static_cast<int>(n));
    } catch (const ConfigError& e) {
        throw SnapshotError(corrupt_header, std::string("corrupt header: ") + e.what());
    }
    State s;
    s.t = r.get<double>(corrupt_header, "corrupt header: missing time");
    if (!std::isfinite(s.t)) throw SnapshotError(corrupt_header, "corrupt header: non-finite time");
    const auto count = r.get<std::uint32_t>(corrupt_header, "corrupt header: missing field count");
    const auto expected = field_names(g.dim());
    if (count != expected.size()) throw SnapshotError(corrupt_header, "corrupt header: unexpected field count");
    for (const auto& name : expected) {
        std::string stored = r.bytes(kNameBytes, corrupt_header, "corrupt header: truncated field names");
        stored.resize(std::strlen(stored.c_str()));
        if (stored != name) throw SnapshotError(corrupt_header, "corrupt header: unexpected field '" + stored + "'");
    }

    auto read_field = [&](ScalarField& f) {
        f = ScalarField(g);
        for (double& v : f.values) {
            v = r.get<double>(truncated_payload, "truncated payload");
            if (!std::isfinite(v)) throw SnapshotError(non_finite_payload, "non-finite value in payload");
        }
    };
    s.u = VectorField(g);
    for (int j = 0; j < g.dim(); ++j) read_field(s.u[j]);
    read_field(s.c);
    return s;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

void write_energy_csv(const std::vector<EnergyRecord>& records, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << kEnergyCsvHeader << '\n';
    for (const auto& r : records) {
        const double cols[] = {r.t,           r.kinetic,      r.interfacial,   r.bulk,
                               r.total(),     r.viscous_rate, r.grad_sq_rate,  r.mobility_rate,
                               r.cum_dissipation, r.defect,   r.max_abs_c};
        for (std::size_t i = 0; i < std::size(cols); ++i) out << (i ? "," : "") << format_double(cols[i]);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<EnergyRecord> read_energy_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open energy CSV " + path.string());
    std::string line;
    if (!std::getline(in, line) || trim(line) != kEnergyCsvHeader) {
        throw InputError(path.string() + ": unexpected energy CSV header");
    }
    std::vector<EnergyRecord> out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<double> cols;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cell = trim(cell);
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0') {
                throw InputError(path.string() + ":" + std::to_string(line_no) + ": malformed value '" + cell + "'");
            }
            cols.push_back(v);
        }
        if (cols.size() != 11) {
            throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected 11 columns");
        }
        EnergyRecord r;
        r.t = cols[0];
        r.kinetic = cols[1];
        r.interfacial = cols[2];
        r.bulk = cols[3];
        r.viscous_rate = cols[5];
        r.grad_sq_rate = cols[6];
        r.mobility_rate = cols[7];
        r.cum_dissipation = cols[8];
        r.defect = cols[9];
        r.max_abs_c = cols[10];
        out.push_back(r);
    }
    return out;
}

std::string decay_csv(const std::vector<DecayReport>& reports) {
    std::ostringstream out;
    out << kDecayCsvHeader << '\n';
    for (const auto& r : reports)
        for (std::size_t i = 0; i < r.epsilons.size(); ++i)
            out << r.term << ',' << format_double(r.epsilons[i]) << ',' << format_double(r.values[i]) << ','
                << format_double(r.fit.slope) << ',' << format_double(r.predicted_slope) << ','
                << format_double(r.alpha) << '\n';
    return out.str();
}

void write_decay_csv(const std::vector<DecayReport>& reports, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << decay_csv(reports);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace nsch
