#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsch/commutator.hpp"
#include "nsch/energy.hpp"
#include "nsch/solver.hpp"

namespace nsch {

// ---------------------------------------------------------------------------
// Run configuration: flat `section.key = value` lines, `#` comments.
// ---------------------------------------------------------------------------

enum class InitialKind { taylor_green, spinodal, file };

struct InitialSpec {
    InitialKind kind = InitialKind::spinodal;
    double mean = 0.0;                ///< mean of c
    double amplitude = 0.1;           ///< spinodal: max|c - mean|
    int band = 4;                     ///< spinodal: max |k_j| of the perturbation
    std::uint64_t seed = 1;
    double velocity_amplitude = 0.0;  ///< Taylor-Green velocity amplitude (taylor_green defaults to 1)
    std::filesystem::path path;       ///< file: snapshot to start from
};

struct RunConfig {
    int dim = 2;
    int n = 64;
    PhysParams params;
    StepperConfig stepper;
    double t_end = 1.0;
    InitialSpec initial;
    int energy_every = 1;
    std::vector<double> snapshot_times;
    std::filesystem::path output_dir = "out";

    Grid grid() const { return Grid(dim, n); }
};

/// Parses and validates a configuration. Unknown keys, missing required keys,
/// malformed numbers and non-positive parameters raise ConfigError naming the line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical dump listing every key with its effective value.
std::string dump_config(const RunConfig& config);

/// Builds the initial state described by the configuration.
State initial_state(const RunConfig& config);

// ---------------------------------------------------------------------------
// Binary snapshots (little-endian "NSCH" format).
// ---------------------------------------------------------------------------

inline constexpr std::uint32_t kSnapshotVersion = 1;

enum class SnapshotErrorCode { io, corrupt_header, unsupported_version, truncated_payload, non_finite_payload };

class SnapshotError : public std::runtime_error {
public:
    SnapshotError(SnapshotErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    SnapshotErrorCode code() const { return code_; }

private:
    SnapshotErrorCode code_;
};

void write_snapshot(const State& state, const std::filesystem::path& path);
State read_snapshot(const std::filesystem::path& path);
std::string snapshot_file_name(std::size_t index);

// ---------------------------------------------------------------------------
// CSV artifacts (17 significant digits).
// ---------------------------------------------------------------------------

inline constexpr const char* kEnergyCsvHeader =
    "t,kinetic,interfacial,bulk,total,viscous_rate,grad_sq_rate,mobility_rate,cum_dissipation,defect,max_abs_c";
inline constexpr const char* kDecayCsvHeader = "term,epsilon,value,slope,predicted_slope,alpha";

void write_energy_csv(const std::vector<EnergyRecord>& records, const std::filesystem::path& path);
std::vector<EnergyRecord> read_energy_csv(const std::filesystem::path& path);
void write_decay_csv(const std::vector<DecayReport>& reports, const std::filesystem::path& path);
std::string decay_csv(const std::vector<DecayReport>& reports);

/// "%.17g" formatting used by every CSV writer.
std::string format_double(double v);

}  // namespace nsch
