#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nsch/field.hpp"
#include "nsch/potential.hpp"

namespace nsch {

struct EnergyRecord;

/// Constant coefficients of the coupled system.
struct PhysParams {
    double nu = 1.0;          ///< viscosity
    double gamma = 1.0;       ///< capillary coefficient
    double mobility_m = 1.0;  ///< constant, non-degenerate mobility
    PotentialSpec potential;
    double stabilization_S = 1.0;

    /// Positivity of nu, gamma, m; potential validity; and, if `stabilized`,
    /// S >= alpha/2 for the potential's lower-bound constant alpha.
    void validate(bool stabilized) const;
};

struct State {
    double t = 0.0;
    VectorField u;
    ScalarField c;

    const Grid& grid() const { return c.grid; }
};

enum class Scheme { imex1 };

/// coupled: full system. frozen: velocity held at its initial value
/// (pure Cahn-Hilliard sub-dynamics when u = 0).
enum class FlowMode { coupled, frozen };

struct StepperConfig {
    double dt = 1e-3;
    Scheme scheme = Scheme::imex1;
    bool dealias = true;
    bool stabilized = true;
    FlowMode flow = FlowMode::coupled;

    void validate() const;
};

/// mu = f(c) - gamma * Laplace(c), with f(c) evaluated pointwise and dealiased.
ScalarField chemical_potential(const ScalarField& c, const PhysParams& params, bool dealias = true);

/// Capillary forcing in projected form P(mu grad c).
VectorField capillary_force(const ScalarField& c, const ScalarField& mu, const PhysParams& params,
                            bool dealias = true);

/// The Korteweg form P(-gamma div(grad c (x) grad c)); equal to
/// capillary_force modulo gradients.
VectorField korteweg_force(const ScalarField& c, const PhysParams& params, bool dealias = true);

/// One first-order IMEX step. Throws BlowUpError if the new state is not finite.
State step(const State& state, const PhysParams& params, const StepperConfig& cfg);

struct OutputSpec {
    int energy_every = 1;              ///< record cadence in steps (0 = endpoints only)
    std::vector<double> snapshot_times;
    std::filesystem::path directory;   ///< empty: keep everything in memory only
    bool keep_snapshots = false;       ///< retain snapshot states in the result
};

struct SimulationResult {
    State final_state;
    std::vector<EnergyRecord> records;
    std::vector<State> snapshots;
    std::vector<std::filesystem::path> snapshot_paths;
    std::filesystem::path energy_csv;
    int steps = 0;
};

/// Advances `initial` to t_end, recording energies and snapshots.
/// On blow-up the energy CSV written so far is flushed and the error rethrown.
SimulationResult simulate(const State& initial, const PhysParams& params, const StepperConfig& cfg,
                          double t_end, const OutputSpec& outputs);

// Initial data.

/// Taylor-Green velocity: 2D (sin x cos y, -cos x sin y); 3D
/// (sin x cos y cos z, -cos x sin y cos z, 0); scaled by amplitude.
VectorField taylor_green(const Grid& grid, double amplitude = 1.0);

/// Band-limited random perturbation around `mean`, with max|c - mean| = amplitude.
/// Modes with 1 <= |k_j| <= band (and |k_j| <= n/3) only; deterministic in seed.
ScalarField spinodal_noise(const Grid& grid, double mean, double amplitude, int band, std::uint64_t seed);

/// Deterministic uniform double in [0, 1) from a 64-bit generator output.
double unit_uniform(std::uint64_t bits);

}  // namespace nsch
