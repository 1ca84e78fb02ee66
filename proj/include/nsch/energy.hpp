#pragma once

#include <vector>

#include "nsch/solver.hpp"

namespace nsch {

/// One row of the energy ledger.
struct EnergyRecord {
    double t = 0.0;
    double kinetic = 0.0;         ///< int |u|^2 / 2
    double interfacial = 0.0;     ///< int gamma/2 |grad c|^2
    double bulk = 0.0;            ///< int F(c)
    double viscous_rate = 0.0;    ///< nu int |Du|^2, Du the symmetric gradient
    double grad_sq_rate = 0.0;    ///< nu int |grad u|^2
    double mobility_rate = 0.0;   ///< m int |grad mu|^2
    double cum_dissipation = 0.0;
    double defect = 0.0;
    double max_abs_c = 0.0;

    double total() const { return kinetic + interfacial + bulk; }
    /// Dissipation rate of the discrete system: the viscous operator is
    /// nu*Laplace(u), whose rate nu int |grad u|^2 equals 2 nu int |Du|^2
    /// for solenoidal u.
    double dissipation_rate() const { return grad_sq_rate + mobility_rate; }
};

/// Energies and dissipation rates of a state (cum_dissipation and defect left at 0).
EnergyRecord energy(const State& state, const PhysParams& params, bool dealias = true);

/// Fills cum_dissipation (trapezoidal in time) and defect = E(t) + D(t) - E(0)
/// on every record and returns the defect column. Throws InputError if unsorted.
std::vector<double> energy_defect(std::vector<EnergyRecord>& series);

/// ( sum_j w_j ||u(t_j)||_{C^alpha}^p )^{1/p} with p = 2/(1+alpha) + delta and
/// trapezoidal weights; ||u||_{C^alpha} = max|u| + sampled Hoelder seminorm.
double hypothesis_norm(const std::vector<State>& snapshots, double alpha, double delta);

/// Interfacial + bulk energy of c alone (the Cahn-Hilliard part of E).
double phase_energy(const ScalarField& c, const PhysParams& params);

}  // namespace nsch
