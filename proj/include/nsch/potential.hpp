#pragma once

#include <string>

namespace nsch {

enum class PotentialKind { logarithmic, polynomial };

/// Homogeneous free energy density F and its derivatives.
///
/// logarithmic: F(s) = theta/2 [(1+s)ln(1+s) + (1-s)ln(1-s)] - theta_c/2 s^2,
///              with ln arguments clamped to >= clamp_delta.
/// polynomial:  F(s) = (s^2 - 1)^2 / 4.
struct PotentialSpec {
    PotentialKind kind = PotentialKind::polynomial;
    double theta = 1.0;
    double theta_c = 2.0;
    double clamp_delta = 1e-8;

    static PotentialSpec polynomial() { return {}; }
    static PotentialSpec logarithmic(double theta, double theta_c, double clamp_delta = 1e-8) {
        return {PotentialKind::logarithmic, theta, theta_c, clamp_delta};
    }

    /// Throws ConfigError unless the spec yields a positive f'-lower-bound constant.
    void validate() const;
};

/// Whether evaluation near +-1 clamps the logarithm arguments or rejects |s| >= 1.
enum class Clamp { on, off };

double free_energy(const PotentialSpec& spec, double s, Clamp clamp = Clamp::on);
double f_of_potential(const PotentialSpec& spec, double s, Clamp clamp = Clamp::on);
double f_prime_of_potential(const PotentialSpec& spec, double s, Clamp clamp = Clamp::on);

/// Sharp constant alpha > 0 with f'(s) >= -alpha: theta_c - theta or 1.
double stabilization_alpha(const PotentialSpec& spec);

/// True iff f' extends continuously to [-1, 1]; only the polynomial well does.
bool satisfies_LiNiSh1(const PotentialSpec& spec);

std::string to_string(PotentialKind kind);
PotentialKind potential_kind_from_string(const std::string& s);

}  // namespace nsch
