#include "nsch/potential.hpp"

#include <algorithm>
#include <cmath>

#include "nsch/errors.hpp"

namespace nsch {
namespace {

void check_argument(const PotentialSpec& spec, double s, Clamp clamp) {
    if (std::isnan(s)) throw DomainError("potential evaluated at NaN");
    if (spec.kind == PotentialKind::logarithmic && clamp == Clamp::off && std::abs(s) >= 1.0) {
        throw DomainError("logarithmic potential is singular at |s| >= 1 (s=" + std::to_string(s) + ")");
    }
}

double log_arg(const PotentialSpec& spec, double x, Clamp clamp) {
    return clamp == Clamp::on ? std::max(x, spec.clamp_delta) : x;
}

}  // namespace

void PotentialSpec::validate() const {
    if (kind == PotentialKind::polynomial) return;
    if (!(theta > 0.0) || !(theta_c > 0.0)) {
        throw ConfigError("logarithmic potential needs theta > 0 and theta_c > 0");
    }
    if (!(theta < theta_c)) {
        throw ConfigError("logarithmic potential needs theta < theta_c so that f' is bounded below by a "
                          "negative constant (phase separation)");
    }
    if (!(clamp_delta > 0.0 && clamp_delta <= 1e-3)) {
        throw ConfigError("logarithmic clamp_delta must lie in (0, 1e-3]");
    }
}

double free_energy(const PotentialSpec& spec, double s, Clamp clamp) {
    check_argument(spec, s, clamp);
    if (spec.kind == PotentialKind::polynomial) {
        const double w = s * s - 1.0;
        return 0.25 * w * w;
    }
    const double p = 1.0 + s;
    const double m = 1.0 - s;
    return 0.5 * spec.theta * (p * std::log(log_arg(spec, p, clamp)) + m * std::log(log_arg(spec, m, clamp))) -
           0.5 * spec.theta_c * s * s;
}

double f_of_potential(const PotentialSpec& spec, double s, Clamp clamp) {
    check_argument(spec, s, clamp);
    if (spec.kind == PotentialKind::polynomial) return s * s * s - s;
    const double p = log_arg(spec, 1.0 + s, clamp);
    const double m = log_arg(spec, 1.0 - s, clamp);
    return 0.5 * spec.theta * (std::log(p) - std::log(m)) - spec.theta_c * s;
}

double f_prime_of_potential(const PotentialSpec& spec, double s, Clamp clamp) {
    check_argument(spec, s, clamp);
    if (spec.kind == PotentialKind::polynomial) return 3.0 * s * s - 1.0;
    const double p = log_arg(spec, 1.0 + s, clamp);
    const double m = log_arg(spec, 1.0 - s, clamp);
    return 0.5 * spec.theta * (1.0 / p + 1.0 / m) - spec.theta_c;
}

double stabilization_alpha(const PotentialSpec& spec) {
    spec.validate();
    if (spec.kind == PotentialKind::polynomial) return 1.0;
    return spec.theta_c - spec.theta;
}

bool satisfies_LiNiSh1(const PotentialSpec& spec) { return spec.kind == PotentialKind::polynomial; }

std::string to_string(PotentialKind kind) {
    return kind == PotentialKind::polynomial ? "polynomial" : "logarithmic";
}

PotentialKind potential_kind_from_string(const std::string& s) {
    if (s == "polynomial") return PotentialKind::polynomial;
    if (s == "logarithmic") return PotentialKind::logarithmic;
    throw ConfigError("unknown potential kind '" + s + "' (expected polynomial or logarithmic)");
}

}  // namespace nsch
