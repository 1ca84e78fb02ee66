#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nsch/field.hpp"

namespace nsch {

/// max_x |f(x + y) - f(x)| for one lattice shift y.
struct ShiftIncrement {
    std::array<int, 3> shift{};
    double distance = 0.0;       ///< torus length |y|
    double max_increment = 0.0;
};

/// Lattice shifts used by the sampled estimator: `shift_budget` magnitudes
/// spaced geometrically from one spacing to pi, along the coordinate axes
/// and the face/body diagonals.
std::vector<std::array<int, 3>> holder_shifts(const Grid& grid, int shift_budget = 24);

std::vector<ShiftIncrement> shift_increments(const VectorField& f, int shift_budget = 24);

/// Sampled Hoelder seminorm: max over holder_shifts of max_increment / |y|^alpha.
double holder_seminorm(const VectorField& f, double alpha, int shift_budget = 24);
double holder_seminorm(const ScalarField& f, double alpha, int shift_budget = 24);

/// All n^dim - 1 lattice shifts. Cost O(n^(2 dim)); meant for n <= 32.
double holder_seminorm_brute_force(const VectorField& f, double alpha);
double holder_seminorm_brute_force(const ScalarField& f, double alpha);

/// max|f| + holder_seminorm(f, alpha).
double holder_norm(const VectorField& f, double alpha, int shift_budget = 24);

/// Solenoidal lacunary field
///   u = P( sum_{j=0}^{octaves} 2^{-alpha j} sum_{k in K_j} a_{j,k} cos(k . x + phi_{j,k}) )
/// where K_j holds the axis and diagonal directions scaled by 2^j and, for j >= 1,
/// the (2,1)-type directions scaled by 2^(j-1). Amplitudes are random unit vectors
/// perpendicular to k, phases random, all drawn from `seed`.
VectorField synth_holder_field(const Grid& grid, double alpha, int octaves, std::uint64_t seed);

}  // namespace nsch
