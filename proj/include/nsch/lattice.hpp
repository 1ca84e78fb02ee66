#pragma once

#include <array>
#include <cstddef>

#include "nsch/field.hpp"

namespace nsch {

/// Row-major index of the lattice point `offset` (wrapped periodically).
std::size_t lattice_index(const Grid& grid, std::array<int, 3> offset);

/// out(x) = f(x - offset) with periodic wrap.
void shift_into(const ScalarField& f, std::array<int, 3> offset, ScalarField& out);

/// Torus distance of the lattice offset, in physical units.
double torus_distance(const Grid& grid, std::array<int, 3> offset);

}  // namespace nsch
