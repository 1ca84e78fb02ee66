#include "nsch/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace nsch {
namespace {

int wrap(int i, int n) {
    const int r = i % n;
    return r < 0 ? r + n : r;
}

// dst[b] = src[(b - s) mod n] for b in [0, n).
void shift_row(const double* src, double* dst, int n, int s) {
    std::copy(src, src + (n - s), dst + s);
    std::copy(src + (n - s), src + n, dst);
}

}  // namespace

std::size_t lattice_index(const Grid& grid, std::array<int, 3> offset) {
    const int n = grid.n();
    std::size_t idx = 0;
    for (int j = 0; j < grid.dim(); ++j) idx = idx * n + wrap(offset[j], n);
    return idx;
}

void shift_into(const ScalarField& f, std::array<int, 3> offset, ScalarField& out) {
    const int n = f.grid.n();
    const double* src = f.values.data();
    double* dst = out.values.data();
    if (f.grid.dim() == 2) {
        const int s = wrap(offset[1], n);
        for (int a = 0; a < n; ++a) {
            const int sa = wrap(a - offset[0], n);
            shift_row(src + std::size_t(sa) * n, dst + std::size_t(a) * n, n, s);
        }
        return;
    }
    const int s = wrap(offset[2], n);
    for (int a = 0; a < n; ++a) {
        const int sa = wrap(a - offset[0], n);
        for (int b = 0; b < n; ++b) {
            const int sb = wrap(b - offset[1], n);
            shift_row(src + (std::size_t(sa) * n + sb) * n, dst + (std::size_t(a) * n + b) * n, n, s);
        }
    }
}

double torus_distance(const Grid& grid, std::array<int, 3> offset) {
    const int n = grid.n();
    double s = 0.0;
    for (int j = 0; j < grid.dim(); ++j) {
        const int w = wrap(offset[j], n);
        const int m = std::min(w, n - w);
        s += double(m) * m;
    }
    return grid.spacing() * std::sqrt(s);
}

}  // namespace nsch
