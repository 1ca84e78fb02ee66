#pragma once

#include <array>
#include <vector>

#include "nsch/field.hpp"

namespace nsch {

/// Per-grid wavenumber tables over the Hermitian-reduced layout.
///
/// `k[j]` holds the derivative wavenumber along axis j, with the Nyquist
/// component set to zero (its odd derivative vanishes on the grid). `k_sq`
/// holds the full |k|^2 including Nyquist components, used by the Laplacian.
/// `kept` flags modes that survive the 2/3 rule.
struct Wavenumbers {
    std::array<std::vector<double>, 3> k;
    std::vector<double> k_sq;
    std::vector<double> k_deriv_sq;
    std::vector<unsigned char> kept;
    /// Multiplicity of each stored mode in the full spectrum (1 or 2),
    /// used for Parseval sums over the reduced layout.
    std::vector<double> weight;
};

/// Shared read-only tables; built once per grid under a lock.
const Wavenumbers& wavenumbers(const Grid& grid);

SpectralField to_spectral(const ScalarField& f);
ScalarField to_physical(const SpectralField& f);

ScalarField laplacian(const ScalarField& f);
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
VectorField leray_project(const VectorField& v);
SpectralField dealias(const SpectralField& f);

// Spectral-space building blocks. The *_hat variants keep data in the
// reduced layout so callers can chain operators without round trips.

SpectralField derivative_hat(const SpectralField& f, int axis);
SpectralField laplacian_hat(const SpectralField& f);
void dealias_in_place(SpectralField& f);
void leray_project_in_place(std::vector<SpectralField>& v);

std::vector<SpectralField> to_spectral(const VectorField& v);
VectorField to_physical(const std::vector<SpectralField>& v);

/// Jacobian of a vector field: entry [i][j] = d v_i / d x_j.
std::vector<std::vector<ScalarField>> jacobian(const VectorField& v);

/// max_k |k . v_hat_k| / max_k |v_hat_k| (0 for the zero field).
double spectral_divergence_ratio(const VectorField& v);

/// sum over the full spectrum of |f_hat_k|^2 (under the 1/n^dim convention).
double spectral_energy(const SpectralField& f);

}  // namespace nsch
