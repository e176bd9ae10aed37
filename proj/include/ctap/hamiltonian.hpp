#pragma once

#include <Eigen/Dense>
#include <span>

#include "ctap/chain.hpp"

namespace ctap {

// Instantaneous chain Hamiltonians in rad/ns. The model is real: detunings
// and tunnelling amplitudes are real, couplings carry no phase, and the
// tunnelling term enters with a minus sign on the off-diagonals. All
// observables are invariant under the global sign of the couplings.

/// Tridiagonal charge-basis Hamiltonian: diagonal = detunings,
/// (i, i+1) = -amplitudes[i]. Requires spin_mode == charge_only.
Eigen::MatrixXd charge_hamiltonian_real(const ChainSpec& spec,
                                        std::span<const double> amplitudes);

/// One-electron site(x)spin Hamiltonian of dimension 2*n_sites. Tunnelling
/// is spin-independent and couples like spins only; with zero spin
/// splittings this is exactly charge_hamiltonian (x) identity_2.
/// Requires spin_mode == site_spin.
Eigen::MatrixXd spin_site_hamiltonian_real(const ChainSpec& spec,
                                           std::span<const double> amplitudes);

/// Dispatch on spec.spin_mode.
Eigen::MatrixXd hamiltonian_real(const ChainSpec& spec,
                                 std::span<const double> amplitudes);

Eigen::MatrixXcd charge_hamiltonian(const ChainSpec& spec,
                                    std::span<const double> amplitudes);
Eigen::MatrixXcd spin_site_hamiltonian(const ChainSpec& spec,
                                       std::span<const double> amplitudes);

bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-12);

}  // namespace ctap
