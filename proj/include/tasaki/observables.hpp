#pragma once

#include "tasaki/dissipators.hpp"
#include "tasaki/lattice.hpp"

#include <Eigen/Dense>

namespace tasaki {

// rho in the Hamiltonian eigenbasis: S^T rho S with the deterministic gauge of Spectrum
Eigen::MatrixXcd eigenbasis_matrix(const Eigen::MatrixXcd& rho, const Spectrum& spec);

// real parts of the lattice-basis diagonal
Eigen::VectorXd spatial_diagonal(const Eigen::MatrixXcd& rho);

// fraction of the set's two-site pairs (j, j+l) whose amplitudes carry equal sign;
// pairs with either amplitude at or below amp_tol count as not in phase; the
// denominator is always pair_count. Real input is required by the signature (the
// eigenvectors are gauged real). Throws std::invalid_argument when l disagrees
// with the set's channels or the set has no two-site channels.
double in_phase_ratio(const Eigen::VectorXd& state, int l, const JumpSet& jumps,
                      double amp_tol = 1e-10);

// sum of the first localized_count eigenbasis diagonal entries
double localized_fraction(const Eigen::MatrixXcd& rho_eig, int localized_count);

// Uhlmann fidelity Tr sqrt(rho_t^{1/2} rho0 rho_t^{1/2}), clipped to [0, 1];
// fast path sqrt(<psi|rho_t|psi>) when rho0 is pure
double fidelity(const Eigen::MatrixXcd& rho_t, const Eigen::MatrixXcd& rho0);

}  // namespace tasaki
