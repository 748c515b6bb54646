#include "tasaki/observables.hpp"
#include "tasaki/solvers.hpp"

#include <cmath>
#include <stdexcept>

namespace tasaki {

Eigen::MatrixXcd eigenbasis_matrix(const DensityMatrix& rho, const Spectrum& spec) {
    if (rho.rows() != spec.states.rows())
        throw std::invalid_argument("eigenbasis_matrix: dimension mismatch");
    return spec.states.transpose() * rho * spec.states;
}

Eigen::VectorXd spatial_diagonal(const DensityMatrix& rho) {
    return rho.diagonal().real();
}

double in_phase_ratio(const Eigen::VectorXd& state, int l, const JumpSet& jumps, double amp_tol) {
    if (amp_tol <= 0.0) throw std::invalid_argument("in_phase_ratio: amp_tol must be positive");
    if (state.size() != jumps.N) throw std::invalid_argument("in_phase_ratio: dimension mismatch");
    if (jumps.pair_count == 0)
        throw std::invalid_argument("in_phase_ratio: jump set has no two-site pairs");

    int in_phase = 0;
    for (const auto& ch : jumps.channels) {
        if (ch.kind != ChannelKind::two_site) continue;
        if (ch.l != l)
            throw std::invalid_argument("in_phase_ratio: jump set range differs from requested l");
        const double a = state(ch.j - 1);
        const double b = state(ch.j + ch.l - 1);
        // pairs with a vanishing amplitude have no defined relative phase; they
        // count against the ratio rather than shrinking the denominator
        if (std::abs(a) > amp_tol && std::abs(b) > amp_tol && std::signbit(a) == std::signbit(b))
            ++in_phase;
    }
    return static_cast<double>(in_phase) / static_cast<double>(jumps.pair_count);
}

double localized_fraction(const Eigen::MatrixXcd& rho_eig, int localized_count) {
    if (localized_count < 0 || localized_count > rho_eig.rows())
        throw std::invalid_argument("localized_fraction: count out of range");
    double sum = 0.0;
    for (int n = 0; n < localized_count; ++n) sum += rho_eig(n, n).real();
    return sum;
}

double fidelity(const DensityMatrix& rho_t, const DensityMatrix& rho0) {
    if (rho_t.rows() != rho0.rows() || rho_t.cols() != rho0.cols())
        throw std::invalid_argument("fidelity: dimension mismatch");

    // pure reference state: F = sqrt(<psi|rho_t|psi>)
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es0(0.5 * (rho0 + rho0.adjoint().eval()));
    if (es0.info() != Eigen::Success) throw SolverError("fidelity: eigensolver failed");
    const int last = static_cast<int>(rho0.rows()) - 1;
    if (es0.eigenvalues()(last) > 1.0 - 1e-8) {
        const Eigen::VectorXcd psi = es0.eigenvectors().col(last);
        const double p = std::real(psi.dot(rho_t * psi));
        return std::min(1.0, std::sqrt(std::max(0.0, p)));
    }

    const Eigen::MatrixXcd s = matrix_sqrt_psd(rho_t);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s * rho0 * s, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw SolverError("fidelity: eigensolver failed");
    double f = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double lam = es.eigenvalues()(i);
        if (lam < -1e-6)
            throw std::invalid_argument("fidelity: inner product eigenvalue " + std::to_string(lam) +
                                        " below -1e-6");
        f += std::sqrt(std::max(0.0, lam));
    }
    return std::min(1.0, f);
}

}  // namespace tasaki
