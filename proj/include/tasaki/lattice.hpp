#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>
#include <vector>

namespace tasaki {

// ---- lattice definition ----
//
// Chain of N = 2L+1 sites: hopping u on every nearest-neighbor bond (j, j+1),
// hopping v on (j, j+2) for odd j. The lower band is dispersionless at -2|v|
// exactly when |u|/|v| = sqrt(2).

struct LatticeSpec {
    int L = 1;
    double u = std::sqrt(2.0);
    double v = 1.0;

    int sites() const { return 2 * L + 1; }
    bool flat_band_condition() const {
        return v != 0.0 && std::abs(std::abs(u) / std::abs(v) - std::sqrt(2.0)) < 1e-12;
    }
};

// two-band dispersion; returns (E_minus, E_plus) with E_minus <= E_plus
std::pair<double, double> dispersion(double k, double u, double v);

// N x N real symmetric hopping matrix; throws std::invalid_argument for L < 1
// or non-finite amplitudes
Eigen::MatrixXd build_tasaki(const LatticeSpec& spec);

// ---- spectrum with a deterministic eigenvector gauge ----
//
// Energies ascending. Inside every degenerate block (grouped at degeneracy_tol)
// the basis is rotated into eigenvectors of the projected position operator,
// which turns the flat band into compactly localized states. Each column is
// sign-fixed so its largest-magnitude entry is positive, and block columns are
// ordered by the index of that entry.

struct Spectrum {
    Eigen::VectorXd energies;
    Eigen::MatrixXd states;  // orthonormal columns

    int size() const { return static_cast<int>(energies.size()); }
};

Spectrum eigendecompose(const Eigen::MatrixXd& H, double degeneracy_tol = 1e-10);

// ---- localized / extended classification ----
//
// Primary rule: the localized sector is the energy-ordered prefix of L+1 states
// (flat band plus the two isolated states). The flat-band flag |E_n + 2|v|| <
// energy_tol and the per-state IPR are reported as diagnostics only.

struct Classification {
    int localized_count = 0;
    std::vector<int> localized_indices;   // 0-based prefix
    std::vector<char> flat_band_flag;     // per state
    Eigen::VectorXd iprs;
    bool flat_flags_form_prefix = true;
};

Classification classify_states(const Spectrum& spec, double v, double energy_tol = 1e-8);

// sum_j psi_j^4 for a normalized vector; throws std::invalid_argument otherwise
double ipr(const Eigen::VectorXd& state);

}  // namespace tasaki
