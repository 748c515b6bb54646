#include "tasaki/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tasaki {

std::pair<double, double> dispersion(double k, double u, double v) {
    const double av = std::abs(v);
    const double c = std::cos(k);
    const double root = std::sqrt(v * v * c * c + 2.0 * u * u * (1.0 + c));
    return {av * c - root, av * c + root};
}

Eigen::MatrixXd build_tasaki(const LatticeSpec& spec) {
    if (spec.L < 1) throw std::invalid_argument("build_tasaki: L must be >= 1");
    if (!std::isfinite(spec.u) || !std::isfinite(spec.v))
        throw std::invalid_argument("build_tasaki: non-finite hopping amplitude");

    const int N = spec.sites();
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(N, N);
    for (int j = 1; j <= 2 * spec.L; ++j) {          // nearest-neighbor bonds
        H(j - 1, j) = spec.u;
        H(j, j - 1) = spec.u;
    }
    for (int j = 1; j <= 2 * spec.L - 1; j += 2) {   // (j, j+2) bonds, odd j
        H(j - 1, j + 1) = spec.v;
        H(j + 1, j - 1) = spec.v;
    }
    return H;
}

// ---- deterministic gauge ----

namespace {

// rotate a degenerate block into eigenvectors of the projected position operator
void localize_block(Eigen::MatrixXd& V, int begin, int size) {
    if (size < 2) return;
    const int N = static_cast<int>(V.rows());
    Eigen::MatrixXd B(size, size);
    auto block = V.middleCols(begin, size);
    for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b) {
            double acc = 0.0;
            for (int s = 0; s < N; ++s) acc += block(s, a) * (s + 1.0) * block(s, b);
            B(a, b) = acc;
        }
    B = 0.5 * (B + B.transpose().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: position sub-diagonalization failed");
    block = (block * es.eigenvectors()).eval();
}

int peak_site(const Eigen::MatrixXd& V, int col) {
    int idx = 0;
    V.col(col).cwiseAbs().maxCoeff(&idx);
    return idx;
}

}  // namespace

Spectrum eigendecompose(const Eigen::MatrixXd& H, double degeneracy_tol) {
    if (H.rows() != H.cols()) throw std::invalid_argument("eigendecompose: square matrix required");
    if (!H.isApprox(H.transpose(), 1e-12))
        throw std::invalid_argument("eigendecompose: symmetric matrix required");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: eigensolver did not converge");

    Spectrum out;
    out.energies = es.eigenvalues();
    out.states = es.eigenvectors();
    const int N = out.size();

    // degenerate blocks: maximal runs of consecutive energies
    int begin = 0;
    while (begin < N) {
        int end = begin + 1;
        while (end < N && out.energies(end) - out.energies(end - 1) <= degeneracy_tol) ++end;
        localize_block(out.states, begin, end - begin);

        // sign gauge, then order block columns by peak site
        std::vector<int> order(end - begin);
        std::iota(order.begin(), order.end(), begin);
        for (int c = begin; c < end; ++c) {
            const int p = peak_site(out.states, c);
            if (out.states(p, c) < 0) out.states.col(c) *= -1.0;
        }
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return peak_site(out.states, a) < peak_site(out.states, b);
        });
        Eigen::MatrixXd sorted(N, end - begin);
        for (int i = 0; i < end - begin; ++i) sorted.col(i) = out.states.col(order[i]);
        out.states.middleCols(begin, end - begin) = sorted;

        begin = end;
    }
    return out;
}

Classification classify_states(const Spectrum& spec, double v, double energy_tol) {
    const int N = spec.size();
    if (N % 2 == 0) throw std::invalid_argument("classify_states: expected odd dimension 2L+1");
    const int L = (N - 1) / 2;

    Classification out;
    out.localized_count = L + 1;
    out.localized_indices.resize(out.localized_count);
    std::iota(out.localized_indices.begin(), out.localized_indices.end(), 0);

    out.flat_band_flag.resize(N);
    out.iprs.resize(N);
    const double flat_energy = -2.0 * std::abs(v);
    for (int n = 0; n < N; ++n) {
        out.flat_band_flag[n] = std::abs(spec.energies(n) - flat_energy) < energy_tol ? 1 : 0;
        out.iprs(n) = spec.states.col(n).array().square().square().sum();
    }

    bool seen_false = false;
    for (int n = 0; n < N; ++n) {
        if (!out.flat_band_flag[n]) seen_false = true;
        else if (seen_false) { out.flat_flags_form_prefix = false; break; }
    }
    return out;
}

double ipr(const Eigen::VectorXd& state) {
    if (std::abs(state.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("ipr: state must be normalized");
    return state.array().square().square().sum();
}

}  // namespace tasaki
