#include "tasaki/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <stdexcept>
#include <vector>

namespace tasaki::kernels {

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// ---- sparse matrix-vector product ----

namespace {

template <typename Body>
void parallel_columns(int n, bool par, const Body& body) {
    if (par) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int c = 0; c < n; ++c) body(c);
    } else {
        for (int c = 0; c < n; ++c) body(c);
    }
}

void spmv_impl(const SparseRM& A, const Eigen::VectorXcd& x, Eigen::VectorXcd& y, bool par) {
    if (A.cols() != x.size()) throw std::invalid_argument("spmv: dimension mismatch");
    if (!A.isCompressed()) throw std::invalid_argument("spmv: matrix must be compressed");
    const int rows = static_cast<int>(A.rows());
    y.resize(rows);
    const auto* outer = A.outerIndexPtr();
    const auto* inner = A.innerIndexPtr();
    const auto* vals = A.valuePtr();
    parallel_columns(rows, par, [&](int r) {
        Complex acc(0.0, 0.0);
        for (auto k = outer[r]; k < outer[r + 1]; ++k) acc += vals[k] * x(inner[k]);
        y(r) = acc;
    });
}

// shared per-channel precomputation for the Lindblad right-hand side
struct ChannelWork {
    Complex s;           // row^T rho conj(row)
    Eigen::VectorXcd w;  // (row^T rho)^T
    Eigen::VectorXcd u;  // rho conj(row)
};

void lindblad_rhs_impl(const Eigen::MatrixXcd& H, const JumpSet& jumps,
                       const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out, bool par) {
    const int N = static_cast<int>(rho.rows());
    if (rho.cols() != N || H.rows() != N || H.cols() != N)
        throw std::invalid_argument("lindblad_rhs: dimension mismatch");

    const Complex mi(0.0, -1.0);
    out.resize(N, N);
    out.noalias() = mi * (H * rho);
    out.noalias() -= mi * (rho * H);

    const int K = static_cast<int>(jumps.channels.size());
    std::vector<ChannelWork> work(K);
    for (int k = 0; k < K; ++k) {
        const auto& b = jumps.channels[k].row;
        work[k].u.noalias() = rho * b.conjugate();
        work[k].w.noalias() = rho.transpose() * b;
        work[k].s = (b.transpose() * work[k].u).value();
    }

    parallel_columns(N, par, [&](int c) {
        for (int k = 0; k < K; ++k) {
            const auto& ch = jumps.channels[k];
            const double g = ch.rate;
            const double half = 0.5 * g * ch.col_norm2;
            out.col(c) += (g * work[k].s * std::conj(ch.col(c))) * ch.col;
            out.col(c) -= (half * work[k].w(c)) * ch.row.conjugate();
            out.col(c) -= (half * ch.row(c)) * work[k].u;
        }
    });
}

}  // namespace

void spmv_serial(const SparseRM& A, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
    spmv_impl(A, x, y, false);
}
void spmv_parallel(const SparseRM& A, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
    spmv_impl(A, x, y, true);
}
void spmv(const SparseRM& A, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
    spmv_impl(A, x, y, openmp_enabled());
}

void lindblad_rhs_serial(const Eigen::MatrixXcd& H, const JumpSet& jumps,
                         const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) {
    lindblad_rhs_impl(H, jumps, rho, out, false);
}
void lindblad_rhs_parallel(const Eigen::MatrixXcd& H, const JumpSet& jumps,
                           const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) {
    lindblad_rhs_impl(H, jumps, rho, out, true);
}
void lindblad_rhs(const Eigen::MatrixXcd& H, const JumpSet& jumps, const Eigen::MatrixXcd& rho,
                  Eigen::MatrixXcd& out) {
    lindblad_rhs_impl(H, jumps, rho, out, openmp_enabled());
}

}  // namespace tasaki::kernels
