#include "tasaki/superop.hpp"
#include "tasaki/kernels.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace tasaki {

Eigen::VectorXcd vec(const Eigen::MatrixXcd& rho) {
    if (rho.rows() != rho.cols()) throw std::invalid_argument("vec: square matrix required");
    return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

Eigen::MatrixXcd unvec(const Eigen::VectorXcd& state) {
    const auto len = state.size();
    const auto N = static_cast<Eigen::Index>(std::llround(std::sqrt(double(len))));
    if (N * N != len) throw std::invalid_argument("unvec: length is not a perfect square");
    return Eigen::Map<const Eigen::MatrixXcd>(state.data(), N, N);
}

Eigen::VectorXcd Superoperator::apply(const Eigen::VectorXcd& x) const {
    Eigen::MatrixXcd out;
    kernels::lindblad_rhs(H, jumps, unvec(x), out);
    return vec(out);
}

Superoperator assemble_liouvillian(const Eigen::MatrixXcd& H, const JumpSet& jumps) {
    const int N = static_cast<int>(H.rows());
    if (H.cols() != N) throw std::invalid_argument("assemble_liouvillian: square H required");
    if (!jumps.channels.empty() && jumps.N != N)
        throw std::invalid_argument("assemble_liouvillian: dimension mismatch");

    const Complex I(0.0, 1.0);
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(static_cast<size_t>(2 * N) * N + jumps.channels.size() * (8 * N + 16));

    // -i (I (x) H): block diagonal
    for (int c = 0; c < N; ++c)
        for (int r = 0; r < N; ++r)
            for (int r2 = 0; r2 < N; ++r2)
                if (H(r, r2) != 0.0) trip.emplace_back(c * N + r, c * N + r2, -I * H(r, r2));

    // +i (H^T (x) I)
    for (int c = 0; c < N; ++c)
        for (int c2 = 0; c2 < N; ++c2)
            if (H(c2, c) != 0.0)
                for (int r = 0; r < N; ++r)
                    trip.emplace_back(c * N + r, c2 * N + r, I * H(c2, c));

    for (const auto& ch : jumps.channels) {
        const double g = ch.rate;
        const auto& a = ch.col;
        const auto& b = ch.row;

        // rate * conj(O) (x) O with O = a b^T: entry = conj(a_c b_c2) a_r b_r2
        for (int c = 0; c < N; ++c) {
            if (a(c) == 0.0) continue;
            for (int c2 = 0; c2 < N; ++c2) {
                if (b(c2) == 0.0) continue;
                const Complex left = std::conj(a(c) * b(c2));
                for (int r = 0; r < N; ++r) {
                    if (a(r) == 0.0) continue;
                    for (int r2 = 0; r2 < N; ++r2)
                        if (b(r2) != 0.0)
                            trip.emplace_back(c * N + r, c2 * N + r2, g * left * a(r) * b(r2));
                }
            }
        }

        // O^dag O = col_norm2 * conj(b) b^T
        // -rate/2 (I (x) O^dag O)
        for (int c = 0; c < N; ++c)
            for (int r = 0; r < N; ++r) {
                if (b(r) == 0.0) continue;
                for (int r2 = 0; r2 < N; ++r2)
                    if (b(r2) != 0.0)
                        trip.emplace_back(c * N + r, c * N + r2,
                                          -0.5 * g * ch.col_norm2 * std::conj(b(r)) * b(r2));
            }
        // -rate/2 ((O^dag O)^T (x) I); (O^dag O)^T entry (c, c2) = col_norm2 * b_c conj(b_c2)
        for (int c = 0; c < N; ++c) {
            if (b(c) == 0.0) continue;
            for (int c2 = 0; c2 < N; ++c2) {
                if (b(c2) == 0.0) continue;
                const Complex val = -0.5 * g * ch.col_norm2 * b(c) * std::conj(b(c2));
                for (int r = 0; r < N; ++r) trip.emplace_back(c * N + r, c2 * N + r, val);
            }
        }
    }

    Superoperator s;
    s.N = N;
    s.dim = N * N;
    s.H = H;
    s.jumps = jumps;
    s.sparse.resize(s.dim, s.dim);
    s.sparse.setFromTriplets(trip.begin(), trip.end());
    s.sparse.prune([](const Eigen::Index&, const Eigen::Index&, const Complex& v) {
        return std::abs(v) > 1e-16;
    });
    s.sparse.makeCompressed();
    return s;
}

Eigen::MatrixXcd apply_liouvillian(const Eigen::MatrixXcd& H, const JumpSet& jumps,
                                   const Eigen::MatrixXcd& rho) {
    if (rho.rows() != H.rows() || rho.cols() != H.cols())
        throw std::invalid_argument("apply_liouvillian: dimension mismatch");
    Eigen::MatrixXcd out;
    kernels::lindblad_rhs(H, jumps, rho, out);
    return out;
}

void export_coo(const SparseRM& m, std::ostream& os) {
    char buf[128];
    for (int r = 0; r < m.outerSize(); ++r)
        for (SparseRM::InnerIterator it(m, r); it; ++it) {
            std::snprintf(buf, sizeof(buf), "%ld,%ld,%.17g,%.17g\n", long(it.row()), long(it.col()),
                          it.value().real(), it.value().imag());
            os << buf;
        }
}

}  // namespace tasaki
