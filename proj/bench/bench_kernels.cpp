// Timing harness for the hot kernels: serial reference vs OpenMP variant.
// Usage: bench_kernels [L] [reps]   (defaults L=60, reps picked per kernel)
// Both variants keep identical arithmetic order, so outputs are compared
// bitwise here as well as timed.

#include "tasaki/dissipators.hpp"
#include "tasaki/kernels.hpp"
#include "tasaki/lattice.hpp"
#include "tasaki/superop.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>

using namespace tasaki;
using Clock = std::chrono::steady_clock;

namespace {

double time_loop(int reps, const std::function<void()>& body) {
    body();  // warm up
    const auto t0 = Clock::now();
    for (int i = 0; i < reps; ++i) body();
    return std::chrono::duration<double>(Clock::now() - t0).count() / reps;
}

bool bitwise_equal(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), sizeof(std::complex<double>) * a.size()) == 0;
}

bool bitwise_equal(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           std::memcmp(a.data(), b.data(), sizeof(std::complex<double>) * a.size()) == 0;
}

}  // namespace

int main(int argc, char** argv) {
    const int L = argc > 1 ? std::atoi(argv[1]) : 60;
    const int reps_arg = argc > 2 ? std::atoi(argv[2]) : 0;
    if (L < 1) {
        std::fprintf(stderr, "usage: %s [L >= 1] [reps]\n", argv[0]);
        return 2;
    }

    LatticeSpec lat;
    lat.L = L;
    const int N = lat.sites();
    const Eigen::MatrixXcd H = build_tasaki(lat).cast<std::complex<double>>();
    const JumpSet jumps = build_jump_set(N, 1, 0.3 * std::acos(-1.0), 1.0);
    const Superoperator s = assemble_liouvillian(H, jumps);

    std::printf("L = %d, N = %d, superoperator dim = %d, nnz = %ld\n", L, N, s.dim,
                static_cast<long>(s.sparse.nonZeros()));
    std::printf("OpenMP %s, %d thread(s)\n\n", kernels::openmp_enabled() ? "on" : "off",
                kernels::max_threads());

    std::mt19937 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);

    {  // sparse matrix-vector product on the assembled Liouvillian
        Eigen::VectorXcd x(s.dim);
        for (int i = 0; i < s.dim; ++i) x(i) = std::complex<double>(gauss(rng), gauss(rng));
        x /= x.norm();
        Eigen::VectorXcd ys(s.dim), yp(s.dim);

        const int reps =
            reps_arg > 0
                ? reps_arg
                : std::max(1, static_cast<int>(4e8 / std::max<long>(1, s.sparse.nonZeros())));
        const double ts = time_loop(reps, [&] { kernels::spmv_serial(s.sparse, x, ys); });
        const double tp = time_loop(reps, [&] { kernels::spmv_parallel(s.sparse, x, yp); });
        std::printf("spmv         %4d reps   serial %9.3f ms   parallel %9.3f ms   speedup %.2fx   bitwise %s\n",
                    reps, ts * 1e3, tp * 1e3, ts / tp, bitwise_equal(ys, yp) ? "equal" : "DIFFER");
    }

    {  // matrix-form Lindblad right-hand side through the rank-1 channels
        Eigen::MatrixXcd rho(N, N);
        for (int c = 0; c < N; ++c)
            for (int r = 0; r < N; ++r) rho(r, c) = std::complex<double>(gauss(rng), gauss(rng));
        rho = ((rho + rho.adjoint()) * 0.5).eval();
        rho /= rho.trace().real();
        Eigen::MatrixXcd outs(N, N), outp(N, N);

        const int reps =
            reps_arg > 0 ? reps_arg
                         : std::max(1, static_cast<int>(2e9 / (double(N) * N * N + 1)));
        const double ts =
            time_loop(reps, [&] { kernels::lindblad_rhs_serial(H, jumps, rho, outs); });
        const double tp =
            time_loop(reps, [&] { kernels::lindblad_rhs_parallel(H, jumps, rho, outp); });
        std::printf("lindblad_rhs %4d reps   serial %9.3f ms   parallel %9.3f ms   speedup %.2fx   bitwise %s\n",
                    reps, ts * 1e3, tp * 1e3, ts / tp, bitwise_equal(outs, outp) ? "equal" : "DIFFER");
    }

    return 0;
}
