#pragma once

#include "tasaki/dissipators.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>

// Hot inner loops, each in a serial reference version and an OpenMP version.
// The parallel variants split work over independent output rows/columns and keep
// the per-element arithmetic order unchanged, so both versions produce bitwise
// identical results; tests assert exact equality.

namespace tasaki::kernels {

using Complex = std::complex<double>;
using SparseRM = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

// y = A * x for compressed-row A
void spmv_serial(const SparseRM& A, const Eigen::VectorXcd& x, Eigen::VectorXcd& y);
void spmv_parallel(const SparseRM& A, const Eigen::VectorXcd& x, Eigen::VectorXcd& y);

// out = -i[H, rho] + sum_c rate_c (O rho O^dag - 1/2 {O^dag O, rho})
void lindblad_rhs_serial(const Eigen::MatrixXcd& H, const JumpSet& jumps,
                         const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out);
void lindblad_rhs_parallel(const Eigen::MatrixXcd& H, const JumpSet& jumps,
                           const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out);

bool openmp_enabled();
int max_threads();

// default dispatch: parallel when compiled with OpenMP, else serial
void spmv(const SparseRM& A, const Eigen::VectorXcd& x, Eigen::VectorXcd& y);
void lindblad_rhs(const Eigen::MatrixXcd& H, const JumpSet& jumps,
                  const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out);

}  // namespace tasaki::kernels
