#pragma once

#include "tasaki/dissipators.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <iosfwd>

namespace tasaki {

using Complex = std::complex<double>;
using SparseRM = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

// column stacking: entry (r, c) of rho lives at index c*N + r
Eigen::VectorXcd vec(const Eigen::MatrixXcd& rho);

// inverse of vec; throws std::invalid_argument unless the length is a perfect square
Eigen::MatrixXcd unvec(const Eigen::VectorXcd& state);

// Liouvillian in the column-stacking convention,
//   L = -i (I (x) H - H^T (x) I)
//     + sum_c rate_c [ conj(O) (x) O - 1/2 I (x) O^dag O - 1/2 (O^dag O)^T (x) I ]
// kept both as a compressed-row sparse matrix and as a matrix-free action.
struct Superoperator {
    int N = 0;    // density-matrix dimension
    int dim = 0;  // N^2
    SparseRM sparse;
    Eigen::MatrixXcd H;  // retained for the matrix-free path
    JumpSet jumps;

    Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
};

Superoperator assemble_liouvillian(const Eigen::MatrixXcd& H, const JumpSet& jumps);

// Lindblad right-hand side in matrix form,
//   -i[H, rho] + sum_c rate_c (O rho O^dag - 1/2 {O^dag O, rho}),
// evaluated through the rank-1 channel factors
Eigen::MatrixXcd apply_liouvillian(const Eigen::MatrixXcd& H, const JumpSet& jumps,
                                   const Eigen::MatrixXcd& rho);

// coordinate text dump: "row,col,re,im" per stored entry, 0-based indices
void export_coo(const SparseRM& m, std::ostream& os);

}  // namespace tasaki
