#pragma once

#include "tasaki/errors.hpp"
#include "tasaki/superop.hpp"

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace tasaki {

using DensityMatrix = Eigen::MatrixXcd;

struct SteadyStateReport {
    DensityMatrix state;
    double residual = 0.0;  // ||L vec(rho)||_2 against the unmodified Liouvillian
    int zero_multiplicity = 1;
    double gap = std::numeric_limits<double>::quiet_NaN();  // set when the full spectrum was computed
    int replaced_row = -1;  // linear path: diagonal row carrying the trace constraint
    int attempts = 0;       // linear path: candidate rows tried
};

struct DenseOptions {
    int dense_cap = 40;             // refuse when the density-matrix dimension N exceeds this
    double null_tol_scale = 1e-10;  // zero mode when |lambda| < scale * max(1, max|L|)
};

struct LinearOptions {
    double residual_tol = 1e-8;
    int refine_rounds = 3;
};

// full eigendecomposition of the dense Liouvillian; extracts the zero mode,
// reports multiplicity and gap; throws DegenerateSteadyState / NoZeroEigenvalue
SteadyStateReport steady_state_dense(const Superoperator& s, const DenseOptions& opt = {});

// sparse solve of L x = 0 with one diagonal row replaced by the trace constraint;
// candidate rows ordered by descending diagonal-dominance deficit, retried with
// iterative refinement until the unmodified-L residual passes; throws SingularSystem
SteadyStateReport steady_state_linear(const Superoperator& s, const LinearOptions& opt = {});

enum class EvolveMethod { adaptive_rk, krylov_expm, dense_expm };

EvolveMethod parse_method(const std::string& name);  // throws ConfigError

struct EvolveOptions {
    double rtol = 1e-9;   // adaptive_rk controlled-stepper tolerances
    double atol = 1e-12;
    int krylov_dim = 40;
    double krylov_tol = 1e-10;
    int dense_cap = 40;              // dense_expm guard
    bool retain_states = true;
    double invariant_abort = 1e-6;   // trace / Hermiticity / positivity drift beyond this aborts
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<DensityMatrix> states;  // empty unless retain_states
    // per-time series: "trace_err", "herm_err", "min_eig"
    std::map<std::string, std::vector<double>> observables;
};

// observer, when given, is called once per output time with the current state
TrajectoryRecord evolve(const Eigen::MatrixXcd& H, const JumpSet& jumps, const DensityMatrix& rho0,
                        const std::vector<double>& times, EvolveMethod method,
                        const EvolveOptions& opt = {},
                        const std::function<void(double, const DensityMatrix&)>& observer = {});

// Hermitian PSD square root with eigenvalue clipping at zero;
// eigenvalues below -1e-6 are rejected as genuinely non-PSD
Eigen::MatrixXcd matrix_sqrt_psd(const Eigen::MatrixXcd& rho);

// -(largest real part among non-zero modes); 0 when every mode is a zero mode
double spectral_gap(const Superoperator& s, const DenseOptions& opt = {});

// dense complex eigendecomposition helper (LAPACK zgeev when available)
void eig_general(const Eigen::MatrixXcd& A, Eigen::VectorXcd& w, Eigen::MatrixXcd& V);
Eigen::VectorXcd eig_values(const Eigen::MatrixXcd& A);

}  // namespace tasaki
