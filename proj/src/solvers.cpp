#include "tasaki/solvers.hpp"
#include "tasaki/kernels.hpp"

#include <Eigen/SparseLU>
#include <unsupported/Eigen/MatrixFunctions>

#include <boost/numeric/odeint.hpp>

#ifdef TASAKI_HAVE_LAPACKE
#include <lapacke.h>
#endif

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <vector>

namespace tasaki {

// ---- dense eigendecomposition backend ----

#ifdef TASAKI_HAVE_LAPACKE

void eig_general(const Eigen::MatrixXcd& A, Eigen::VectorXcd& w, Eigen::MatrixXcd& V) {
    const int n = static_cast<int>(A.rows());
    Eigen::MatrixXcd work = A;  // zgeev destroys the input
    w.resize(n);
    V.resize(n, n);
    const int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n,
                                   reinterpret_cast<lapack_complex_double*>(work.data()), n,
                                   reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1,
                                   reinterpret_cast<lapack_complex_double*>(V.data()), n);
    if (info != 0) throw SolverError("zgeev failed, info=" + std::to_string(info));
}

Eigen::VectorXcd eig_values(const Eigen::MatrixXcd& A) {
    const int n = static_cast<int>(A.rows());
    Eigen::MatrixXcd work = A;
    Eigen::VectorXcd w(n);
    const int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n,
                                   reinterpret_cast<lapack_complex_double*>(work.data()), n,
                                   reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1,
                                   nullptr, 1);
    if (info != 0) throw SolverError("zgeev failed, info=" + std::to_string(info));
    return w;
}

#else

void eig_general(const Eigen::MatrixXcd& A, Eigen::VectorXcd& w, Eigen::MatrixXcd& V) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, true);
    if (es.info() != Eigen::Success) throw SolverError("complex eigensolver did not converge");
    w = es.eigenvalues();
    V = es.eigenvectors();
}

Eigen::VectorXcd eig_values(const Eigen::MatrixXcd& A) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
    if (es.info() != Eigen::Success) throw SolverError("complex eigensolver did not converge");
    return es.eigenvalues();
}

#endif

// ---- steady states ----

namespace {

double unmodified_residual(const Superoperator& s, const Eigen::MatrixXcd& rho) {
    Eigen::VectorXcd y;
    kernels::spmv(s.sparse, vec(rho), y);
    return y.norm();
}

Eigen::MatrixXcd hermitize_normalize(const Eigen::VectorXcd& x, bool& ok) {
    Eigen::MatrixXcd rho = unvec(x);
    rho = 0.5 * (rho + rho.adjoint().eval());
    const double tr = rho.trace().real();
    ok = std::abs(tr) > 1e-12;
    if (ok) rho /= tr;
    return rho;
}

}  // namespace

SteadyStateReport steady_state_dense(const Superoperator& s, const DenseOptions& opt) {
    if (s.N > opt.dense_cap)
        throw SolverError("steady_state_dense: N=" + std::to_string(s.N) + " exceeds dense cap " +
                          std::to_string(opt.dense_cap) + " (raise dense_cap to opt in)");

    const Eigen::MatrixXcd Ld(s.sparse);
    Eigen::VectorXcd w;
    Eigen::MatrixXcd V;
    eig_general(Ld, w, V);

    const double scale = Ld.size() > 0 ? Ld.cwiseAbs().maxCoeff() : 0.0;
    const double null_tol = opt.null_tol_scale * std::max(1.0, scale);

    int zero_idx = -1, multiplicity = 0;
    double max_re = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < w.size(); ++i) {
        if (std::abs(w(i)) < null_tol) {
            ++multiplicity;
            if (zero_idx < 0) zero_idx = i;
        } else {
            max_re = std::max(max_re, w(i).real());
        }
    }
    const double gap = std::isfinite(max_re) ? -max_re : 0.0;

    if (multiplicity == 0)
        throw NoZeroEigenvalue("steady_state_dense: no eigenvalue within null tolerance " +
                               std::to_string(null_tol));
    if (multiplicity > 1) throw DegenerateSteadyState(multiplicity);

    bool ok = false;
    Eigen::MatrixXcd rho = hermitize_normalize(V.col(zero_idx), ok);
    if (!ok) throw NoZeroEigenvalue("steady_state_dense: traceless zero mode");

    SteadyStateReport rep;
    rep.state = std::move(rho);
    rep.residual = unmodified_residual(s, rep.state);
    rep.zero_multiplicity = multiplicity;
    rep.gap = gap;
    return rep;
}

SteadyStateReport steady_state_linear(const Superoperator& s, const LinearOptions& opt) {
    const int N = s.N;
    const int n = s.dim;

    // diagonal-dominance deficit per row of the unmodified Liouvillian
    Eigen::VectorXd deficit = Eigen::VectorXd::Zero(n);
    for (int r = 0; r < n; ++r) {
        double sum = 0.0, diag = 0.0;
        for (SparseRM::InnerIterator it(s.sparse, r); it; ++it) {
            const double a = std::abs(it.value());
            sum += a;
            if (it.col() == r) diag = a;
        }
        deficit(r) = sum - 2.0 * diag;
    }

    // the trace functional is supported on diagonal rows only, so those are the
    // admissible replacements; order them by descending deficit
    std::vector<int> cand(N);
    std::iota(cand.begin(), cand.end(), 0);
    std::sort(cand.begin(), cand.end(), [&](int a, int b) {
        const double da = deficit(a * N + a), db = deficit(b * N + b);
        if (da != db) return da > db;
        return a < b;
    });

    using SparseCM = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;
    Eigen::VectorXcd rhs(n), x;

    SteadyStateReport rep;
    for (int attempt = 0; attempt < N; ++attempt) {
        const int r = cand[attempt] * N + cand[attempt];

        std::vector<Eigen::Triplet<Complex>> trip;
        trip.reserve(s.sparse.nonZeros() + N);
        for (int row = 0; row < n; ++row) {
            if (row == r) continue;
            for (SparseRM::InnerIterator it(s.sparse, row); it; ++it)
                trip.emplace_back(row, static_cast<int>(it.col()), it.value());
        }
        for (int c = 0; c < N; ++c) trip.emplace_back(r, c * N + c, Complex(1.0, 0.0));
        SparseCM M(n, n);
        M.setFromTriplets(trip.begin(), trip.end());
        M.makeCompressed();

        Eigen::SparseLU<SparseCM> lu;
        lu.compute(M);
        if (lu.info() != Eigen::Success) continue;

        rhs.setZero();
        rhs(r) = 1.0;
        x = lu.solve(rhs);
        for (int round = 0; round < opt.refine_rounds; ++round) {
            Eigen::VectorXcd res = rhs - M * x;
            if (res.norm() <= 1e-13 * std::max(1.0, x.norm())) break;
            x += lu.solve(res);
        }

        bool ok = false;
        Eigen::MatrixXcd rho = hermitize_normalize(x, ok);
        if (!ok) continue;
        const double residual = unmodified_residual(s, rho);
        if (residual < opt.residual_tol) {
            rep.state = std::move(rho);
            rep.residual = residual;
            rep.zero_multiplicity = 1;
            rep.replaced_row = r;
            rep.attempts = attempt + 1;
            return rep;
        }
    }
    throw SingularSystem(
        "steady_state_linear: every diagonal-row trace replacement failed the residual gate "
        "(steady state likely degenerate)");
}

double spectral_gap(const Superoperator& s, const DenseOptions& opt) {
    if (s.N > opt.dense_cap)
        throw SolverError("spectral_gap: N exceeds dense cap (raise dense_cap to opt in)");
    const Eigen::MatrixXcd Ld(s.sparse);
    const Eigen::VectorXcd w = eig_values(Ld);
    const double scale = Ld.size() > 0 ? Ld.cwiseAbs().maxCoeff() : 0.0;
    const double null_tol = opt.null_tol_scale * std::max(1.0, scale);
    double max_re = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < w.size(); ++i)
        if (std::abs(w(i)) >= null_tol) max_re = std::max(max_re, w(i).real());
    return std::isfinite(max_re) ? -max_re : 0.0;
}

// ---- matrix functions ----

Eigen::MatrixXcd matrix_sqrt_psd(const Eigen::MatrixXcd& rho) {
    if (rho.rows() != rho.cols()) throw std::invalid_argument("matrix_sqrt_psd: square input");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint().eval()));
    if (es.info() != Eigen::Success) throw SolverError("matrix_sqrt_psd: eigensolver failed");
    Eigen::VectorXd lam = es.eigenvalues();
    if (lam.minCoeff() < -1e-6)
        throw std::invalid_argument("matrix_sqrt_psd: eigenvalue " + std::to_string(lam.minCoeff()) +
                                    " below -1e-6, input not PSD");
    const Eigen::VectorXd root = lam.cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

// ---- time evolution ----

EvolveMethod parse_method(const std::string& name) {
    if (name == "adaptive_rk") return EvolveMethod::adaptive_rk;
    if (name == "krylov_expm") return EvolveMethod::krylov_expm;
    if (name == "dense_expm") return EvolveMethod::dense_expm;
    throw ConfigError("unknown evolve method '" + name + "'");
}

namespace {

// expokit-style Krylov propagation w <- exp(t A) v with adaptive sub-stepping
Eigen::VectorXcd krylov_expm_apply(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& A,
                                   Eigen::VectorXcd v, double t, int m, double tol) {
    const auto n = v.size();
    const int mm = static_cast<int>(std::min<Eigen::Index>(m, n));
    double done = 0.0;
    double step = t;

    while (done < t * (1.0 - 1e-14)) {
        step = std::min(step, t - done);
        const double beta = v.norm();
        if (beta == 0.0) return v;

        Eigen::MatrixXcd V(n, mm + 1);
        Eigen::MatrixXcd Hk = Eigen::MatrixXcd::Zero(mm + 1, mm);
        V.col(0) = v / beta;
        int m_eff = mm;
        bool happy = false;
        for (int k = 0; k < mm; ++k) {
            Eigen::VectorXcd p = A(V.col(k));
            for (int i = 0; i <= k; ++i) {  // modified Gram-Schmidt
                Hk(i, k) = V.col(i).dot(p);
                p -= Hk(i, k) * V.col(i);
            }
            Hk(k + 1, k) = p.norm();
            if (std::abs(Hk(k + 1, k)) < 1e-14 * std::max(1.0, beta)) {
                m_eff = k + 1;
                happy = true;
                break;
            }
            if (k + 1 < mm + 1) V.col(k + 1) = p / Hk(k + 1, k);
        }

        while (true) {
            const Eigen::MatrixXcd E = (step * Hk.topLeftCorner(m_eff, m_eff)).exp();
            const double err =
                happy ? 0.0 : beta * std::abs(Hk(m_eff, m_eff - 1)) * std::abs(E(m_eff - 1, 0));
            if (err <= tol * std::max(1.0, beta) || happy) {
                v = V.leftCols(m_eff) * (beta * E.col(0));
                done += step;
                step *= 1.5;
                break;
            }
            step *= 0.5;
            if (step < 1e-14 * std::max(1.0, t))
                throw IntegratorError("krylov_expm: step underflow", done);
        }
    }
    return v;
}

struct InvariantCheck {
    double trace_err, herm_err, min_eig;
};

InvariantCheck check_state(const Eigen::MatrixXcd& rho) {
    InvariantCheck c;
    c.trace_err = std::abs(rho.trace() - Complex(1.0, 0.0));
    c.herm_err = (rho - rho.adjoint().eval()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint().eval()),
                                                       Eigen::EigenvaluesOnly);
    c.min_eig = es.eigenvalues().minCoeff();
    return c;
}

}  // namespace

TrajectoryRecord evolve(const Eigen::MatrixXcd& H, const JumpSet& jumps, const DensityMatrix& rho0,
                        const std::vector<double>& times, EvolveMethod method,
                        const EvolveOptions& opt,
                        const std::function<void(double, const DensityMatrix&)>& observer) {
    const int N = static_cast<int>(rho0.rows());
    if (rho0.cols() != N || H.rows() != N) throw std::invalid_argument("evolve: dimension mismatch");
    if (times.empty()) throw std::invalid_argument("evolve: empty time grid");
    if (times.front() < 0.0) throw std::invalid_argument("evolve: times must start at t >= 0");
    for (size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            throw std::invalid_argument("evolve: times must be strictly increasing");
    {
        const InvariantCheck c0 = check_state(rho0);
        if (c0.trace_err > 1e-8 || c0.herm_err > 1e-8 || c0.min_eig < -1e-8)
            throw std::invalid_argument("evolve: rho0 is not a valid density matrix");
    }

    TrajectoryRecord rec;
    auto& trace_err = rec.observables["trace_err"];
    auto& herm_err = rec.observables["herm_err"];
    auto& min_eig = rec.observables["min_eig"];

    double last_ok = 0.0;
    auto record = [&](double t, const Eigen::VectorXcd& x) {
        const Eigen::MatrixXcd rho = unvec(x);
        const InvariantCheck c = check_state(rho);
        if (c.trace_err > opt.invariant_abort || c.herm_err > opt.invariant_abort ||
            c.min_eig < -opt.invariant_abort) {
            std::ostringstream msg;
            msg << "evolve: invariant violation at t=" << t << " (trace_err=" << c.trace_err
                << ", herm_err=" << c.herm_err << ", min_eig=" << c.min_eig << ")";
            throw IntegratorError(msg.str(), last_ok);
        }
        rec.times.push_back(t);
        trace_err.push_back(c.trace_err);
        herm_err.push_back(c.herm_err);
        min_eig.push_back(c.min_eig);
        if (opt.retain_states) rec.states.push_back(rho);
        if (observer) observer(t, rho);
        last_ok = t;
    };

    Eigen::VectorXcd x = vec(rho0);

    switch (method) {
        case EvolveMethod::adaptive_rk: {
            namespace ode = boost::numeric::odeint;
            using state_t = std::vector<Complex>;
            using stepper_t = ode::runge_kutta_dopri5<state_t>;
            auto ctrl = ode::make_controlled(opt.atol, opt.rtol, stepper_t());

            Eigen::MatrixXcd scratch;
            auto sys = [&](const state_t& in, state_t& dxdt, double) {
                const Eigen::Map<const Eigen::MatrixXcd> rho(in.data(), N, N);
                kernels::lindblad_rhs(H, jumps, rho, scratch);
                dxdt.resize(in.size());
                Eigen::Map<Eigen::MatrixXcd>(dxdt.data(), N, N) = scratch;
            };

            state_t state(x.data(), x.data() + x.size());
            double t = 0.0, dt = 1e-2;
            for (const double target : times) {
                while (target - t > 1e-14 * std::max(1.0, target)) {
                    double h = std::min(dt, target - t);
                    if (ode::fail == ctrl.try_step(sys, state, t, h)) {
                        if (h < 1e-14 * std::max(1.0, target))
                            throw IntegratorError("adaptive_rk: step underflow", last_ok);
                    }
                    dt = h;  // controller's next-step suggestion
                }
                record(target, Eigen::Map<const Eigen::VectorXcd>(state.data(), x.size()));
            }
            break;
        }
        case EvolveMethod::krylov_expm: {
            auto apply = [&](const Eigen::VectorXcd& in) {
                Eigen::MatrixXcd scratch;
                kernels::lindblad_rhs(H, jumps, unvec(in), scratch);
                return vec(scratch);
            };
            double t = 0.0;
            for (const double target : times) {
                if (target > t)
                    x = krylov_expm_apply(apply, x, target - t, opt.krylov_dim, opt.krylov_tol);
                t = target;
                record(t, x);
            }
            break;
        }
        case EvolveMethod::dense_expm: {
            if (N > opt.dense_cap)
                throw SolverError("evolve: dense_expm requires N <= dense cap " +
                                  std::to_string(opt.dense_cap));
            const Eigen::MatrixXcd Ld(assemble_liouvillian(H, jumps).sparse);
            std::map<double, Eigen::MatrixXcd> cache;
            double t = 0.0;
            for (const double target : times) {
                const double delta = target - t;
                if (delta > 0.0) {
                    auto it = cache.find(delta);
                    if (it == cache.end())
                        it = cache.emplace(delta, Eigen::MatrixXcd((delta * Ld).exp())).first;
                    x = it->second * x;
                }
                t = target;
                record(t, x);
            }
            break;
        }
    }
    return rec;
}

}  // namespace tasaki
