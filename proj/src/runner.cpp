#include "tasaki/runner.hpp"
#include "tasaki/dissipators.hpp"
#include "tasaki/observables.hpp"
#include "tasaki/solvers.hpp"
#include "tasaki/superop.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;

namespace tasaki {

namespace {

constexpr const char* kVersion = "1.0.0";

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& raw) {
    try {
        size_t idx = 0;
        const double x = std::stod(raw, &idx);
        if (idx != raw.size()) throw std::invalid_argument(raw);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for '" + key + "': " + raw);
    }
}

long parse_int(const std::string& key, const std::string& raw) {
    long x = 0;
    const auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), x);
    if (ec != std::errc() || p != raw.data() + raw.size())
        throw ConfigError("bad integer value for '" + key + "': " + raw);
    return x;
}

bool parse_bool(const std::string& key, const std::string& raw) {
    if (raw == "true" || raw == "1") return true;
    if (raw == "false" || raw == "0") return false;
    throw ConfigError("bad boolean value for '" + key + "': " + raw);
}

const double kPi = std::acos(-1.0);

}  // namespace

double parse_alpha(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty()) throw ConfigError("empty alpha value");
    if (s == "pi") return kPi;
    if (s.rfind("pi/", 0) == 0) {
        const double d = parse_double("alpha", s.substr(3));
        if (d == 0.0) throw ConfigError("alpha: division by zero");
        return kPi / d;
    }
    if (s.size() > 2 && s.compare(s.size() - 2, 2, "pi") == 0)
        return parse_double("alpha", s.substr(0, s.size() - 2)) * kPi;
    return parse_double("alpha", s);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);

    RunConfig cfg;
    bool saw_alpha = false, saw_sweep = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key or value");

        if (key == "L") cfg.lattice.L = static_cast<int>(parse_int(key, val));
        else if (key == "u") cfg.lattice.u = parse_double(key, val);
        else if (key == "v") cfg.lattice.v = parse_double(key, val);
        else if (key == "l") cfg.l = static_cast<int>(parse_int(key, val));
        else if (key == "alpha") { cfg.alpha = parse_alpha(val); cfg.sweep = false; saw_alpha = true; }
        else if (key == "sweep_points") { cfg.sweep_points = static_cast<int>(parse_int(key, val)); cfg.sweep = true; saw_sweep = true; }
        else if (key == "gamma") cfg.gamma = parse_double(key, val);
        else if (key == "dephasing_gamma") cfg.dephasing_gamma = parse_double(key, val);
        else if (key == "solver") cfg.solver = val;
        else if (key == "method") cfg.method = val;
        else if (key == "initial_states") {
            cfg.dynamics.initial_state_indices.clear();
            std::stringstream ss(val);
            std::string tok;
            while (std::getline(ss, tok, ','))
                cfg.dynamics.initial_state_indices.push_back(
                    static_cast<int>(parse_int(key, trim(tok))));
            if (cfg.dynamics.initial_state_indices.empty())
                throw ConfigError("initial_states: empty list");
        }
        else if (key == "t_max") cfg.dynamics.t_max = parse_double(key, val);
        else if (key == "n_points") cfg.dynamics.n_points = static_cast<int>(parse_int(key, val));
        else if (key == "out") cfg.output_dir = val;
        else if (key == "seed") cfg.seed = static_cast<unsigned long>(parse_int(key, val));
        else if (key == "dense_cap") cfg.dense_cap = static_cast<int>(parse_int(key, val));
        else if (key == "export_liouvillian") cfg.export_liouvillian = parse_bool(key, val);
        else if (key == "retain_states") cfg.retain_states = parse_bool(key, val);
        else if (key == "gnuplot_hints") cfg.gnuplot_hints = parse_bool(key, val);
        else throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (saw_alpha && saw_sweep)
        throw ConfigError("config sets both a single alpha and an alpha sweep; pick one");
    return cfg;
}

void validate_config(const RunConfig& cfg) {
    const int N = cfg.lattice.sites();
    if (cfg.lattice.L < 1) throw ConfigError("L must be >= 1");
    if (!std::isfinite(cfg.lattice.u) || !std::isfinite(cfg.lattice.v))
        throw ConfigError("u and v must be finite");
    if (cfg.l < 1 || cfg.l + 1 > N) throw ConfigError("range l leaves no dissipation pair");
    if (!std::isfinite(cfg.alpha)) throw ConfigError("alpha must be finite");
    if (cfg.gamma <= 0.0) throw ConfigError("gamma must be positive");
    if (cfg.dephasing_gamma && *cfg.dephasing_gamma <= 0.0)
        throw ConfigError("dephasing_gamma must be positive");
    if (cfg.solver != "linear" && cfg.solver != "dense")
        throw ConfigError("solver must be 'linear' or 'dense'");
    parse_method(cfg.method);
    if (cfg.sweep_points < 2) throw ConfigError("sweep_points must be >= 2");
    if (cfg.dynamics.n_points < 2) throw ConfigError("n_points must be >= 2");
    for (const int n : cfg.dynamics.initial_state_indices)
        if (n < 1 || n > N)
            throw ConfigError("initial state index " + std::to_string(n) + " outside [1, " +
                              std::to_string(N) + "]");
    if (cfg.dense_cap < 2) throw ConfigError("dense_cap must be >= 2");
    if (cfg.output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

int worker_count() {
    const char* env = std::getenv("TASAKI_WORKERS");
    if (!env) return 1;
    long n = 0;
    const auto [p, ec] = std::from_chars(env, env + std::string_view(env).size(), n);
    if (ec != std::errc() || *p != '\0' || n < 1) return 1;
    return static_cast<int>(n);
}

std::vector<int> default_initial_indices(int N) {
    // scale the reference indices {20, 61, 121}, quoted for a 121-site chain,
    // to the chain at hand: a localized-region state, mid-spectrum, top
    auto scaled = [N](int ref) {
        const int n = static_cast<int>(std::lround(ref * static_cast<double>(N) / 121.0));
        return std::min(std::max(n, 1), N);
    };
    std::vector<int> out{scaled(20), scaled(61), scaled(121)};
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// runs body(i) for i in [0, count) on up to worker_count() threads; each body
// owns slot i exclusively and must catch its own exceptions
template <typename F>
void parallel_slots(int count, F&& body) {
    const int workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        });
    for (auto& th : pool) th.join();
}

struct BundleWriter {
    fs::path dir;
    std::vector<std::string> tables;

    explicit BundleWriter(const std::string& out) : dir(out) { fs::create_directories(dir); }

    void table(const std::string& name, const std::string& header,
               const std::vector<std::string>& rows) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
        f << header << '\n';
        for (const auto& r : rows) f << r << '\n';
        tables.push_back(name);
    }

    void raw(const std::string& name, const std::string& content) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
        f << content;
        tables.push_back(name);
    }

    OutputBundle finish(json manifest) {
        manifest["tables"] = tables;
        OutputBundle b;
        b.dir = dir;
        b.tables = tables;
        b.manifest_json = manifest.dump(2) + "\n";
        std::ofstream f(dir / "manifest.json", std::ios::binary);
        if (!f) throw std::runtime_error("cannot write manifest.json");
        f << b.manifest_json;
        return b;
    }
};

json parameter_echo(const RunConfig& cfg) {
    json p;
    p["L"] = cfg.lattice.L;
    p["N"] = cfg.lattice.sites();
    p["u"] = cfg.lattice.u;
    p["v"] = cfg.lattice.v;
    p["l"] = cfg.l;
    if (cfg.sweep) p["alpha_grid"] = {{"points", cfg.sweep_points}, {"min", 0.0}, {"max", kPi}};
    else p["alpha"] = cfg.alpha;
    p["gamma"] = cfg.gamma;
    if (cfg.dephasing_gamma) p["dephasing_gamma"] = *cfg.dephasing_gamma;
    else p["dephasing_gamma"] = nullptr;
    p["solver"] = cfg.solver;
    p["method"] = cfg.method;
    p["dense_cap"] = cfg.dense_cap;
    p["seed"] = cfg.seed;
    p["output_dir"] = cfg.output_dir;
    return p;
}

json versions() {
    json v;
    v["tasaki"] = kVersion;
    v["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                 "." + std::to_string(EIGEN_MINOR_VERSION);
    return v;
}

JumpSet config_jumps(const RunConfig& cfg, double alpha) {
    JumpSet jumps = build_jump_set(cfg.lattice.sites(), cfg.l, alpha, cfg.gamma);
    if (cfg.dephasing_gamma)
        jumps = merge(jumps, build_dephasing_set(cfg.lattice.sites(), *cfg.dephasing_gamma));
    return jumps;
}

void require_single_alpha(const RunConfig& cfg, const char* op) {
    if (cfg.sweep) throw ConfigError(std::string(op) + " requires a single alpha, not a sweep");
}

struct SolveResult {
    SteadyStateReport report;
    bool have_gap = false;
};

SolveResult solve_steady(const RunConfig& cfg, const Superoperator& sop) {
    SolveResult out;
    if (cfg.solver == "dense") {
        DenseOptions d;
        d.dense_cap = cfg.dense_cap;
        out.report = steady_state_dense(sop, d);
        out.have_gap = true;
    } else {
        out.report = steady_state_linear(sop);
        if (sop.N <= cfg.dense_cap) {
            DenseOptions d;
            d.dense_cap = cfg.dense_cap;
            out.report.gap = spectral_gap(sop, d);
            out.have_gap = true;
        }
    }
    return out;
}

}  // namespace

OutputBundle run_spectrum(const RunConfig& cfg) {
    validate_config(cfg);
    require_single_alpha(cfg, "run_spectrum");
    const int N = cfg.lattice.sites();

    const Eigen::MatrixXd H = build_tasaki(cfg.lattice);
    const Spectrum spec = eigendecompose(H);
    const Classification cls = classify_states(spec, cfg.lattice.v);
    const JumpSet jumps = build_jump_set(N, cfg.l, cfg.alpha, cfg.gamma);

    BundleWriter w(cfg.output_dir);

    std::vector<std::string> rows;
    rows.reserve(N);
    std::vector<char> is_loc(N, 0);
    for (const int idx : cls.localized_indices) is_loc[idx] = 1;
    for (int n = 0; n < N; ++n)
        rows.push_back(std::to_string(n + 1) + "," + fmt17(spec.energies(n)) + "," +
                       fmt17(cls.iprs(n)) + "," + std::to_string(int(is_loc[n])));
    w.table("spectrum.csv", "n,energy,ipr,is_localized", rows);

    rows.clear();
    for (int n = 0; n < N; ++n)
        rows.push_back(std::to_string(n + 1) + "," +
                       fmt17(in_phase_ratio(spec.states.col(n), cfg.l, jumps)));
    w.table("phase_profile.csv", "n,P_in", rows);

    // amplitude dumps for a few representative states: the first compact
    // localized state, the band boundary, and the top of the spectrum
    std::vector<int> pick{1, cfg.lattice.L, cfg.lattice.L + 1, cfg.lattice.L + 2, N};
    for (int& n : pick) n = std::min(std::max(n, 1), N);
    std::sort(pick.begin(), pick.end());
    pick.erase(std::unique(pick.begin(), pick.end()), pick.end());
    for (const int n : pick) {
        rows.clear();
        for (int j = 0; j < N; ++j)
            rows.push_back(std::to_string(j + 1) + "," + fmt17(spec.states(j, n - 1)));
        w.table("eigenstate_" + std::to_string(n) + ".csv", "j,amplitude", rows);
    }

    json m;
    m["operation"] = "spectrum";
    m["parameters"] = parameter_echo(cfg);
    int flat_count = 0;
    for (const char f : cls.flat_band_flag) flat_count += f;
    m["results"] = {{"localized_count", cls.localized_count},
                    {"flat_band_states", flat_count},
                    {"flat_band_condition", cfg.lattice.flat_band_condition()},
                    {"min_energy", spec.energies(0)},
                    {"max_energy", spec.energies(N - 1)}};
    m["versions"] = versions();
    if (cfg.gnuplot_hints)
        m["gnuplot"] = {{"spectrum.csv", "plot using 1:2 (energy), 1:3 (ipr)"},
                        {"phase_profile.csv", "plot using 1:2 with points"}};
    return w.finish(std::move(m));
}

OutputBundle run_steady(const RunConfig& cfg) {
    validate_config(cfg);
    require_single_alpha(cfg, "run_steady");
    const int N = cfg.lattice.sites();

    const Eigen::MatrixXd H = build_tasaki(cfg.lattice);
    const Spectrum spec = eigendecompose(H);
    const Classification cls = classify_states(spec, cfg.lattice.v);
    const JumpSet jumps = config_jumps(cfg, cfg.alpha);
    const Superoperator sop = assemble_liouvillian(H.cast<Complex>(), jumps);

    const SolveResult sol = solve_steady(cfg, sop);
    const Eigen::MatrixXcd rho_eig = eigenbasis_matrix(sol.report.state, spec);
    const double pl = localized_fraction(rho_eig, cls.localized_count);
    const Eigen::VectorXd sd = spatial_diagonal(sol.report.state);

    BundleWriter w(cfg.output_dir);

    std::vector<std::string> rows;
    rows.reserve(static_cast<size_t>(N) * N);
    for (int mrow = 0; mrow < N; ++mrow)
        for (int n = 0; n < N; ++n)
            rows.push_back(std::to_string(mrow + 1) + "," + std::to_string(n + 1) + "," +
                           fmt17(rho_eig(mrow, n).real()) + "," + fmt17(rho_eig(mrow, n).imag()));
    w.table("rho_eig.csv", "m,n,re,im", rows);

    rows.clear();
    for (int n = 0; n < N; ++n)
        rows.push_back(std::to_string(n + 1) + "," + fmt17(rho_eig(n, n).real()));
    w.table("eig_diag.csv", "n,rho_nn", rows);

    rows.clear();
    for (int j = 0; j < N; ++j) rows.push_back(std::to_string(j + 1) + "," + fmt17(sd(j)));
    w.table("spatial_diag.csv", "j,rho_jj", rows);

    const double gap_out = sol.have_gap ? sol.report.gap : std::numeric_limits<double>::quiet_NaN();
    w.table("scalars.csv", "P_l,residual,gap,zero_multiplicity",
            {fmt17(pl) + "," + fmt17(sol.report.residual) + "," + fmt17(gap_out) + "," +
             std::to_string(sol.report.zero_multiplicity)});

    if (cfg.export_liouvillian) {
        std::ostringstream coo;
        export_coo(sop.sparse, coo);
        w.raw("liouvillian_coo.txt", coo.str());
    }

    json m;
    m["operation"] = "steady";
    m["parameters"] = parameter_echo(cfg);
    json res = {{"P_l", pl},
                {"residual", sol.report.residual},
                {"zero_multiplicity", sol.report.zero_multiplicity},
                {"localized_count", cls.localized_count}};
    if (sol.have_gap) res["gap"] = sol.report.gap;
    else res["gap"] = nullptr;
    if (cfg.solver == "linear") {
        res["replaced_row"] = sol.report.replaced_row;
        res["attempts"] = sol.report.attempts;
    }
    m["results"] = std::move(res);
    m["versions"] = versions();
    if (cfg.gnuplot_hints)
        m["gnuplot"] = {{"eig_diag.csv", "plot using 1:2 with impulses"},
                        {"spatial_diag.csv", "plot using 1:2 with boxes"}};
    return w.finish(std::move(m));
}

OutputBundle run_sweep(const RunConfig& cfg) {
    validate_config(cfg);
    const int N = cfg.lattice.sites();
    const int P = cfg.sweep_points;

    const Eigen::MatrixXd H = build_tasaki(cfg.lattice);
    const Spectrum spec = eigendecompose(H);
    const Classification cls = classify_states(spec, cfg.lattice.v);
    const Eigen::MatrixXcd Hc = H.cast<Complex>();

    struct Slot {
        double alpha = 0.0;
        double pl = std::numeric_limits<double>::quiet_NaN();
        double residual = std::numeric_limits<double>::quiet_NaN();
        std::string error;
    };
    std::vector<Slot> slots(P);
    for (int i = 0; i < P; ++i) slots[i].alpha = kPi * i / (P - 1);

    parallel_slots(P, [&](int i) {
        try {
            const JumpSet jumps = config_jumps(cfg, slots[i].alpha);
            const Superoperator sop = assemble_liouvillian(Hc, jumps);
            const SolveResult sol = solve_steady(cfg, sop);
            const Eigen::MatrixXcd rho_eig = eigenbasis_matrix(sol.report.state, spec);
            slots[i].pl = localized_fraction(rho_eig, cls.localized_count);
            slots[i].residual = sol.report.residual;
        } catch (const std::exception& e) {
            slots[i].error = e.what();
        }
    });

    BundleWriter w(cfg.output_dir);
    std::vector<std::string> rows;
    rows.reserve(P);
    json failures = json::array();
    for (int i = 0; i < P; ++i) {
        rows.push_back(fmt17(slots[i].alpha) + "," + fmt17(slots[i].pl) + "," +
                       fmt17(slots[i].residual));
        if (!slots[i].error.empty())
            failures.push_back({{"alpha", slots[i].alpha}, {"error", slots[i].error}});
    }
    w.table("pl_vs_alpha.csv", "alpha,P_l,residual", rows);

    json m;
    m["operation"] = "sweep";
    m["parameters"] = parameter_echo(cfg);
    m["results"] = {{"points", P}, {"failed_points", failures}, {"N", N}};
    m["versions"] = versions();
    if (cfg.gnuplot_hints) m["gnuplot"] = {{"pl_vs_alpha.csv", "plot using 1:2 with linespoints"}};
    return w.finish(std::move(m));
}

OutputBundle run_dynamics(const RunConfig& cfg) {
    validate_config(cfg);
    require_single_alpha(cfg, "run_dynamics");
    const int N = cfg.lattice.sites();

    const Eigen::MatrixXd H = build_tasaki(cfg.lattice);
    const Spectrum spec = eigendecompose(H);
    const JumpSet jumps = config_jumps(cfg, cfg.alpha);
    const Eigen::MatrixXcd Hc = H.cast<Complex>();

    std::vector<int> indices = cfg.dynamics.initial_state_indices;
    const bool mapped = indices.empty();
    if (mapped) indices = default_initial_indices(N);

    double t_max = cfg.dynamics.t_max;
    std::optional<double> gap_used;
    if (t_max <= 0.0) {
        if (N <= cfg.dense_cap) {
            const Superoperator sop = assemble_liouvillian(Hc, jumps);
            DenseOptions d;
            d.dense_cap = cfg.dense_cap;
            const double gap = spectral_gap(sop, d);
            if (gap > 0.0) {
                t_max = 10.0 / gap;
                gap_used = gap;
            }
        }
        if (t_max <= 0.0) t_max = 50.0 / cfg.gamma;
    }

    const int T = cfg.dynamics.n_points;
    std::vector<double> grid(T);
    for (int i = 0; i < T; ++i) grid[i] = t_max * i / (T - 1);
    const std::vector<double> targets(grid.begin() + 1, grid.end());  // evolve records t > 0

    const EvolveMethod method = parse_method(cfg.method);
    const int K = static_cast<int>(indices.size());

    struct Slot {
        std::vector<double> fid;
        std::vector<double> trace_err, herm_err, min_eig;
        int reached = 0;  // grid points recorded (including t = 0)
        std::string error;
        double last_valid = 0.0;
    };
    std::vector<Slot> slots(K);

    parallel_slots(K, [&](int k) {
        Slot& s = slots[k];
        const Eigen::VectorXd psi = spec.states.col(indices[k] - 1);
        const Eigen::MatrixXcd rho0 = (psi * psi.transpose()).cast<Complex>();
        // invariants are captured here rather than read off the returned record
        // so every series stays aligned when the integrator aborts partway
        auto capture = [&](double t, const DensityMatrix& rho) {
            s.fid.push_back(fidelity(rho, rho0));
            s.trace_err.push_back(std::abs(rho.trace() - Complex(1.0, 0.0)));
            s.herm_err.push_back((rho - rho.adjoint().eval()).cwiseAbs().maxCoeff());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint().eval()),
                                                               Eigen::EigenvaluesOnly);
            s.min_eig.push_back(es.eigenvalues().minCoeff());
            s.last_valid = t;
        };
        capture(0.0, rho0);
        EvolveOptions opt;
        opt.dense_cap = cfg.dense_cap;
        opt.retain_states = false;
        try {
            evolve(Hc, jumps, rho0, targets, method, opt, capture);
        } catch (const IntegratorError& e) {
            s.error = e.what();
            s.last_valid = e.last_valid_time;
        } catch (const std::exception& e) {
            s.error = e.what();
        }
        s.reached = static_cast<int>(s.fid.size());
    });

    BundleWriter w(cfg.output_dir);

    std::vector<std::string> rows;
    for (int k = 0; k < K; ++k)
        for (int i = 0; i < slots[k].reached; ++i)
            rows.push_back(fmt17(grid[i]) + "," + std::to_string(indices[k]) + "," +
                           fmt17(slots[k].fid[i]));
    w.table("fidelity.csv", "t,index,F", rows);

    // invariant envelope across trajectories: worst case at each time point
    rows.clear();
    for (int i = 0; i < T; ++i) {
        double te = 0.0, he = 0.0, me = std::numeric_limits<double>::infinity();
        bool any = false;
        for (int k = 0; k < K; ++k) {
            if (i >= slots[k].reached) continue;
            any = true;
            te = std::max(te, slots[k].trace_err[i]);
            he = std::max(he, slots[k].herm_err[i]);
            me = std::min(me, slots[k].min_eig[i]);
        }
        if (!any) break;
        rows.push_back(fmt17(grid[i]) + "," + fmt17(te) + "," + fmt17(me) + "," + fmt17(he));
    }
    w.table("invariants.csv", "t,trace_err,min_eig,herm_err", rows);

    json m;
    m["operation"] = "dynamics";
    m["parameters"] = parameter_echo(cfg);
    json mapping = json::array();
    static const char* roles[3] = {"localized-region", "mid-spectrum", "top-of-spectrum"};
    for (int k = 0; k < K; ++k) {
        json entry = {{"index", indices[k]}};
        if (mapped && k < 3) entry["role"] = roles[k];
        mapping.push_back(std::move(entry));
    }
    json failures = json::array();
    for (int k = 0; k < K; ++k)
        if (!slots[k].error.empty())
            failures.push_back({{"index", indices[k]},
                                {"error", slots[k].error},
                                {"last_valid_time", slots[k].last_valid}});
    m["results"] = {{"t_max", t_max},
                    {"n_points", T},
                    {"gap_used", gap_used ? json(*gap_used) : json(nullptr)},
                    {"initial_state_mapping", std::move(mapping)},
                    {"failures", std::move(failures)}};
    m["versions"] = versions();
    if (cfg.gnuplot_hints)
        m["gnuplot"] = {{"fidelity.csv", "plot using 1:3 grouped by column 2"},
                        {"invariants.csv", "plot using 1:2, 1:3, 1:4 on log scale"}};
    return w.finish(std::move(m));
}

}  // namespace tasaki
