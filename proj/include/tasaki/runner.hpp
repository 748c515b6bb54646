#pragma once

#include "tasaki/errors.hpp"
#include "tasaki/lattice.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tasaki {

struct DynamicsSettings {
    std::vector<int> initial_state_indices;  // 1-based eigenstate indices; empty = default mapping
    double t_max = -1.0;                     // <= 0: 10/gap when the gap is computable, else 50/gamma
    int n_points = 201;
};

struct RunConfig {
    LatticeSpec lattice{30, std::sqrt(2.0), 1.0};
    int l = 1;
    double alpha = 0.0;
    bool sweep = false;      // exactly one of single alpha / sweep grid
    int sweep_points = 33;   // uniform grid on [0, pi]
    double gamma = 1.0;
    std::optional<double> dephasing_gamma;
    std::string solver = "linear";       // linear | dense
    std::string method = "adaptive_rk";  // adaptive_rk | krylov_expm | dense_expm
    DynamicsSettings dynamics;
    std::string output_dir = "out";
    unsigned long seed = 0;  // echoed into the manifest; randomized tests only
    int dense_cap = 40;
    bool export_liouvillian = false;
    bool retain_states = false;
    bool gnuplot_hints = false;
};

// flat "key = value" lines, # comments; unknown keys and malformed values are
// ConfigError. Alpha values accept plain numbers plus the forms "pi", "<x>pi",
// and "pi/<d>".
RunConfig load_config(const std::string& path);
void validate_config(const RunConfig& cfg);  // throws ConfigError

// "pi", "0.75pi", "pi/2", or a plain number in radians
double parse_alpha(const std::string& raw);

struct OutputBundle {
    std::filesystem::path dir;
    std::vector<std::string> tables;
    std::string manifest_json;  // identical to <dir>/manifest.json
};

OutputBundle run_spectrum(const RunConfig& cfg);
OutputBundle run_steady(const RunConfig& cfg);
OutputBundle run_sweep(const RunConfig& cfg);
OutputBundle run_dynamics(const RunConfig& cfg);

// TASAKI_WORKERS environment variable, default 1
int worker_count();

// proportional analog of the figure indices {20, 61, 121} quoted at N = 121
std::vector<int> default_initial_indices(int N);

}  // namespace tasaki
