#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hcbf/filter.hpp"
#include "hcbf/sim.hpp"

namespace hcbf::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRunFailure = 2;
inline constexpr int kExitOracleGap = 3;

/// Default output directory: --out flag, else $HCBF_OUT_DIR, else "out".
std::string resolve_out_dir(const std::string& flag_value);

struct RunOptions {
    std::string scenario_path;
    std::optional<std::string> mode;  // overrides the scenario file
    std::string out_dir;
    bool svg = true;
};

struct RunArtifacts {
    std::string csv_path;
    std::string metrics_path;
    std::vector<std::string> svg_paths;
    RunStatus status = RunStatus::Success;
};

/// Runs one scenario and writes trajectory.csv, metrics.json and the SVG set.
RunArtifacts cmd_run(const RunOptions& options);

struct CompareOptions {
    std::string scenario_path;
    std::string out_dir;
    bool svg = true;
};

struct CompareArtifacts {
    RunArtifacts least_restrictive;
    RunArtifacts orthogonal;
    std::string table_path;
    std::vector<std::string> overlay_svg_paths;
    std::string table_text;  // also printed by the CLI
};

/// Runs both modes on one scenario (concurrently) and emits side-by-side
/// metrics plus overlay plots.
CompareArtifacts cmd_compare(const CompareOptions& options);

struct FitSupportOptions {
    std::string shape_path;
    int n_terms = 16;
    int grid = 720;
    std::string out_dir;
    bool svg = true;
};

struct FitSupportArtifacts {
    std::string report_path;
    std::optional<std::string> svg_path;
    double margin = 0.0;
    double max_residual = 0.0;
    bool conservative = false;
};

FitSupportArtifacts cmd_fit_support(const FitSupportOptions& options);

struct OracleCheckOptions {
    std::uint64_t seed = 2025;
    int count = 100;
    std::string out_dir;
};

struct OracleCheckReport {
    int count = 0;
    int compared = 0;
    double max_gap = 0.0;
    bool pass = true;
    std::string report_path;
};

/// Instance i derives its stream from splitmix64(seed + i * golden ratio), so
/// a (seed, count) pair names a reproducible corpus.
OracleCheckReport cmd_oracle_check(const OracleCheckOptions& options);

struct OracleInstance {
    AgentState agent;
    std::vector<FilterObstacle> obstacles;
    Vec2 u_des;
    FilterConfig config;
    Limits limits;
};

/// The oracle-check instance generator, exposed for regression tests: one
/// obstacle placed in an annulus around the agent wide enough to keep the
/// initial state feasible.
OracleInstance make_oracle_instance(std::uint64_t seed);

}  // namespace hcbf::cli
