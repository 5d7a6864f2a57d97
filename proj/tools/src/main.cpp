#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "scenario_io.hpp"

using namespace hcbf::cli;

int main(int argc, char** argv) {
    CLI::App app{"hcbf: least-restrictive hyperplane CBF safety filter and simulator"};
    app.require_subcommand(1);

    std::string scenario_path, shape_path, out_flag, mode;
    bool svg = true;
    int n_terms = 16, grid = 720, count = 100;
    std::uint64_t seed = 2025;

    CLI::App* run = app.add_subcommand("run", "simulate one scenario file");
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--mode", mode,
                    "orthogonal | least-restrictive | fixed-theta (overrides the file)");
    run->add_option("--out", out_flag, "output directory (default $HCBF_OUT_DIR or ./out)");
    run->add_flag("--svg,!--no-svg", svg, "emit SVG plots (default on)");

    CLI::App* compare =
        app.add_subcommand("compare", "run both CBF modes and tabulate the metrics");
    compare->add_option("scenario", scenario_path, "scenario JSON file")->required();
    compare->add_option("--out", out_flag, "output directory");
    compare->add_flag("--svg,!--no-svg", svg, "emit SVG plots (default on)");

    CLI::App* fit = app.add_subcommand("fit-support",
                                       "fit a Fourier support model to a shape file");
    fit->add_option("shape", shape_path, "shape JSON file")->required();
    fit->add_option("--n-terms", n_terms, "Fourier terms (default 16)");
    fit->add_option("--grid", grid, "fit grid resolution (default 720)");
    fit->add_option("--out", out_flag, "output directory");
    fit->add_flag("--svg,!--no-svg", svg, "emit the polar plot (default on)");

    CLI::App* oracle = app.add_subcommand(
        "oracle-check", "compare the joint optimizer against the brute-force oracle");
    oracle->add_option("--seed", seed, "base seed (default 2025)");
    oracle->add_option("--count", count, "instance count (default 100)");
    oracle->add_option("--out", out_flag, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (run->parsed()) {
            RunOptions options;
            options.scenario_path = scenario_path;
            if (!mode.empty()) options.mode = mode;
            options.out_dir = resolve_out_dir(out_flag);
            options.svg = svg;
            const RunArtifacts artifacts = cmd_run(options);
            std::printf("trajectory: %s\nmetrics:    %s\n", artifacts.csv_path.c_str(),
                        artifacts.metrics_path.c_str());
            if (artifacts.status != hcbf::RunStatus::Success) {
                std::fprintf(stderr, "run failed: see %s\n", artifacts.metrics_path.c_str());
                return kExitRunFailure;
            }
            return kExitOk;
        }
        if (compare->parsed()) {
            CompareOptions options;
            options.scenario_path = scenario_path;
            options.out_dir = resolve_out_dir(out_flag);
            options.svg = svg;
            const CompareArtifacts artifacts = cmd_compare(options);
            std::printf("%s", artifacts.table_text.c_str());
            std::printf("details: %s\n", artifacts.table_path.c_str());
            if (artifacts.least_restrictive.status != hcbf::RunStatus::Success ||
                artifacts.orthogonal.status != hcbf::RunStatus::Success) {
                return kExitRunFailure;
            }
            return kExitOk;
        }
        if (fit->parsed()) {
            FitSupportOptions options;
            options.shape_path = shape_path;
            options.n_terms = n_terms;
            options.grid = grid;
            options.out_dir = resolve_out_dir(out_flag);
            options.svg = svg;
            const FitSupportArtifacts artifacts = cmd_fit_support(options);
            std::printf("report: %s\nmargin: %.6g  max residual: %.6g  conservative: %s\n",
                        artifacts.report_path.c_str(), artifacts.margin,
                        artifacts.max_residual, artifacts.conservative ? "yes" : "no");
            return kExitOk;
        }
        if (oracle->parsed()) {
            OracleCheckOptions options;
            options.seed = seed;
            options.count = count;
            options.out_dir = resolve_out_dir(out_flag);
            const OracleCheckReport report = cmd_oracle_check(options);
            std::printf("instances: %d  compared: %d  max gap: %.3e  %s\n", report.count,
                        report.compared, report.max_gap, report.pass ? "PASS" : "FAIL");
            std::printf("report: %s\n", report.report_path.c_str());
            return report.pass ? kExitOk : kExitOracleGap;
        }
    } catch (const ScenarioError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
    return kExitValidation;
}
