// numrad: verification campaigns, single-matrix bounds, rotation sweeps.
//
// Exit codes: 0 completed without violations, 1 completed with violations (or
// an evaluation failed), 2 usage, config or parse error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "numrad/campaign.hpp"
#include "numrad/errors.hpp"
#include "numrad/matrix_io.hpp"
#include "numrad/numrange.hpp"

namespace {

constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;

struct VerifyFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    std::optional<std::string> dims;
    std::optional<std::string> entries;
    std::optional<double> tol_abs;
    std::optional<double> tol_rel;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<int> jobs;
    std::optional<int> theta_grid;
};

int run_verify(const VerifyFlags& f) {
    numrad::CampaignConfig config = f.config.empty() ? numrad::CampaignConfig{} : numrad::load_campaign_config(f.config);
    if (f.seed) config.seed = *f.seed;
    if (f.samples) config.samples_per_family = *f.samples;
    if (f.dims) config.dims = numrad::parse_dim_range(*f.dims);
    if (f.entries) config.entries = numrad::parse_entry_list(*f.entries);
    if (f.tol_abs) config.tolerance.atol = *f.tol_abs;
    if (f.tol_rel) config.tolerance.rtol = *f.tol_rel;
    if (f.out) config.out_path = *f.out;
    if (f.format) config.format = numrad::parse_report_format(*f.format);
    if (f.jobs) config.jobs = *f.jobs;
    if (f.theta_grid) config.theta_grid = *f.theta_grid;
    numrad::validate(config);

    std::cerr << "numrad verify: " << config.families.size() << " families x " << config.samples_per_family
              << " samples, jobs " << config.jobs << '\n';
    const numrad::CampaignReport report = numrad::run_campaign(config);
    std::cout << numrad::campaign_summary_json(report) << '\n';
    std::cerr << "numrad verify: " << report.reports << " reports, " << report.violations << " violations, "
              << report.elapsed_s << " s\n";
    return report.exit_code();
}

int run_bounds(const std::string& path) {
    const numrad::ComplexMatrix t = numrad::read_matrix_file(path);
    const numrad::BoundsResult result = numrad::bounds_report(t);
    std::cout << result.json << '\n';
    return result.violations == 0 ? 0 : kExitViolations;
}

int run_sweep(const std::string& path, int grid) {
    const numrad::ComplexMatrix t = numrad::read_matrix_file(path);
    numrad::write_sweep_csv(std::cout, numrad::sweep_export(t, grid));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical radius toolkit"};
    app.require_subcommand(1);

    VerifyFlags vf;
    auto* verify = app.add_subcommand("verify", "Run a verification campaign over the inequality catalog");
    verify->add_option("--config", vf.config, "Campaign config JSON file");
    verify->add_option("--seed", vf.seed, "Campaign seed");
    verify->add_option("--samples", vf.samples, "Samples per family");
    verify->add_option("--dims", vf.dims, "Dimension range a..b");
    verify->add_option("--entries", vf.entries, "Comma-separated entry ids");
    verify->add_option("--tol-abs", vf.tol_abs, "Absolute tolerance");
    verify->add_option("--tol-rel", vf.tol_rel, "Relative tolerance");
    verify->add_option("--out", vf.out, "Report output path");
    verify->add_option("--format", vf.format, "Report format: jsonl or csv");
    verify->add_option("--jobs", vf.jobs, "Worker threads");
    verify->add_option("--theta-grid", vf.theta_grid, "Points in the theta grid");

    std::string bounds_path;
    auto* bounds = app.add_subcommand("bounds", "Print every quantity and single-operand chain for a matrix");
    bounds->add_option("--matrix", bounds_path, "Matrix JSON file")->required();

    std::string sweep_path;
    int grid = 1024;
    auto* sweep = app.add_subcommand("sweep", "Export the rotation function as CSV");
    sweep->add_option("--matrix", sweep_path, "Matrix JSON file")->required();
    sweep->add_option("--grid", grid, "Number of theta samples")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*verify) return run_verify(vf);
        if (*bounds) return run_bounds(bounds_path);
        if (*sweep) return run_sweep(sweep_path, grid);
    } catch (const numrad::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const numrad::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const numrad::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitViolations;
    }
    return kExitUsage;
}
