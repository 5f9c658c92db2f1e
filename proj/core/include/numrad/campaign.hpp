#pragma once

// Verification campaigns over the catalog, and the single-matrix front-ends
// behind the `bounds` and `sweep` commands.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "numrad/numrange.hpp"
#include "numrad/registry.hpp"
#include "numrad/report.hpp"
#include "numrad/sampler.hpp"

namespace numrad {

/// The ten base families plus scaled(ginibre,100).
std::vector<Family> default_campaign_families();

/// Every field has a default; a config file may set any subset.
///
/// Sample i of a family has dimension dims[i % dims.size()], so
/// samples_per_family counts samples across all dimensions.
struct CampaignConfig {
    std::uint64_t seed = 1;
    int samples_per_family = 1000;
    std::vector<int> dims{2, 3, 4, 5, 6, 7, 8};
    std::vector<Family> families = default_campaign_families();
    std::vector<std::string> entries; // empty: every catalog entry
    /// Closed t grid; its interior points form the open grid. Empty: defaults.
    std::vector<double> t_grid;
    int theta_grid = 360;
    /// The quadruple entry runs on the first quadruple_samples samples of each family.
    int quadruple_samples = 100;
    TolerancePolicy tolerance{};
    std::string out_path; // empty: reports are not written
    ReportFormat format = ReportFormat::jsonl;
    int jobs = 1;
};

/// Parses a config document. Keys: seed, samples_per_family, dims (list or
/// "a..b"), families, entries (list or comma-separated string), t_grid,
/// theta_grid, quadruple_samples, atol, rtol, out, format, jobs. Unknown keys
/// and ill-typed values raise ConfigError; the result is validated.
CampaignConfig parse_campaign_config(std::string_view json_text);

/// Reads and parses a config file; I/O failures raise ConfigError naming the path.
CampaignConfig load_campaign_config(const std::filesystem::path& path);

/// Throws ConfigError when dims leave [1,32], an entry id is unknown, a count
/// is negative, a t value leaves [0,1], or a tolerance is negative.
void validate(const CampaignConfig& config);

/// "2..8" -> {2, ..., 8}; a single integer is a one-element range. Throws ConfigError.
std::vector<int> parse_dim_range(std::string_view text);

/// "E01,E02" -> {"E01", "E02"}. Throws ConfigError on empty items.
std::vector<std::string> parse_entry_list(std::string_view text);

/// Config echo as JSON.
std::string config_to_json(const CampaignConfig& config);

struct EntryStats {
    std::string entry_id;
    std::size_t count = 0; // evaluated (non-skipped) reports
    std::size_t violations = 0;
    std::size_t skips = 0;
    std::optional<double> min_slack;
    std::optional<double> median_slack;
};

struct Violation {
    CheckReport report;
    SampleTag tag;
};

struct CampaignReport {
    CampaignConfig config;
    std::vector<EntryStats> entries; // catalog order, selected entries only
    std::size_t samples = 0;
    std::size_t reports = 0;
    std::size_t violations = 0;
    std::size_t skips = 0;
    double elapsed_s = 0.0;
    std::vector<Violation> violation_details;

    int exit_code() const { return violations == 0 ? 0 : 1; }
};

/// Called after each sample's reports are consumed. An exception thrown from
/// it stops the campaign and propagates out of run_campaign.
using CampaignProgress = std::function<void(std::size_t done, std::size_t total)>;

/// Runs the campaign. Reports are streamed to `out` when given, otherwise to
/// config.out_path when set, in (family, dim, sample, entry) order whatever
/// config.jobs is. Violations never stop the run. Evaluation failures raise
/// Error naming the entry and sample.
CampaignReport run_campaign(const CampaignConfig& config, std::ostream* out = nullptr,
                            const CampaignProgress& progress = {});

/// Summary document printed by `verify`.
std::string campaign_summary_json(const CampaignReport& report);

/// Every quantity of `bounds` for one matrix as a JSON document, plus the
/// number of failed chains.
struct BoundsResult {
    std::string json;
    std::size_t violations = 0;
};

BoundsResult bounds_report(const ComplexMatrix& t, const EvalSettings& settings = {});

/// Rotation samples on `grid_size` points (any size >= 1) with the refined
/// omega in place of the sampled maximum.
AngleSweep sweep_export(const ComplexMatrix& t, int grid_size);

} // namespace numrad
