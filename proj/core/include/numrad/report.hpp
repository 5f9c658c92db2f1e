#pragma once

// CheckReport serialization: JSONL (one object per line) and CSV.
//
// JSON fields, in order: entry_id, operand_digest, params, chain_values, slack,
// holds, tolerance, elapsed_s, status. params holds the variant, t and theta
// when present, and the campaign tag (family, dim, sample) when given.
// elapsed_s is the only field that differs between identical runs.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "numrad/registry.hpp"

namespace numrad {

/// Where a report came from inside a campaign.
struct SampleTag {
    std::string family;
    int dim = 0;
    std::uint64_t sample = 0;
};

enum class ReportFormat { jsonl, csv };

/// Throws ConfigError for anything but "jsonl" or "csv".
ReportFormat parse_report_format(std::string_view text);
std::string_view to_string(ReportFormat format);

/// One JSON object, no trailing newline.
std::string report_to_json(const CheckReport& report, const std::optional<SampleTag>& tag = std::nullopt);

/// CSV header row (no newline). chain_values are joined with ';'.
std::string csv_header();
std::string report_to_csv(const CheckReport& report, const std::optional<SampleTag>& tag = std::nullopt);

/// Writes one line in the given format.
void write_report(std::ostream& out, ReportFormat format, const CheckReport& report,
                  const std::optional<SampleTag>& tag = std::nullopt);

} // namespace numrad
