#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uhuopm/measures.hpp"
#include "uhuopm/model.hpp"

namespace uhuopm
{

enum class OutputFormat
{
    Text,
    Csv,
    Json,
};

std::optional<OutputFormat> parse_output_format(std::string_view name);

/// Four decimals, ties to even.
std::string format_fixed4(double value);

/// Writes one record per line with each pattern's items listed in ≺ order;
/// lines are sorted by that item sequence. Text lines look like
/// "b c #SUP: 3 #PRO: 1.4500 #UO: 0.6554".
void write_patterns(const std::vector<PhuopRecord>& records, const UncertainDatabase& db, const TotalOrder& order,
                    OutputFormat format, std::ostream& out);

/// key=value lines.
void write_stats(const MiningStats& stats, std::ostream& out);

struct DatabaseSummary
{
    std::size_t transactions = 0;
    std::size_t items = 0;
    std::size_t min_length = 0;
    double avg_length = 0.0;
    std::size_t max_length = 0;
    double total_utility = 0.0;
    double density = 0.0; ///< avg_length / items
};

DatabaseSummary summarize(const UncertainDatabase& db);
void write_summary(const DatabaseSummary& summary, std::ostream& out);

} // namespace uhuopm
