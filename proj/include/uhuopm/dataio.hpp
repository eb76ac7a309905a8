#pragma once

// Text formats.
//
// Transactions, one per line:   item:quantity:probability [SP item:quantity:probability]...
// Unit utilities, one per line: item SP unit-utility
//
// item = [A-Za-z0-9_]+, quantity is a positive decimal integer, probability a
// decimal in (0, 1]. Lines starting with '#' are comments, blank lines are
// skipped, LF or CRLF endings are accepted and LF is written. Tids are
// implicit: the n-th transaction line is T_n.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "uhuopm/model.hpp"

namespace uhuopm
{

/// Parses a utility table. `source` names the stream in error messages.
UtilityTable parse_utility_table(std::istream& in, const std::string& source = "utility");

/// Parses transactions against a utility table. Throws ParseError (bad
/// syntax or duplicate item), RangeError (quantity 0, probability outside
/// (0,1]) or MissingUtility (item absent from the table).
UncertainDatabase parse_transactions(std::istream& in, UtilityTable utilities,
                                     const std::string& source = "transactions");

UncertainDatabase parse_database(std::istream& transactions, std::istream& utilities);
UncertainDatabase parse_database(std::string_view transactions, std::string_view utilities);

/// Reads both files; a missing or unreadable file raises Error naming the path.
UncertainDatabase load_database(const std::filesystem::path& transactions, const std::filesystem::path& utilities);

/// Shortest decimal that reads back to the same double, without exponent.
std::string format_number(double value);

void write_transactions(const UncertainDatabase& db, std::ostream& out);
void write_utility_table(const UtilityTable& table, std::ostream& out);

struct DatabaseText
{
    std::string transactions;
    std::string utilities;

    friend bool operator==(const DatabaseText&, const DatabaseText&) = default;
};

DatabaseText write_database(const UncertainDatabase& db);
void save_database(const UncertainDatabase& db, const std::filesystem::path& transactions,
                   const std::filesystem::path& utilities);

struct GeneratorConfig
{
    std::uint64_t seed = 1;
    std::uint32_t num_transactions = 1000;
    std::uint32_t num_items = 100;
    double avg_transaction_length = 8.0;
    std::uint32_t max_quantity = 5;
    std::uint32_t max_unit_utility = 100;
    double prob_min = 0.5;
    double prob_max = 1.0;
    /// Exponent of the Zipf-like item popularity (0 means uniform).
    double popularity_skew = 1.0;

    /// Throws InvalidArgument when inconsistent.
    void check() const;
};

/// Synthetic database, deterministic in the whole config. Items are labelled
/// 1..num_items; every item gets a unit utility even if it never occurs.
UncertainDatabase generate(const GeneratorConfig& config);

/// Attaches quantities, probabilities and unit utilities to a plain
/// transaction file (whitespace-separated item tokens per line). Repeated
/// items on a line are merged and their quantities summed. Only the
/// quantity, utility and probability fields and the seed of `config` are used.
UncertainDatabase augment(std::istream& plain, const GeneratorConfig& config, const std::string& source = "plain");

} // namespace uhuopm
