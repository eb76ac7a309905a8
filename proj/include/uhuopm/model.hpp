#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uhuopm
{

/// Tolerance for every floating-point threshold comparison.
inline constexpr double kTolerance = 1e-9;

/// x >= threshold, allowing for accumulated rounding error.
inline bool reaches(double x, double threshold) noexcept
{
    return x >= threshold - kTolerance;
}

/// Total order on item labels. All-digit labels come first and compare
/// numerically (so "9" < "10"); the remaining labels follow in plain
/// lexicographic order.
struct ItemLess
{
    using is_transparent = void;
    bool operator()(std::string_view lhs, std::string_view rhs) const noexcept;
};

/// Dense index of an item inside one database. Ids follow ItemLess order of
/// the labels, so comparing ids compares labels.
using ItemId = std::uint32_t;

class UtilityTable
{
public:
    UtilityTable() = default;
    UtilityTable(std::initializer_list<std::pair<const std::string, double>> entries);

    /// Inserts or overwrites.
    void set(std::string item, double unit_utility);
    std::optional<double> find(std::string_view item) const;
    bool contains(std::string_view item) const { return entries_.find(item) != entries_.end(); }
    std::size_t size() const noexcept { return entries_.size(); }

    const std::map<std::string, double, ItemLess>& entries() const noexcept { return entries_; }

    friend bool operator==(const UtilityTable&, const UtilityTable&) = default;

private:
    std::map<std::string, double, ItemLess> entries_;
};

struct ItemOccurrence
{
    ItemId item = 0;
    std::uint32_t quantity = 0;
    double probability = 0.0;

    friend bool operator==(const ItemOccurrence&, const ItemOccurrence&) = default;
};

struct Transaction
{
    std::uint32_t tid = 0; ///< 1-based position in the database
    std::vector<ItemOccurrence> occurrences;
    double tu = 0.0;

    const ItemOccurrence* find(ItemId item) const noexcept;

    friend bool operator==(const Transaction&, const Transaction&) = default;
};

/// Label-based description of one transaction, used to assemble a database.
struct OccurrenceSpec
{
    std::string item;
    std::uint32_t quantity = 1;
    double probability = 1.0;
};

struct TransactionSpec
{
    std::vector<OccurrenceSpec> occurrences;
    /// Stored transaction utility; recomputed from the utility table when absent.
    std::optional<double> tu;
};

/// Immutable uncertain quantitative database.
///
/// The item universe is the set of labels that occur in at least one
/// transaction, indexed by ItemId in ItemLess order. The utility table may
/// hold additional entries. Assembly never rejects data that breaks the
/// model's invariants; use validate_database() to find such problems.
class UncertainDatabase
{
public:
    UncertainDatabase() = default;

    static UncertainDatabase assemble(std::vector<TransactionSpec> transactions, UtilityTable utilities);

    std::size_t size() const noexcept { return transactions_.size(); }
    bool empty() const noexcept { return transactions_.empty(); }

    const std::vector<Transaction>& transactions() const noexcept { return transactions_; }
    /// tid is 1-based.
    const Transaction& transaction(std::uint32_t tid) const;

    std::size_t item_count() const noexcept { return labels_.size(); }
    const std::vector<std::string>& item_labels() const noexcept { return labels_; }
    const std::string& label(ItemId id) const { return labels_.at(id); }
    std::optional<ItemId> find_item(std::string_view label) const;

    const UtilityTable& utility_table() const noexcept { return utilities_; }
    /// Unit utility of a universe item; NaN when the table has no entry.
    double unit_utility(ItemId id) const { return unit_utility_.at(id); }

    /// Σ quantity × unit utility over the transaction's occurrences.
    double recompute_tu(const Transaction& t) const;

    friend bool operator==(const UncertainDatabase& a, const UncertainDatabase& b)
    {
        return a.labels_ == b.labels_ && a.transactions_ == b.transactions_ && a.utilities_ == b.utilities_;
    }

private:
    std::vector<std::string> labels_;
    std::vector<double> unit_utility_;
    std::vector<Transaction> transactions_;
    UtilityTable utilities_;
};

struct Violation
{
    enum class Kind
    {
        ProbabilityOutOfRange,
        QuantityOutOfRange,
        MissingUtility,
        NegativeUtility,
        DuplicateItem,
        TuMismatch,
        NonPositiveTu,
        TidOutOfSequence,
    };

    Kind kind;
    std::uint32_t tid = 0; ///< 0 when the violation is not tied to a transaction
    std::string item;      ///< empty when not tied to an item
    std::string message;
};

std::string_view to_string(Violation::Kind kind) noexcept;

/// Every invariant violation in the database; empty means valid.
std::vector<Violation> validate_database(const UncertainDatabase& db);

struct Thresholds
{
    double alpha = 0.0; ///< minimum support, fraction of |D|, in (0, 1]
    double beta = 0.0;  ///< minimum average utility occupancy, in (0, 1]
    double gamma = 0.0; ///< minimum probability mass, fraction of |D|, in [0, 1]

    /// Throws InvalidArgument when a value is out of range.
    void check() const;

    /// ceil(alpha × |D|), at least 1.
    std::uint32_t min_support_count(std::size_t db_size) const noexcept;
    double min_probability(std::size_t db_size) const noexcept { return gamma * static_cast<double>(db_size); }
};

/// A non-empty set of item labels, stored sorted by ItemLess so equality and
/// hashing do not depend on insertion order.
class Pattern
{
public:
    Pattern() = default;
    /// Throws InvalidArgument on duplicate labels.
    explicit Pattern(std::vector<std::string> items);
    Pattern(std::initializer_list<std::string> items) : Pattern(std::vector<std::string>(items)) {}

    const std::vector<std::string>& items() const noexcept { return items_; }
    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    bool contains(std::string_view item) const;

    std::string to_string() const;

    friend bool operator==(const Pattern&, const Pattern&) = default;
    /// Lexicographic over the item sequence using ItemLess.
    friend bool operator<(const Pattern& a, const Pattern& b);

private:
    std::vector<std::string> items_;
};

struct PhuopRecord
{
    Pattern pattern;
    std::uint32_t support = 0;
    double probability = 0.0;
    double utility_occupancy = 0.0;
};

struct MiningStats
{
    std::uint64_t visited_nodes = 0;
    std::uint64_t constructed_lists = 0;
    std::uint64_t candidate_joins = 0;
    std::uint64_t patterns_found = 0;
    std::chrono::nanoseconds elapsed{0};

    MiningStats& operator+=(const MiningStats& other) noexcept;
};

} // namespace uhuopm

template <>
struct std::hash<uhuopm::Pattern>
{
    std::size_t operator()(const uhuopm::Pattern& p) const noexcept;
};
