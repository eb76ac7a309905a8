#pragma once

// Direct-from-database measures. Everything here scans the transactions and
// never touches the list structures, so it can serve as ground truth for the
// miner.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "uhuopm/model.hpp"

namespace uhuopm
{

/// Mining order ≺: ascending support count, ties by ascending item id.
class TotalOrder
{
public:
    static constexpr int kUnranked = -1;

    TotalOrder() = default;
    TotalOrder(std::size_t universe_size, std::vector<ItemId> ordered_items);

    /// Items sorted by rank.
    const std::vector<ItemId>& ordered_items() const noexcept { return ordered_; }
    std::size_t size() const noexcept { return ordered_.size(); }
    /// kUnranked for items outside the ordered set.
    int rank(ItemId id) const noexcept { return id < rank_.size() ? rank_[id] : kUnranked; }
    bool ranked(ItemId id) const noexcept { return rank(id) != kUnranked; }

    std::vector<std::string> labels(const UncertainDatabase& db) const;

private:
    std::vector<int> rank_;
    std::vector<ItemId> ordered_;
};

/// Support count of every universe item, indexed by ItemId.
std::vector<std::uint32_t> item_supports(const UncertainDatabase& db);

TotalOrder total_order(const UncertainDatabase& db, std::span<const ItemId> promising);
/// Order over the whole item universe.
TotalOrder total_order(const UncertainDatabase& db);

std::uint32_t support_count(const Pattern& x, const UncertainDatabase& db);
double utility(const Pattern& x, const UncertainDatabase& db);
/// Throws UndefinedMeasure when x has no supporting transaction.
double utility_occupancy(const Pattern& x, const UncertainDatabase& db);
double probability(const Pattern& x, const UncertainDatabase& db);

/// Σ uo(i, T_tid) over ranked items of T_tid that come after every item of x.
double remaining_utility_occupancy(const Pattern& x, std::uint32_t tid, const UncertainDatabase& db,
                                   const TotalOrder& order);

/// Support, probability and utility occupancy of one pattern, computed in a
/// single scan. utility_occupancy is 0 when support is 0.
struct PatternMeasures
{
    std::uint32_t support = 0;
    double probability = 0.0;
    double utility_occupancy = 0.0;
};

PatternMeasures measure(const Pattern& x, const UncertainDatabase& db);

struct OracleOptions
{
    std::size_t max_len = 1;
    /// Maximum number of itemsets examined before ResourceError.
    std::uint64_t budget = 50'000'000;
    /// When set, the item universe is shuffled with this seed before
    /// enumeration. The result must not change.
    std::optional<std::uint64_t> permute_seed;
};

/// Every itemset of size 1..max_len with support ≥ 1, with its measures.
/// Sorted by pattern.
std::vector<PhuopRecord> oracle_enumerate(const UncertainDatabase& db, const OracleOptions& options);

/// The subset of `all` (as produced by oracle_enumerate) that satisfies th.
std::vector<PhuopRecord> filter_phuops(const std::vector<PhuopRecord>& all, const Thresholds& th, std::size_t db_size);

/// Brute-force PHUOP set: enumerate, measure, filter. Sorted by pattern.
std::vector<PhuopRecord> oracle_mine(const UncertainDatabase& db, const Thresholds& th, const OracleOptions& options);

} // namespace uhuopm
