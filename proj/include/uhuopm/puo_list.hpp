#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "uhuopm/measures.hpp"
#include "uhuopm/model.hpp"

namespace uhuopm
{

/// One supporting transaction of a pattern.
struct PuoEntry
{
    std::uint32_t tid = 0;
    double pro = 0.0; ///< product of member probabilities in the transaction
    double uo = 0.0;  ///< pattern utility / tu
    double ruo = 0.0; ///< utility share of ranked items after the pattern

    friend bool operator==(const PuoEntry&, const PuoEntry&) = default;
};

/// Vertical list of a pattern: entries sorted by strictly increasing tid.
struct PuoList
{
    std::vector<ItemId> items; ///< pattern items in ≺ order
    std::vector<PuoEntry> entries;
};

/// Summary of a PuoList: support, total probability, mean uo and mean ruo.
struct PfuTable
{
    std::uint32_t sup = 0;
    double pro = 0.0;
    double uo = 0.0;
    double ruo = 0.0;
};

/// A materialised SC-tree node.
struct PuoNode
{
    PuoList list;
    PfuTable table;

    ItemId last_item() const { return list.items.back(); }
};

/// Recomputes the PFU-table of a list from scratch.
PfuTable summarize(const PuoList& list);

/// One node per item of `order`, in ≺ order, built in one database pass.
/// uo uses the transaction's full tu; ruo only sums items ranked by `order`.
std::vector<PuoNode> build_single_lists(const UncertainDatabase& db, const TotalOrder& order);

/// Joins two ≺-siblings Xa, Xb sharing the prefix X (nullptr for the empty
/// prefix) into X ∪ {a, b}. With `abort_on_low_support`, gives up and
/// returns nullopt as soon as too few entries of Xa remain unmatched for the
/// result to reach `min_sup_count`. The result may have an empty list.
/// Throws InternalConsistencyError if the prefix lacks a shared tid.
std::optional<PuoNode> construct(const PuoNode* prefix, const PuoNode& xa, const PuoNode& xb,
                                 std::uint32_t min_sup_count, bool abort_on_low_support);

/// Mean of the `min_sup_count` largest uo + ruo values of the list (fewer
/// when the list is shorter, still divided by min_sup_count). Bounds the
/// utility occupancy of every extension with support ≥ min_sup_count.
double upper_bound(std::span<const PuoEntry> entries, std::uint32_t min_sup_count);

} // namespace uhuopm
