#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uhuopm/measures.hpp"
#include "uhuopm/model.hpp"
#include "uhuopm/puo_list.hpp"

namespace uhuopm
{

/// Pruning strategies. They change how much of the SC-tree is explored,
/// never which patterns are reported.
struct StrategySet
{
    bool s1_support = true;        ///< prune nodes below the support threshold
    bool s2_uo_upper_bound = true; ///< prune subtrees whose uo upper bound is below beta
    bool s3_probability = true;    ///< prune nodes below the probability threshold
    bool s4_join_abort = true;     ///< abandon joins that can no longer reach min support

    static constexpr StrategySet full() noexcept { return {true, true, true, true}; }
    static constexpr StrategySet s12() noexcept { return {true, true, false, false}; }
    static constexpr StrategySet s13() noexcept { return {true, false, true, false}; }
    static constexpr StrategySet s1() noexcept { return {true, false, false, false}; }

    /// "full", "s12", "s13" or "s1"; nullopt for anything else.
    static std::optional<StrategySet> from_name(std::string_view name);
    /// Preset name, or a flag string such as "s1+s4" for custom sets.
    std::string name() const;

    friend bool operator==(const StrategySet&, const StrategySet&) = default;
};

struct MiningOutcome
{
    std::vector<PhuopRecord> phuops; ///< sorted by pattern
    MiningStats stats;
    TotalOrder order; ///< ≺ over the items that entered the search
};

struct MineOptions
{
    /// Worker threads for first-level subtrees; 1 runs the reference
    /// sequential traversal. Results and counters do not depend on this.
    unsigned threads = 1;
    /// Called for every visited node that passes the support/probability
    /// gate. Forces sequential traversal.
    std::function<void(const PuoNode&)> on_node;
};

/// Mines the PHUOP set. Throws ValidationError for an invalid database and
/// InvalidArgument for out-of-range thresholds.
MiningOutcome mine(const UncertainDatabase& db, const Thresholds& th, const StrategySet& strategies,
                   const MineOptions& options = {});

/// Search context shared by one traversal.
struct SearchContext
{
    const UncertainDatabase* db = nullptr;
    const Thresholds* thresholds = nullptr;
    StrategySet strategies;
    std::uint32_t min_sup = 1;
    double min_pro = 0.0;
    const std::function<void(const PuoNode&)>* on_node = nullptr;
};

/// Depth-first exploration of the subtree below `prefix` (nullptr for the
/// root). `extensions` hold prefix ∪ {item} for items in ≺ order. Found
/// patterns and counters go to `accumulator`; phuops are appended unsorted.
void phuop_search(const SearchContext& ctx, const PuoNode* prefix, std::span<const PuoNode> extensions,
                  MiningOutcome& accumulator);

/// Looks at a single extension (the loop body of phuop_search) and recurses
/// into its children. `siblings` are the extensions after it.
void expand_node(const SearchContext& ctx, const PuoNode* prefix, const PuoNode& node,
                 std::span<const PuoNode> siblings, MiningOutcome& accumulator);

} // namespace uhuopm
