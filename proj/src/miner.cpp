#include "uhuopm/miner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "uhuopm/error.hpp"

namespace uhuopm
{

namespace
{

bool passes_gate(const SearchContext& ctx, const PfuTable& t)
{
    if (ctx.strategies.s1_support && t.sup < ctx.min_sup)
        return false;
    if (ctx.strategies.s3_probability && !reaches(t.pro, ctx.min_pro))
        return false;
    return true;
}

bool qualifies(const SearchContext& ctx, const PfuTable& t)
{
    return t.sup >= ctx.min_sup && reaches(t.pro, ctx.min_pro) && reaches(t.uo, ctx.thresholds->beta);
}

PhuopRecord make_record(const UncertainDatabase& db, const PuoNode& node)
{
    std::vector<std::string> labels;
    labels.reserve(node.list.items.size());
    for (const ItemId id : node.list.items)
        labels.push_back(db.label(id));
    return {Pattern(std::move(labels)), node.table.sup, node.table.pro, node.table.uo};
}

void sort_records(std::vector<PhuopRecord>& records)
{
    std::sort(records.begin(), records.end(),
              [](const PhuopRecord& a, const PhuopRecord& b) { return a.pattern < b.pattern; });
}

} // namespace

std::optional<StrategySet> StrategySet::from_name(std::string_view name)
{
    if (name == "full")
        return full();
    if (name == "s12")
        return s12();
    if (name == "s13")
        return s13();
    if (name == "s1")
        return s1();
    return std::nullopt;
}

std::string StrategySet::name() const
{
    if (*this == full())
        return "full";
    if (*this == s12())
        return "s12";
    if (*this == s13())
        return "s13";
    if (*this == s1())
        return "s1";
    std::string s;
    auto add = [&](bool on, const char* tag) {
        if (!on)
            return;
        if (!s.empty())
            s += '+';
        s += tag;
    };
    add(s1_support, "s1");
    add(s2_uo_upper_bound, "s2");
    add(s3_probability, "s3");
    add(s4_join_abort, "s4");
    return s.empty() ? "none" : s;
}

void expand_node(const SearchContext& ctx, const PuoNode* prefix, const PuoNode& node,
                 std::span<const PuoNode> siblings, MiningOutcome& accumulator)
{
    auto& stats = accumulator.stats;
    ++stats.visited_nodes;
    if (!passes_gate(ctx, node.table))
        return;

    if (qualifies(ctx, node.table)) {
        accumulator.phuops.push_back(make_record(*ctx.db, node));
        ++stats.patterns_found;
    }
    if (ctx.on_node && *ctx.on_node)
        (*ctx.on_node)(node);

    if (siblings.empty())
        return;
    if (ctx.strategies.s2_uo_upper_bound &&
        !reaches(upper_bound(node.list.entries, ctx.min_sup), ctx.thresholds->beta))
        return;

    std::vector<PuoNode> children;
    for (const auto& sibling : siblings) {
        ++stats.candidate_joins;
        auto child = construct(prefix, node, sibling, ctx.min_sup, ctx.strategies.s4_join_abort);
        if (!child)
            continue;
        ++stats.constructed_lists;
        if (child->list.entries.empty() || !passes_gate(ctx, child->table))
            continue;
        children.push_back(std::move(*child));
    }
    if (!children.empty())
        phuop_search(ctx, &node, children, accumulator);
}

void phuop_search(const SearchContext& ctx, const PuoNode* prefix, std::span<const PuoNode> extensions,
                  MiningOutcome& accumulator)
{
    for (std::size_t i = 0; i < extensions.size(); ++i)
        expand_node(ctx, prefix, extensions[i], extensions.subspan(i + 1), accumulator);
}

MiningOutcome mine(const UncertainDatabase& db, const Thresholds& th, const StrategySet& strategies,
                   const MineOptions& options)
{
    th.check();
    if (const auto violations = validate_database(db); !violations.empty()) {
        std::ostringstream msg;
        msg << "invalid database (" << violations.size() << " violation" << (violations.size() == 1 ? "" : "s")
            << "): " << violations.front().message;
        throw ValidationError(msg.str());
    }

    const auto started = std::chrono::steady_clock::now();

    SearchContext ctx;
    ctx.db = &db;
    ctx.thresholds = &th;
    ctx.strategies = strategies;
    ctx.min_sup = th.min_support_count(db.size());
    ctx.min_pro = th.min_probability(db.size());
    ctx.on_node = &options.on_node;

    // pass 1: support count and probability of every item
    std::vector<std::uint32_t> sc(db.item_count(), 0);
    std::vector<double> pro(db.item_count(), 0.0);
    for (const auto& t : db.transactions())
        for (const auto& occ : t.occurrences) {
            ++sc[occ.item];
            pro[occ.item] += occ.probability;
        }

    // Items failing a disabled strategy's test stay in the search; the
    // output filter still rejects every pattern containing them.
    std::vector<ItemId> promising;
    for (ItemId id = 0; id < db.item_count(); ++id) {
        if (strategies.s1_support && sc[id] < ctx.min_sup)
            continue;
        if (strategies.s3_probability && !reaches(pro[id], ctx.min_pro))
            continue;
        promising.push_back(id);
    }

    MiningOutcome outcome;
    outcome.order = total_order(db, promising);

    // pass 2: single-item lists in ≺ order
    const auto singles = build_single_lists(db, outcome.order);
    outcome.stats.constructed_lists = singles.size();

    const unsigned threads = options.on_node ? 1u : std::max(1u, options.threads);
    if (threads == 1 || singles.size() < 2) {
        phuop_search(ctx, nullptr, singles, outcome);
    } else {
        // Disjoint first-level subtrees; each worker keeps its own accumulator.
        std::vector<MiningOutcome> partial(singles.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i; (i = next.fetch_add(1)) < singles.size();)
                expand_node(ctx, nullptr, singles[i], std::span(singles).subspan(i + 1), partial[i]);
        };
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < std::min<std::size_t>(threads, singles.size()); ++w)
            pool.emplace_back(worker);
        pool.clear();
        for (auto& p : partial) {
            outcome.stats += p.stats;
            outcome.phuops.insert(outcome.phuops.end(), std::make_move_iterator(p.phuops.begin()),
                                  std::make_move_iterator(p.phuops.end()));
        }
    }

    sort_records(outcome.phuops);
    outcome.stats.elapsed = std::chrono::steady_clock::now() - started;
    return outcome;
}

} // namespace uhuopm
