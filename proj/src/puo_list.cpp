#include "uhuopm/puo_list.hpp"

#include <algorithm>
#include <functional>

#include "uhuopm/error.hpp"

namespace uhuopm
{

PfuTable summarize(const PuoList& list)
{
    PfuTable t;
    double uo = 0.0;
    double ruo = 0.0;
    for (const auto& e : list.entries) {
        t.pro += e.pro;
        uo += e.uo;
        ruo += e.ruo;
    }
    t.sup = static_cast<std::uint32_t>(list.entries.size());
    if (t.sup > 0) {
        t.uo = uo / t.sup;
        t.ruo = ruo / t.sup;
    }
    return t;
}

std::vector<PuoNode> build_single_lists(const UncertainDatabase& db, const TotalOrder& order)
{
    const auto& ordered = order.ordered_items();
    std::vector<PuoNode> nodes(ordered.size());
    for (std::size_t r = 0; r < ordered.size(); ++r)
        nodes[r].list.items = {ordered[r]};

    // (rank, uo) of the ranked items of one transaction
    std::vector<std::pair<int, double>> row;
    for (const auto& t : db.transactions()) {
        row.clear();
        for (const auto& occ : t.occurrences) {
            const int r = order.rank(occ.item);
            if (r != TotalOrder::kUnranked)
                row.emplace_back(r, occ.quantity * db.unit_utility(occ.item) / t.tu);
        }
        std::sort(row.begin(), row.end(), std::greater<>{});

        // walk from the last item under ≺ backwards, accumulating the suffix
        double suffix = 0.0;
        for (const auto& [r, uo] : row) {
            const auto& occ = *t.find(ordered[r]);
            nodes[r].list.entries.push_back({t.tid, occ.probability, uo, suffix});
            suffix += uo;
        }
    }

    for (auto& node : nodes)
        node.table = summarize(node.list);
    return nodes;
}

std::optional<PuoNode> construct(const PuoNode* prefix, const PuoNode& xa, const PuoNode& xb,
                                 std::uint32_t min_sup_count, bool abort_on_low_support)
{
    PuoNode out;
    out.list.items = xa.list.items;
    out.list.items.push_back(xb.last_item());

    const auto& ea_list = xa.list.entries;
    const auto& eb_list = xb.list.entries;
    const PuoEntry* prefix_it = prefix ? prefix->list.entries.data() : nullptr;
    const PuoEntry* prefix_end = prefix ? prefix_it + prefix->list.entries.size() : nullptr;

    out.list.entries.reserve(std::min(ea_list.size(), eb_list.size()));
    double sum_pro = 0.0;
    double sum_uo = 0.0;
    double sum_ruo = 0.0;
    std::int64_t sup_ub = xa.table.sup;

    auto eb = eb_list.begin();
    for (const auto& ea : ea_list) {
        while (eb != eb_list.end() && eb->tid < ea.tid)
            ++eb;

        if (eb == eb_list.end() || eb->tid != ea.tid) {
            if (abort_on_low_support && --sup_ub < static_cast<std::int64_t>(min_sup_count))
                return std::nullopt;
            continue;
        }

        PuoEntry joined{ea.tid, 0.0, 0.0, eb->ruo};
        if (prefix) {
            while (prefix_it != prefix_end && prefix_it->tid < ea.tid)
                ++prefix_it;
            if (prefix_it == prefix_end || prefix_it->tid != ea.tid)
                throw InternalConsistencyError("construct: prefix list has no entry for T" + std::to_string(ea.tid));
            joined.pro = ea.pro * eb->pro / prefix_it->pro;
            joined.uo = ea.uo + eb->uo - prefix_it->uo;
        } else {
            joined.pro = ea.pro * eb->pro;
            joined.uo = ea.uo + eb->uo;
        }
        sum_pro += joined.pro;
        sum_uo += joined.uo;
        sum_ruo += joined.ruo;
        out.list.entries.push_back(joined);
    }

    auto& table = out.table;
    table.sup = static_cast<std::uint32_t>(out.list.entries.size());
    table.pro = sum_pro;
    if (table.sup > 0) {
        table.uo = sum_uo / table.sup;
        table.ruo = sum_ruo / table.sup;
    }
    return out;
}

double upper_bound(std::span<const PuoEntry> entries, std::uint32_t min_sup_count)
{
    if (entries.empty())
        return 0.0;
    if (min_sup_count == 0)
        throw InvalidArgument("upper_bound: min_sup_count must be at least 1");

    std::vector<double> occupancy;
    occupancy.reserve(entries.size());
    for (const auto& e : entries)
        occupancy.push_back(e.uo + e.ruo);

    const std::size_t k = std::min<std::size_t>(min_sup_count, occupancy.size());
    std::partial_sort(occupancy.begin(), occupancy.begin() + static_cast<std::ptrdiff_t>(k), occupancy.end(),
                      std::greater<>{});
    double top = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        top += occupancy[i];
    return top / min_sup_count;
}

} // namespace uhuopm
