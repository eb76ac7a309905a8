#include "uhuopm/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "uhuopm/error.hpp"

namespace uhuopm
{

namespace
{

void require_non_empty(const Pattern& x, const char* op)
{
    if (x.empty())
        throw InvalidArgument(std::string(op) + ": empty pattern");
}

/// Resolves labels to ids. nullopt when some label is outside the universe,
/// in which case no transaction supports the pattern.
std::optional<std::vector<ItemId>> resolve(const Pattern& x, const UncertainDatabase& db)
{
    std::vector<ItemId> ids;
    ids.reserve(x.size());
    for (const auto& label : x.items()) {
        const auto id = db.find_item(label);
        if (!id)
            return std::nullopt;
        ids.push_back(*id);
    }
    return ids;
}

bool contains_all(const Transaction& t, std::span<const ItemId> ids)
{
    return std::all_of(ids.begin(), ids.end(), [&](ItemId id) { return t.find(id) != nullptr; });
}

/// Σ q × u over the pattern's items in a transaction that contains them all.
double pattern_utility(const Transaction& t, std::span<const ItemId> ids, const UncertainDatabase& db)
{
    double u = 0.0;
    for (const ItemId id : ids)
        u += t.find(id)->quantity * db.unit_utility(id);
    return u;
}

} // namespace

TotalOrder::TotalOrder(std::size_t universe_size, std::vector<ItemId> ordered_items)
    : rank_(universe_size, kUnranked), ordered_(std::move(ordered_items))
{
    for (std::size_t r = 0; r < ordered_.size(); ++r) {
        if (ordered_[r] >= universe_size || rank_[ordered_[r]] != kUnranked)
            throw InvalidArgument("total order: item listed twice or outside the universe");
        rank_[ordered_[r]] = static_cast<int>(r);
    }
}

std::vector<std::string> TotalOrder::labels(const UncertainDatabase& db) const
{
    std::vector<std::string> out;
    out.reserve(ordered_.size());
    for (const ItemId id : ordered_)
        out.push_back(db.label(id));
    return out;
}

std::vector<std::uint32_t> item_supports(const UncertainDatabase& db)
{
    std::vector<std::uint32_t> sc(db.item_count(), 0);
    for (const auto& t : db.transactions())
        for (const auto& occ : t.occurrences)
            ++sc[occ.item];
    return sc;
}

TotalOrder total_order(const UncertainDatabase& db, std::span<const ItemId> promising)
{
    const auto sc = item_supports(db);
    std::vector<ItemId> ordered(promising.begin(), promising.end());
    std::sort(ordered.begin(), ordered.end(), [&](ItemId a, ItemId b) {
        return sc[a] != sc[b] ? sc[a] < sc[b] : a < b;
    });
    return TotalOrder(db.item_count(), std::move(ordered));
}

TotalOrder total_order(const UncertainDatabase& db)
{
    std::vector<ItemId> all(db.item_count());
    std::iota(all.begin(), all.end(), ItemId{0});
    return total_order(db, all);
}

std::uint32_t support_count(const Pattern& x, const UncertainDatabase& db)
{
    require_non_empty(x, "support_count");
    const auto ids = resolve(x, db);
    if (!ids)
        return 0;
    std::uint32_t sc = 0;
    for (const auto& t : db.transactions())
        if (contains_all(t, *ids))
            ++sc;
    return sc;
}

double utility(const Pattern& x, const UncertainDatabase& db)
{
    require_non_empty(x, "utility");
    for (const auto& label : x.items())
        if (!db.utility_table().contains(label))
            throw MissingUtility(label, "utility");
    const auto ids = resolve(x, db);
    if (!ids)
        return 0.0;
    double u = 0.0;
    for (const auto& t : db.transactions())
        if (contains_all(t, *ids))
            u += pattern_utility(t, *ids, db);
    return u;
}

double utility_occupancy(const Pattern& x, const UncertainDatabase& db)
{
    require_non_empty(x, "utility_occupancy");
    const auto ids = resolve(x, db);
    if (ids) {
        for (const ItemId id : *ids)
            if (std::isnan(db.unit_utility(id)))
                throw MissingUtility(db.label(id), "utility_occupancy");
    }
    double sum = 0.0;
    std::uint32_t sc = 0;
    if (ids) {
        for (const auto& t : db.transactions()) {
            if (!contains_all(t, *ids))
                continue;
            sum += pattern_utility(t, *ids, db) / t.tu;
            ++sc;
        }
    }
    if (sc == 0)
        throw UndefinedMeasure("utility occupancy of " + x.to_string() + " is undefined: support is zero");
    return sum / sc;
}

double probability(const Pattern& x, const UncertainDatabase& db)
{
    require_non_empty(x, "probability");
    const auto ids = resolve(x, db);
    if (!ids)
        return 0.0;
    double pro = 0.0;
    for (const auto& t : db.transactions()) {
        if (!contains_all(t, *ids))
            continue;
        double p = 1.0;
        for (const ItemId id : *ids)
            p *= t.find(id)->probability;
        pro += p;
    }
    return pro;
}

double remaining_utility_occupancy(const Pattern& x, std::uint32_t tid, const UncertainDatabase& db,
                                   const TotalOrder& order)
{
    require_non_empty(x, "remaining_utility_occupancy");
    const auto& t = db.transaction(tid);
    const auto ids = resolve(x, db);
    if (!ids || !contains_all(t, *ids))
        throw InvalidArgument(x.to_string() + " is not contained in T" + std::to_string(tid));

    int last = TotalOrder::kUnranked;
    for (const ItemId id : *ids) {
        if (!order.ranked(id))
            throw InvalidArgument("item '" + db.label(id) + "' has no rank in the total order");
        last = std::max(last, order.rank(id));
    }

    double ruo = 0.0;
    for (const auto& occ : t.occurrences)
        if (order.rank(occ.item) > last)
            ruo += occ.quantity * db.unit_utility(occ.item) / t.tu;
    return ruo;
}

PatternMeasures measure(const Pattern& x, const UncertainDatabase& db)
{
    PatternMeasures m;
    m.support = support_count(x, db);
    if (m.support == 0)
        return m;
    m.probability = probability(x, db);
    m.utility_occupancy = utility_occupancy(x, db);
    return m;
}

std::vector<PhuopRecord> oracle_enumerate(const UncertainDatabase& db, const OracleOptions& options)
{
    if (options.max_len < 1)
        throw InvalidArgument("oracle: max_len must be at least 1");

    std::vector<std::string> universe = db.item_labels();
    if (options.permute_seed) {
        std::mt19937_64 rng(*options.permute_seed);
        std::shuffle(universe.begin(), universe.end(), rng);
    }

    const std::size_t n = universe.size();
    const std::size_t max_len = std::min(options.max_len, n);
    std::vector<PhuopRecord> out;
    std::uint64_t examined = 0;

    // Enumerate k-combinations of positions in `universe` for k = 1..max_len.
    for (std::size_t k = 1; k <= max_len; ++k) {
        std::vector<std::size_t> pick(k);
        std::iota(pick.begin(), pick.end(), std::size_t{0});
        while (true) {
            if (++examined > options.budget)
                throw ResourceError("oracle: itemset budget of " + std::to_string(options.budget) + " exceeded");

            std::vector<std::string> items;
            items.reserve(k);
            for (const auto i : pick)
                items.push_back(universe[i]);
            Pattern x(std::move(items));
            const auto m = measure(x, db);
            if (m.support > 0)
                out.push_back({std::move(x), m.support, m.probability, m.utility_occupancy});

            // next combination
            std::size_t i = k;
            while (i > 0 && pick[i - 1] == n - k + (i - 1))
                --i;
            if (i == 0)
                break;
            ++pick[i - 1];
            for (std::size_t j = i; j < k; ++j)
                pick[j] = pick[j - 1] + 1;
        }
    }

    std::sort(out.begin(), out.end(), [](const PhuopRecord& a, const PhuopRecord& b) { return a.pattern < b.pattern; });
    return out;
}

std::vector<PhuopRecord> filter_phuops(const std::vector<PhuopRecord>& all, const Thresholds& th, std::size_t db_size)
{
    const auto min_sup = th.min_support_count(db_size);
    const double min_pro = th.min_probability(db_size);
    std::vector<PhuopRecord> out;
    for (const auto& r : all)
        if (r.support >= min_sup && reaches(r.probability, min_pro) && reaches(r.utility_occupancy, th.beta))
            out.push_back(r);
    return out;
}

std::vector<PhuopRecord> oracle_mine(const UncertainDatabase& db, const Thresholds& th, const OracleOptions& options)
{
    th.check();
    return filter_phuops(oracle_enumerate(db, options), th, db.size());
}

} // namespace uhuopm
