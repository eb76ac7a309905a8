#include "uhuopm/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "uhuopm/error.hpp"

namespace uhuopm
{

namespace
{

bool all_digits(std::string_view s) noexcept
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view strip_leading_zeros(std::string_view s) noexcept
{
    const auto first = s.find_first_not_of('0');
    return first == std::string_view::npos ? s.substr(s.size() - 1) : s.substr(first);
}

} // namespace

bool ItemLess::operator()(std::string_view lhs, std::string_view rhs) const noexcept
{
    const bool lnum = all_digits(lhs);
    const bool rnum = all_digits(rhs);
    if (lnum != rnum)
        return lnum;
    if (lnum) {
        const auto l = strip_leading_zeros(lhs);
        const auto r = strip_leading_zeros(rhs);
        if (l.size() != r.size())
            return l.size() < r.size();
        if (l != r)
            return l < r;
        // "01" and "1" are distinct labels; fall through to a plain comparison
    }
    return lhs < rhs;
}

UtilityTable::UtilityTable(std::initializer_list<std::pair<const std::string, double>> entries)
    : entries_(entries.begin(), entries.end())
{
}

void UtilityTable::set(std::string item, double unit_utility)
{
    entries_.insert_or_assign(std::move(item), unit_utility);
}

std::optional<double> UtilityTable::find(std::string_view item) const
{
    const auto it = entries_.find(item);
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

const ItemOccurrence* Transaction::find(ItemId item) const noexcept
{
    for (const auto& occ : occurrences)
        if (occ.item == item)
            return &occ;
    return nullptr;
}

UncertainDatabase UncertainDatabase::assemble(std::vector<TransactionSpec> transactions, UtilityTable utilities)
{
    UncertainDatabase db;

    std::set<std::string, ItemLess> universe;
    for (const auto& t : transactions)
        for (const auto& occ : t.occurrences)
            universe.insert(occ.item);
    db.labels_.assign(universe.begin(), universe.end());

    db.unit_utility_.reserve(db.labels_.size());
    for (const auto& label : db.labels_)
        db.unit_utility_.push_back(utilities.find(label).value_or(std::numeric_limits<double>::quiet_NaN()));
    db.utilities_ = std::move(utilities);

    db.transactions_.reserve(transactions.size());
    std::uint32_t tid = 0;
    for (auto& spec : transactions) {
        Transaction t;
        t.tid = ++tid;
        t.occurrences.reserve(spec.occurrences.size());
        for (const auto& occ : spec.occurrences)
            t.occurrences.push_back({*db.find_item(occ.item), occ.quantity, occ.probability});
        t.tu = spec.tu ? *spec.tu : db.recompute_tu(t);
        db.transactions_.push_back(std::move(t));
    }
    return db;
}

const Transaction& UncertainDatabase::transaction(std::uint32_t tid) const
{
    if (tid == 0 || tid > transactions_.size())
        throw InvalidArgument("tid " + std::to_string(tid) + " outside 1.." + std::to_string(transactions_.size()));
    return transactions_[tid - 1];
}

std::optional<ItemId> UncertainDatabase::find_item(std::string_view label) const
{
    const auto it = std::lower_bound(labels_.begin(), labels_.end(), label, ItemLess{});
    if (it == labels_.end() || *it != label)
        return std::nullopt;
    return static_cast<ItemId>(it - labels_.begin());
}

double UncertainDatabase::recompute_tu(const Transaction& t) const
{
    double tu = 0.0;
    for (const auto& occ : t.occurrences) {
        const double u = unit_utility_[occ.item];
        if (!std::isnan(u))
            tu += occ.quantity * u;
    }
    return tu;
}

std::string_view to_string(Violation::Kind kind) noexcept
{
    switch (kind) {
    case Violation::Kind::ProbabilityOutOfRange: return "probability-out-of-range";
    case Violation::Kind::QuantityOutOfRange: return "quantity-out-of-range";
    case Violation::Kind::MissingUtility: return "missing-utility";
    case Violation::Kind::NegativeUtility: return "negative-utility";
    case Violation::Kind::DuplicateItem: return "duplicate-item";
    case Violation::Kind::TuMismatch: return "tu-mismatch";
    case Violation::Kind::NonPositiveTu: return "non-positive-tu";
    case Violation::Kind::TidOutOfSequence: return "tid-out-of-sequence";
    }
    return "unknown";
}

std::vector<Violation> validate_database(const UncertainDatabase& db)
{
    std::vector<Violation> out;
    auto report = [&](Violation::Kind kind, std::uint32_t tid, std::string item, std::string detail) {
        std::ostringstream msg;
        msg << to_string(kind);
        if (tid != 0)
            msg << " at T" << tid;
        if (!item.empty())
            msg << " item '" << item << "'";
        if (!detail.empty())
            msg << ": " << detail;
        out.push_back({kind, tid, std::move(item), msg.str()});
    };

    for (ItemId id = 0; id < db.item_count(); ++id) {
        const double u = db.unit_utility(id);
        if (std::isnan(u))
            report(Violation::Kind::MissingUtility, 0, db.label(id), "");
    }
    for (const auto& [item, u] : db.utility_table().entries())
        if (u < 0.0 || !std::isfinite(u))
            report(Violation::Kind::NegativeUtility, 0, item, "unit utility " + std::to_string(u));

    std::uint32_t expected_tid = 0;
    std::vector<bool> seen(db.item_count(), false);
    for (const auto& t : db.transactions()) {
        ++expected_tid;
        if (t.tid != expected_tid)
            report(Violation::Kind::TidOutOfSequence, t.tid, "", "expected T" + std::to_string(expected_tid));

        for (const auto& occ : t.occurrences) {
            const auto& label = db.label(occ.item);
            if (!(occ.probability > 0.0 && occ.probability <= 1.0))
                report(Violation::Kind::ProbabilityOutOfRange, t.tid, label,
                       "probability " + std::to_string(occ.probability));
            if (occ.quantity < 1)
                report(Violation::Kind::QuantityOutOfRange, t.tid, label, "quantity 0");
            if (seen[occ.item])
                report(Violation::Kind::DuplicateItem, t.tid, label, "");
            seen[occ.item] = true;
        }
        for (const auto& occ : t.occurrences)
            seen[occ.item] = false;

        const double recomputed = db.recompute_tu(t);
        if (std::abs(recomputed - t.tu) > kTolerance) {
            std::ostringstream detail;
            detail << "stored " << t.tu << ", recomputed " << recomputed;
            report(Violation::Kind::TuMismatch, t.tid, "", detail.str());
        }
        if (!(t.tu > 0.0))
            report(Violation::Kind::NonPositiveTu, t.tid, "", "tu " + std::to_string(t.tu));
    }
    return out;
}

void Thresholds::check() const
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw InvalidArgument("alpha must be in (0, 1], got " + std::to_string(alpha));
    if (!(beta > 0.0 && beta <= 1.0))
        throw InvalidArgument("beta must be in (0, 1], got " + std::to_string(beta));
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw InvalidArgument("gamma must be in [0, 1], got " + std::to_string(gamma));
}

std::uint32_t Thresholds::min_support_count(std::size_t db_size) const noexcept
{
    // alpha × |D| is often a hair above an integer (0.7 × 10 = 7.000000000000001)
    const double raw = std::ceil(alpha * static_cast<double>(db_size) - kTolerance);
    return raw < 1.0 ? 1u : static_cast<std::uint32_t>(raw);
}

Pattern::Pattern(std::vector<std::string> items) : items_(std::move(items))
{
    std::sort(items_.begin(), items_.end(), ItemLess{});
    if (std::adjacent_find(items_.begin(), items_.end()) != items_.end())
        throw InvalidArgument("pattern has duplicate items: " + to_string());
}

bool Pattern::contains(std::string_view item) const
{
    return std::binary_search(items_.begin(), items_.end(), item, ItemLess{});
}

std::string Pattern::to_string() const
{
    std::string s = "{";
    for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i)
            s += ',';
        s += items_[i];
    }
    return s + "}";
}

bool operator<(const Pattern& a, const Pattern& b)
{
    return std::lexicographical_compare(a.items_.begin(), a.items_.end(), b.items_.begin(), b.items_.end(),
                                        ItemLess{});
}

MiningStats& MiningStats::operator+=(const MiningStats& other) noexcept
{
    visited_nodes += other.visited_nodes;
    constructed_lists += other.constructed_lists;
    candidate_joins += other.candidate_joins;
    patterns_found += other.patterns_found;
    elapsed += other.elapsed;
    return *this;
}

} // namespace uhuopm

std::size_t std::hash<uhuopm::Pattern>::operator()(const uhuopm::Pattern& p) const noexcept
{
    std::size_t h = 0xcbf29ce484222325ull;
    for (const auto& item : p.items())
        h = (h ^ std::hash<std::string>{}(item)) * 0x100000001b3ull;
    return h;
}
