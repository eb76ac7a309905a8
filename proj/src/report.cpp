#include "uhuopm/report.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include <json.hpp>

namespace uhuopm
{

std::optional<OutputFormat> parse_output_format(std::string_view name)
{
    if (name == "text")
        return OutputFormat::Text;
    if (name == "csv")
        return OutputFormat::Csv;
    if (name == "json")
        return OutputFormat::Json;
    return std::nullopt;
}

std::string format_fixed4(double value)
{
    char buf[512];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 4);
    std::string s(buf, ptr);
    if (s == "-0.0000")
        s.erase(0, 1);
    return s;
}

namespace
{

std::vector<std::string> ordered_items(const Pattern& p, const UncertainDatabase& db, const TotalOrder& order)
{
    std::vector<std::pair<int, std::string>> ranked;
    for (const auto& label : p.items()) {
        const auto id = db.find_item(label);
        ranked.emplace_back(id ? order.rank(*id) : TotalOrder::kUnranked, label);
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::string> out;
    for (auto& [rank, label] : ranked)
        out.push_back(std::move(label));
    return out;
}

std::string join(const std::vector<std::string>& items)
{
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i)
            s += ' ';
        s += items[i];
    }
    return s;
}

} // namespace

void write_patterns(const std::vector<PhuopRecord>& input, const UncertainDatabase& db, const TotalOrder& order,
                    OutputFormat format, std::ostream& out)
{
    struct Line
    {
        std::vector<std::string> items;
        const PhuopRecord* record;
    };
    std::vector<Line> lines;
    lines.reserve(input.size());
    for (const auto& r : input)
        lines.push_back({ordered_items(r.pattern, db, order), &r});
    std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
        return std::lexicographical_compare(a.items.begin(), a.items.end(), b.items.begin(), b.items.end(),
                                            ItemLess{});
    });

    switch (format) {
    case OutputFormat::Text:
        for (const auto& [items, r] : lines)
            out << join(items) << " #SUP: " << r->support
                << " #PRO: " << format_fixed4(r->probability) << " #UO: " << format_fixed4(r->utility_occupancy)
                << '\n';
        break;
    case OutputFormat::Csv:
        out << "pattern,support,probability,utility_occupancy\n";
        for (const auto& [items, r] : lines)
            out << join(items) << ',' << r->support << ',' << format_fixed4(r->probability) << ','
                << format_fixed4(r->utility_occupancy) << '\n';
        break;
    case OutputFormat::Json: {
        auto doc = nlohmann::json::array();
        for (const auto& [items, r] : lines) {
            doc.push_back({
                {"items", items},
                {"support", r->support},
                // round through the 4-decimal text so every format agrees
                {"probability", std::stod(format_fixed4(r->probability))},
                {"utility_occupancy", std::stod(format_fixed4(r->utility_occupancy))},
            });
        }
        out << doc.dump(2) << '\n';
        break;
    }
    }
}

void write_stats(const MiningStats& stats, std::ostream& out)
{
    out << "visited_nodes=" << stats.visited_nodes << '\n'
        << "constructed_lists=" << stats.constructed_lists << '\n'
        << "candidate_joins=" << stats.candidate_joins << '\n'
        << "patterns_found=" << stats.patterns_found << '\n'
        << "elapsed_ms=" << format_fixed4(static_cast<double>(stats.elapsed.count()) / 1e6) << '\n';
}

DatabaseSummary summarize(const UncertainDatabase& db)
{
    DatabaseSummary s;
    s.transactions = db.size();
    s.items = db.item_count();
    if (db.empty())
        return s;
    s.min_length = db.transactions().front().occurrences.size();
    std::size_t total_length = 0;
    for (const auto& t : db.transactions()) {
        const auto len = t.occurrences.size();
        s.min_length = std::min(s.min_length, len);
        s.max_length = std::max(s.max_length, len);
        total_length += len;
        s.total_utility += t.tu;
    }
    s.avg_length = static_cast<double>(total_length) / static_cast<double>(s.transactions);
    s.density = s.items ? s.avg_length / static_cast<double>(s.items) : 0.0;
    return s;
}

void write_summary(const DatabaseSummary& s, std::ostream& out)
{
    out << "transactions=" << s.transactions << '\n'
        << "items=" << s.items << '\n'
        << "min_length=" << s.min_length << '\n'
        << "avg_length=" << format_fixed4(s.avg_length) << '\n'
        << "max_length=" << s.max_length << '\n'
        << "total_utility=" << format_fixed4(s.total_utility) << '\n'
        << "density=" << format_fixed4(s.density) << '\n';
}

} // namespace uhuopm
