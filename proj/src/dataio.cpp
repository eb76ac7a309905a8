#include "uhuopm/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "uhuopm/error.hpp"

namespace uhuopm
{

namespace
{

bool is_item_char(char c) noexcept
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool is_item(std::string_view s) noexcept
{
    return !s.empty() && std::all_of(s.begin(), s.end(), is_item_char);
}

bool is_digits(std::string_view s) noexcept
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

/// digits [ '.' digits ]
bool is_decimal(std::string_view s) noexcept
{
    const auto dot = s.find('.');
    if (dot == std::string_view::npos)
        return is_digits(s);
    return is_digits(s.substr(0, dot)) && is_digits(s.substr(dot + 1));
}

double to_double(std::string_view s)
{
    double v = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
}

/// Reads the next line without its terminator (LF or CRLF).
bool next_line(std::istream& in, std::string& line)
{
    if (!std::getline(in, line))
        return false;
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    return true;
}

bool is_skippable(std::string_view line) noexcept
{
    return line.empty() || line.front() == '#';
}

/// Splits on single spaces, reporting the 1-based column of each field.
/// Empty fields (double, leading or trailing spaces) are a parse error.
std::vector<std::pair<std::string_view, std::size_t>> split_fields(std::string_view line, char sep,
                                                                   const std::string& source, std::size_t lineno)
{
    std::vector<std::pair<std::string_view, std::size_t>> out;
    std::size_t start = 0;
    while (true) {
        const auto end = line.find(sep, start);
        const auto field = line.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        if (field.empty())
            throw ParseError(source, lineno, start + 1, "empty field (fields are separated by a single '" +
                                                            std::string(1, sep) + "')");
        out.emplace_back(field, start + 1);
        if (end == std::string_view::npos)
            break;
        start = end + 1;
    }
    return out;
}

/// Uniform bits from a standardised engine; std distributions are not
/// portable across standard libraries.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// [lo, hi]
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) { return lo + engine_() % (hi - lo + 1); }
    /// [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// (0, 1]
    double uniform_open_zero() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

double draw_probability(Rng& rng, const GeneratorConfig& c)
{
    const double raw = c.prob_min + (c.prob_max - c.prob_min) * rng.uniform();
    const double rounded = std::round(raw * 1e4) / 1e4;
    return std::clamp(rounded, 1e-4, 1.0);
}

} // namespace

UtilityTable parse_utility_table(std::istream& in, const std::string& source)
{
    UtilityTable table;
    std::string line;
    std::size_t lineno = 0;
    while (next_line(in, line)) {
        ++lineno;
        if (is_skippable(line))
            continue;
        const auto fields = split_fields(line, ' ', source, lineno);
        if (fields.size() != 2)
            throw ParseError(source, lineno, 0, "expected 'item unit-utility'");
        const auto [item, item_col] = fields[0];
        const auto [value, value_col] = fields[1];
        if (!is_item(item))
            throw ParseError(source, lineno, item_col, "invalid item '" + std::string(item) + "'");
        if (!is_decimal(value))
            throw ParseError(source, lineno, value_col, "invalid unit utility '" + std::string(value) + "'");
        if (table.contains(item))
            throw ParseError(source, lineno, item_col, "duplicate item '" + std::string(item) + "'");
        table.set(std::string(item), to_double(value));
    }
    return table;
}

UncertainDatabase parse_transactions(std::istream& in, UtilityTable utilities, const std::string& source)
{
    std::vector<TransactionSpec> rows;
    std::string line;
    std::size_t lineno = 0;
    std::unordered_set<std::string_view> seen;
    while (next_line(in, line)) {
        ++lineno;
        if (is_skippable(line))
            continue;

        TransactionSpec row;
        seen.clear();
        for (const auto& [token, col] : split_fields(line, ' ', source, lineno)) {
            const auto c1 = token.find(':');
            const auto c2 = c1 == std::string_view::npos ? c1 : token.find(':', c1 + 1);
            if (c2 == std::string_view::npos || token.find(':', c2 + 1) != std::string_view::npos)
                throw ParseError(source, lineno, col, "expected item:quantity:probability, got '" + std::string(token) + "'");

            const auto item = token.substr(0, c1);
            const auto qty = token.substr(c1 + 1, c2 - c1 - 1);
            const auto prob = token.substr(c2 + 1);
            const auto qty_col = col + c1 + 1;
            const auto prob_col = col + c2 + 1;

            if (!is_item(item))
                throw ParseError(source, lineno, col, "invalid item '" + std::string(item) + "'");
            if (!is_digits(qty))
                throw ParseError(source, lineno, qty_col, "invalid quantity '" + std::string(qty) + "'");
            if (!is_decimal(prob))
                throw ParseError(source, lineno, prob_col, "invalid probability '" + std::string(prob) + "'");

            std::uint64_t quantity = 0;
            const auto [ptr, ec] = std::from_chars(qty.data(), qty.data() + qty.size(), quantity);
            if (ec != std::errc{} || quantity == 0 || quantity > UINT32_MAX)
                throw RangeError(source, lineno, qty_col, "quantity must be in 1.." + std::to_string(UINT32_MAX));
            const double probability = to_double(prob);
            if (!(probability > 0.0 && probability <= 1.0))
                throw RangeError(source, lineno, prob_col, "probability must be in (0, 1], got " + std::string(prob));
            if (!utilities.contains(item))
                throw MissingUtility(std::string(item), source + ":" + std::to_string(lineno) + ":" + std::to_string(col));
            if (!seen.insert(item).second)
                throw ParseError(source, lineno, col, "duplicate item '" + std::string(item) + "' in transaction");

            row.occurrences.push_back({std::string(item), static_cast<std::uint32_t>(quantity), probability});
        }
        rows.push_back(std::move(row));
    }
    return UncertainDatabase::assemble(std::move(rows), std::move(utilities));
}

UncertainDatabase parse_database(std::istream& transactions, std::istream& utilities)
{
    return parse_transactions(transactions, parse_utility_table(utilities));
}

UncertainDatabase parse_database(std::string_view transactions, std::string_view utilities)
{
    std::istringstream tx{std::string(transactions)};
    std::istringstream ut{std::string(utilities)};
    return parse_database(tx, ut);
}

UncertainDatabase load_database(const std::filesystem::path& transactions, const std::filesystem::path& utilities)
{
    std::ifstream ut(utilities);
    if (!ut)
        throw Error("cannot open utility file '" + utilities.string() + "'");
    std::ifstream tx(transactions);
    if (!tx)
        throw Error("cannot open transaction file '" + transactions.string() + "'");
    return parse_transactions(tx, parse_utility_table(ut, utilities.string()), transactions.string());
}

std::string format_number(double value)
{
    char buf[512];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
    if (ec != std::errc{})
        throw InvalidArgument("cannot format number");
    return std::string(buf, ptr);
}

void write_transactions(const UncertainDatabase& db, std::ostream& out)
{
    for (const auto& t : db.transactions()) {
        bool first = true;
        for (const auto& occ : t.occurrences) {
            if (!first)
                out << ' ';
            first = false;
            out << db.label(occ.item) << ':' << occ.quantity << ':' << format_number(occ.probability);
        }
        out << '\n';
    }
}

void write_utility_table(const UtilityTable& table, std::ostream& out)
{
    for (const auto& [item, u] : table.entries())
        out << item << ' ' << format_number(u) << '\n';
}

DatabaseText write_database(const UncertainDatabase& db)
{
    std::ostringstream tx;
    std::ostringstream ut;
    write_transactions(db, tx);
    write_utility_table(db.utility_table(), ut);
    return {tx.str(), ut.str()};
}

void save_database(const UncertainDatabase& db, const std::filesystem::path& transactions,
                   const std::filesystem::path& utilities)
{
    std::ofstream tx(transactions, std::ios::binary);
    if (!tx)
        throw Error("cannot write '" + transactions.string() + "'");
    write_transactions(db, tx);
    std::ofstream ut(utilities, std::ios::binary);
    if (!ut)
        throw Error("cannot write '" + utilities.string() + "'");
    write_utility_table(db.utility_table(), ut);
}

void GeneratorConfig::check() const
{
    if (num_items < 1)
        throw InvalidArgument("generator: num_items must be at least 1");
    if (!(avg_transaction_length >= 1.0))
        throw InvalidArgument("generator: avg_transaction_length must be at least 1");
    if (max_quantity < 1)
        throw InvalidArgument("generator: max_quantity must be at least 1");
    if (max_unit_utility < 1)
        throw InvalidArgument("generator: max_unit_utility must be at least 1");
    if (!(prob_min > 0.0 && prob_min <= prob_max && prob_max <= 1.0))
        throw InvalidArgument("generator: need 0 < prob_min <= prob_max <= 1");
    if (!(popularity_skew >= 0.0))
        throw InvalidArgument("generator: popularity_skew must be non-negative");
}

UncertainDatabase generate(const GeneratorConfig& config)
{
    config.check();
    Rng rng(config.seed);

    UtilityTable utilities;
    for (std::uint32_t i = 1; i <= config.num_items; ++i)
        utilities.set(std::to_string(i), static_cast<double>(rng.uniform_int(1, config.max_unit_utility)));

    std::vector<double> weight(config.num_items);
    for (std::uint32_t i = 0; i < config.num_items; ++i)
        weight[i] = 1.0 / std::pow(static_cast<double>(i + 1), config.popularity_skew);

    // Lengths are 1 + Geometric(p) with mean avg_transaction_length.
    const double p = 1.0 / config.avg_transaction_length;
    const double log_fail = std::log1p(-p);

    std::vector<std::pair<double, std::uint32_t>> keys(config.num_items);
    std::vector<TransactionSpec> rows;
    rows.reserve(config.num_transactions);
    for (std::uint32_t n = 0; n < config.num_transactions; ++n) {
        std::uint64_t len = 1;
        if (p < 1.0)
            len += static_cast<std::uint64_t>(std::floor(std::log(rng.uniform_open_zero()) / log_fail));
        len = std::clamp<std::uint64_t>(len, 1, config.num_items);

        // Weighted sampling without replacement: keep the len largest log(u)/w.
        for (std::uint32_t i = 0; i < config.num_items; ++i)
            keys[i] = {std::log(rng.uniform_open_zero()) / weight[i], i};
        std::nth_element(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(len) - 1, keys.end(),
                         std::greater<>{});
        std::vector<std::uint32_t> chosen;
        chosen.reserve(len);
        for (std::uint64_t k = 0; k < len; ++k)
            chosen.push_back(keys[k].second);
        std::sort(chosen.begin(), chosen.end());

        TransactionSpec row;
        for (const auto i : chosen) {
            const auto q = static_cast<std::uint32_t>(rng.uniform_int(1, config.max_quantity));
            row.occurrences.push_back({std::to_string(i + 1), q, draw_probability(rng, config)});
        }
        rows.push_back(std::move(row));
    }
    return UncertainDatabase::assemble(std::move(rows), std::move(utilities));
}

UncertainDatabase augment(std::istream& plain, const GeneratorConfig& config, const std::string& source)
{
    config.check();

    std::vector<std::vector<std::string>> lines;
    std::set<std::string, ItemLess> universe;
    std::string line;
    std::size_t lineno = 0;
    while (next_line(plain, line)) {
        ++lineno;
        if (!line.empty() && line.front() == '#')
            continue;
        std::vector<std::string> tokens;
        std::size_t pos = 0;
        while (true) {
            pos = line.find_first_not_of(" \t", pos);
            if (pos == std::string::npos)
                break;
            const auto end = line.find_first_of(" \t", pos);
            auto token = line.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
            if (!is_item(token))
                throw ParseError(source, lineno, pos + 1, "invalid item '" + token + "'");
            universe.insert(token);
            tokens.push_back(std::move(token));
            pos = end;
        }
        if (!tokens.empty())
            lines.push_back(std::move(tokens));
    }

    Rng rng(config.seed);
    UtilityTable utilities;
    for (const auto& item : universe)
        utilities.set(item, static_cast<double>(rng.uniform_int(1, config.max_unit_utility)));

    std::vector<TransactionSpec> rows;
    rows.reserve(lines.size());
    for (const auto& tokens : lines) {
        TransactionSpec row;
        for (const auto& token : tokens) {
            const auto q = static_cast<std::uint32_t>(rng.uniform_int(1, config.max_quantity));
            auto it = std::find_if(row.occurrences.begin(), row.occurrences.end(),
                                   [&](const OccurrenceSpec& o) { return o.item == token; });
            if (it == row.occurrences.end())
                row.occurrences.push_back({token, q, 1.0});
            else
                it->quantity += q;
        }
        for (auto& occ : row.occurrences)
            occ.probability = draw_probability(rng, config);
        rows.push_back(std::move(row));
    }
    return UncertainDatabase::assemble(std::move(rows), std::move(utilities));
}

} // namespace uhuopm
