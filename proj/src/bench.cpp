#include "uhuopm/bench.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "uhuopm/dataio.hpp"
#include "uhuopm/error.hpp"

namespace uhuopm
{

namespace
{

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto end = s.find(',', start);
        auto item = trim(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        if (!item.empty())
            out.push_back(std::move(item));
        if (end == std::string_view::npos)
            break;
        start = end + 1;
    }
    return out;
}

double parse_double(const std::string& s, const std::string& key)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw InvalidArgument("plan: bad number '" + s + "' for " + key);
    return v;
}

unsigned parse_unsigned(const std::string& s, const std::string& key)
{
    unsigned v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw InvalidArgument("plan: bad integer '" + s + "' for " + key);
    return v;
}

std::vector<double> parse_values(const std::string& s, const std::string& key)
{
    std::vector<double> out;
    for (const auto& v : split_list(s))
        out.push_back(parse_double(v, key));
    return out;
}

} // namespace

void BenchPlan::check() const
{
    if (datasets.empty())
        throw InvalidArgument("plan: no dataset");
    if (alpha_values.empty() || beta_values.empty() || gamma_values.empty())
        throw InvalidArgument("plan: alpha, beta and gamma each need at least one value");
    const int varying = (alpha_values.size() > 1) + (beta_values.size() > 1) + (gamma_values.size() > 1);
    if (varying > 1)
        throw InvalidArgument("plan: only one of alpha, beta, gamma may vary per sweep");
    if (strategy_presets.empty())
        throw InvalidArgument("plan: no strategy preset");
    for (const auto& name : strategy_presets)
        if (!StrategySet::from_name(name))
            throw InvalidArgument("plan: unknown strategy preset '" + name + "'");
    if (repetitions < 1)
        throw InvalidArgument("plan: repetitions must be at least 1");
    for (const auto& th : points())
        th.check();
}

std::vector<Thresholds> BenchPlan::points() const
{
    std::vector<Thresholds> out;
    for (const double a : alpha_values)
        for (const double b : beta_values)
            for (const double g : gamma_values)
                out.push_back({a, b, g});
    return out;
}

BenchPlan parse_plan(std::istream& in, const std::filesystem::path& base_dir)
{
    BenchPlan plan;
    plan.strategy_presets.clear();
    std::string line;
    std::size_t lineno = 0;
    auto resolve = [&](const std::string& p) {
        std::filesystem::path path(p);
        return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto content = trim(line);
        if (content.empty() || content.front() == '#')
            continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos)
            throw ParseError("plan", lineno, 0, "expected key=value");
        const auto key = trim(std::string_view(content).substr(0, eq));
        const auto value = trim(std::string_view(content).substr(eq + 1));

        if (key == "dataset") {
            auto parts = split_list(value);
            if (parts.size() == 1) {
                std::istringstream ss(value);
                parts.clear();
                for (std::string p; ss >> p;)
                    parts.push_back(p);
            }
            if (parts.size() != 2)
                throw ParseError("plan", lineno, eq + 2, "dataset needs a transaction path and a utility path");
            plan.datasets.push_back({parts[0], resolve(parts[0]), resolve(parts[1])});
        } else if (key == "alpha") {
            plan.alpha_values = parse_values(value, key);
        } else if (key == "beta") {
            plan.beta_values = parse_values(value, key);
        } else if (key == "gamma") {
            plan.gamma_values = parse_values(value, key);
        } else if (key == "strategies") {
            plan.strategy_presets = split_list(value);
        } else if (key == "repetitions") {
            plan.repetitions = parse_unsigned(value, key);
        } else if (key == "threads") {
            plan.threads = parse_unsigned(value, key);
        } else {
            throw ParseError("plan", lineno, 1, "unknown key '" + key + "'");
        }
    }
    if (plan.strategy_presets.empty())
        plan.strategy_presets = {"full"};
    return plan;
}

BenchPlan load_plan(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open plan '" + path.string() + "'");
    return parse_plan(in, path.parent_path());
}

std::string to_csv(const BenchRow& row)
{
    std::ostringstream s;
    char ms[64];
    const auto [ptr, ec] = std::to_chars(ms, ms + sizeof ms, row.runtime_ms, std::chars_format::fixed, 3);
    s << row.dataset << ',' << format_number(row.thresholds.alpha) << ',' << format_number(row.thresholds.beta)
      << ',' << format_number(row.thresholds.gamma) << ',' << row.strategy << ',' << row.rep << ','
      << std::string_view(ms, static_cast<std::size_t>(ptr - ms)) << ',' << row.visited_nodes << ','
      << row.constructed_lists << ',' << row.patterns;
    return s.str();
}

std::vector<BenchRow> run_bench(const BenchPlan& plan, std::ostream& csv)
{
    plan.check();
    csv << kBenchCsvHeader << '\n';

    std::vector<BenchRow> rows;
    MineOptions options;
    options.threads = plan.threads;
    for (const auto& dataset : plan.datasets) {
        const auto db = load_database(dataset.transactions, dataset.utilities);
        for (const auto& th : plan.points()) {
            for (const auto& preset : plan.strategy_presets) {
                const auto strategies = *StrategySet::from_name(preset);
                for (unsigned rep = 1; rep <= plan.repetitions; ++rep) {
                    const auto outcome = mine(db, th, strategies, options);
                    BenchRow row{dataset.label,
                                 th,
                                 preset,
                                 rep,
                                 static_cast<double>(outcome.stats.elapsed.count()) / 1e6,
                                 outcome.stats.visited_nodes,
                                 outcome.stats.constructed_lists,
                                 outcome.phuops.size()};
                    csv << to_csv(row) << '\n' << std::flush;
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    return rows;
}

} // namespace uhuopm
