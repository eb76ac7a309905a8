#include "uhuopm/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "uhuopm/bench.hpp"
#include "uhuopm/dataio.hpp"
#include "uhuopm/error.hpp"
#include "uhuopm/measures.hpp"
#include "uhuopm/miner.hpp"
#include "uhuopm/report.hpp"

namespace uhuopm::cli
{

namespace
{

struct DataFlags
{
    std::string data;
    std::string utility;

    void add(CLI::App& cmd)
    {
        cmd.add_option("--data", data, "Transaction file (item:quantity:probability per token)")->required();
        cmd.add_option("--utility", utility, "Unit-utility file (item value per line)")->required();
    }
};

struct ThresholdFlags
{
    Thresholds th;

    void add(CLI::App& cmd)
    {
        cmd.add_option("--alpha", th.alpha, "Minimum support as a fraction of |D|, in (0,1]")->required();
        cmd.add_option("--beta", th.beta, "Minimum average utility occupancy, in (0,1]")->required();
        cmd.add_option("--gamma", th.gamma, "Minimum probability as a fraction of |D|, in [0,1]")->required();
    }
};

struct OutputFlags
{
    std::string output;
    std::string format = "text";

    void add(CLI::App& cmd)
    {
        cmd.add_option("--output", output, "Write patterns here instead of standard output");
        cmd.add_option("--format", format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
    }
};

struct GeneratorFlags
{
    GeneratorConfig config;

    void add(CLI::App& cmd, bool shape)
    {
        cmd.add_option("--seed", config.seed, "Random seed")->capture_default_str();
        if (shape) {
            cmd.add_option("--transactions", config.num_transactions, "Number of transactions")->capture_default_str();
            cmd.add_option("--items", config.num_items, "Number of distinct items")->capture_default_str();
            cmd.add_option("--avg-length", config.avg_transaction_length, "Mean transaction length")
                ->capture_default_str();
            cmd.add_option("--skew", config.popularity_skew, "Zipf exponent of item popularity")->capture_default_str();
        }
        cmd.add_option("--max-quantity", config.max_quantity, "Quantities are uniform in [1, N]")->capture_default_str();
        cmd.add_option("--max-utility", config.max_unit_utility, "Unit utilities are uniform in [1, N]")
            ->capture_default_str();
        cmd.add_option("--prob-min", config.prob_min, "Lowest existential probability")->capture_default_str();
        cmd.add_option("--prob-max", config.prob_max, "Highest existential probability")->capture_default_str();
    }
};

/// Opens `path` for writing, or returns the fallback stream when empty.
class Sink
{
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback)
    {
        if (path.empty())
            return;
        file_.open(path, std::ios::binary);
        if (!file_)
            throw Error("cannot write '" + path + "'");
        stream_ = &file_;
    }

    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

int cmd_mine(const DataFlags& data, const ThresholdFlags& thr, const std::string& strategy_name,
             const OutputFlags& output, const std::string& stats_path, unsigned threads, std::ostream& out)
{
    thr.th.check();
    const auto strategies = StrategySet::from_name(strategy_name);
    const auto db = load_database(data.data, data.utility);

    MineOptions options;
    options.threads = threads;
    const auto outcome = mine(db, thr.th, *strategies, options);

    Sink sink(output.output, out);
    write_patterns(outcome.phuops, db, total_order(db), *parse_output_format(output.format), sink.get());
    if (!stats_path.empty()) {
        Sink stats(stats_path, out);
        write_stats(outcome.stats, stats.get());
    }
    return kExitOk;
}

int cmd_oracle(const DataFlags& data, const ThresholdFlags& thr, std::optional<std::size_t> max_len,
               std::uint64_t budget, const OutputFlags& output, std::ostream& out)
{
    thr.th.check();
    const auto db = load_database(data.data, data.utility);

    OracleOptions options;
    options.max_len = max_len.value_or(std::max<std::size_t>(1, db.item_count()));
    options.budget = budget;
    const auto records = oracle_mine(db, thr.th, options);

    Sink sink(output.output, out);
    write_patterns(records, db, total_order(db), *parse_output_format(output.format), sink.get());
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Potential high utility-occupancy pattern mining on uncertain databases"};
    app.require_subcommand(1);
    app.name(args.empty() ? "uhuopm" : args.front());

    // mine
    auto* mine_cmd = app.add_subcommand("mine", "Mine PHUOPs with the list-based search");
    DataFlags mine_data;
    ThresholdFlags mine_thr;
    OutputFlags mine_out;
    std::string strategy = "full";
    std::string stats_path;
    unsigned threads = 1;
    mine_data.add(*mine_cmd);
    mine_thr.add(*mine_cmd);
    mine_out.add(*mine_cmd);
    mine_cmd->add_option("--strategies", strategy, "Pruning preset: full, s12, s13 or s1")
        ->check(CLI::IsMember({"full", "s12", "s13", "s1"}))
        ->capture_default_str();
    mine_cmd->add_option("--stats", stats_path, "Write search counters as key=value lines");
    mine_cmd->add_option("--threads", threads, "Worker threads for first-level subtrees")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "Mine PHUOPs by brute-force enumeration");
    DataFlags oracle_data;
    ThresholdFlags oracle_thr;
    OutputFlags oracle_out;
    std::optional<std::size_t> max_len;
    std::uint64_t budget = OracleOptions{}.budget;
    oracle_data.add(*oracle_cmd);
    oracle_thr.add(*oracle_cmd);
    oracle_out.add(*oracle_cmd);
    oracle_cmd->add_option("--max-len", max_len, "Longest itemset to enumerate (default: all items)")
        ->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--budget", budget, "Maximum number of itemsets examined")->capture_default_str();

    // generate
    auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic uncertain database");
    GeneratorFlags gen;
    std::string gen_data, gen_utility;
    gen.add(*gen_cmd, true);
    gen_cmd->add_option("--out-data", gen_data, "Transaction file to write")->required();
    gen_cmd->add_option("--out-utility", gen_utility, "Utility file to write")->required();

    // augment
    auto* aug_cmd = app.add_subcommand("augment", "Attach quantities, probabilities and utilities to a plain dataset");
    GeneratorFlags aug;
    std::string aug_plain, aug_data, aug_utility;
    aug.add(*aug_cmd, false);
    aug_cmd->add_option("--plain", aug_plain, "Whitespace-separated item tokens, one transaction per line")
        ->required();
    aug_cmd->add_option("--out-data", aug_data, "Transaction file to write")->required();
    aug_cmd->add_option("--out-utility", aug_utility, "Utility file to write")->required();

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "Print dataset characteristics");
    DataFlags stats_data;
    stats_data.add(*stats_cmd);

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Run a threshold sweep and emit CSV");
    std::string plan_path, bench_output;
    std::vector<std::string> bench_datasets;
    BenchPlan inline_plan;
    std::vector<std::string> bench_presets;
    bench_cmd->add_option("--plan", plan_path, "key=value plan file");
    bench_cmd->add_option("--dataset", bench_datasets, "TX,UTILITY pair (repeatable)");
    bench_cmd->add_option("--alpha", inline_plan.alpha_values, "Comma-separated alpha values")->delimiter(',');
    bench_cmd->add_option("--beta", inline_plan.beta_values, "Comma-separated beta values")->delimiter(',');
    bench_cmd->add_option("--gamma", inline_plan.gamma_values, "Comma-separated gamma values")->delimiter(',');
    bench_cmd->add_option("--strategies", bench_presets, "Comma-separated presets")->delimiter(',');
    bench_cmd->add_option("--reps", inline_plan.repetitions, "Repetitions per point")->capture_default_str();
    bench_cmd->add_option("--threads", inline_plan.threads, "Worker threads per mining run")->capture_default_str();
    bench_cmd->add_option("--output", bench_output, "CSV file (default: standard output)");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    if (args.empty())
        argv.push_back("uhuopm");
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*mine_cmd)
            return cmd_mine(mine_data, mine_thr, strategy, mine_out, stats_path, threads, out);
        if (*oracle_cmd)
            return cmd_oracle(oracle_data, oracle_thr, max_len, budget, oracle_out, out);
        if (*gen_cmd) {
            save_database(generate(gen.config), gen_data, gen_utility);
            return kExitOk;
        }
        if (*aug_cmd) {
            aug.config.check();
            std::ifstream plain(aug_plain);
            if (!plain)
                throw Error("cannot open plain dataset '" + aug_plain + "'");
            save_database(augment(plain, aug.config, aug_plain), aug_data, aug_utility);
            return kExitOk;
        }
        if (*stats_cmd) {
            write_summary(summarize(load_database(stats_data.data, stats_data.utility)), out);
            return kExitOk;
        }
        if (*bench_cmd) {
            BenchPlan plan;
            if (!plan_path.empty()) {
                if (!bench_datasets.empty() || !inline_plan.alpha_values.empty())
                    throw InvalidArgument("--plan cannot be combined with inline sweep flags");
                plan = load_plan(plan_path);
            } else {
                plan = inline_plan;
                for (const auto& pair : bench_datasets) {
                    const auto comma = pair.find(',');
                    if (comma == std::string::npos)
                        throw InvalidArgument("--dataset expects TX,UTILITY, got '" + pair + "'");
                    const auto tx = pair.substr(0, comma);
                    plan.datasets.push_back({tx, tx, pair.substr(comma + 1)});
                }
                if (!bench_presets.empty())
                    plan.strategy_presets = bench_presets;
            }
            plan.check();
            Sink sink(bench_output, out);
            run_bench(plan, sink.get());
            return kExitOk;
        }
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\nRun with --help for usage.\n";
        return kExitUsage;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBudget;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataError;
    }
    return kExitUsage;
}

} // namespace uhuopm::cli
