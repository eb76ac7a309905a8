#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "uhuopm/miner.hpp"
#include "uhuopm/model.hpp"

namespace uhuopm
{

struct BenchDataset
{
    std::string label; ///< written to the dataset column
    std::filesystem::path transactions;
    std::filesystem::path utilities;
};

/// A threshold sweep: one of alpha/beta/gamma may list several values, the
/// other two hold one value each.
struct BenchPlan
{
    std::vector<BenchDataset> datasets;
    std::vector<double> alpha_values;
    std::vector<double> beta_values;
    std::vector<double> gamma_values;
    std::vector<std::string> strategy_presets{"full"};
    unsigned repetitions = 1;
    unsigned threads = 1;

    /// Throws InvalidArgument for an empty list, two varying parameters, an
    /// unknown preset, a threshold out of range or zero repetitions.
    void check() const;

    /// Sweep points in plan order.
    std::vector<Thresholds> points() const;
};

/// Reads a key=value plan. Keys: dataset (repeatable, "TX UTILITY" or
/// "TX,UTILITY"), alpha, beta, gamma, strategies (comma-separated lists),
/// repetitions, threads. Relative dataset paths resolve against `base_dir`.
BenchPlan parse_plan(std::istream& in, const std::filesystem::path& base_dir = {});
BenchPlan load_plan(const std::filesystem::path& path);

inline constexpr const char* kBenchCsvHeader =
    "dataset,alpha,beta,gamma,strategy,rep,runtime_ms,visited_nodes,constructed_lists,patterns";

struct BenchRow
{
    std::string dataset;
    Thresholds thresholds;
    std::string strategy;
    unsigned rep = 0;
    double runtime_ms = 0.0;
    std::uint64_t visited_nodes = 0;
    std::uint64_t constructed_lists = 0;
    std::size_t patterns = 0;
};

std::string to_csv(const BenchRow& row);

/// Runs every (dataset × point × preset × repetition) in plan order and
/// writes the CSV header plus one row each. Only mining is timed.
std::vector<BenchRow> run_bench(const BenchPlan& plan, std::ostream& csv);

} // namespace uhuopm
