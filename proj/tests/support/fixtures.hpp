#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "uhuopm/dataio.hpp"
#include "uhuopm/model.hpp"

namespace fixtures
{

inline std::filesystem::path source_dir()
{
    return UHUOPM_SOURCE_DIR;
}

inline std::filesystem::path example_transactions()
{
    return source_dir() / "data" / "running_example" / "transactions.txt";
}

inline std::filesystem::path example_utilities()
{
    return source_dir() / "data" / "running_example" / "utility.txt";
}

/// The 10-transaction running example.
inline const uhuopm::UncertainDatabase& running_example()
{
    static const auto db = uhuopm::load_database(example_transactions(), example_utilities());
    return db;
}

struct RandomDbShape
{
    std::size_t max_items = 12;
    std::size_t max_transactions = 30;
    double prob_min = 0.1;
    double prob_max = 1.0;
};

/// Small random database built directly from TransactionSpecs (independent of
/// the library generator). Probabilities carry two decimals, utilities are
/// integers in [1, 20], quantities in [1, 6].
inline uhuopm::UncertainDatabase random_db(std::uint64_t seed, const RandomDbShape& shape = {})
{
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    const std::size_t items = pick(2, shape.max_items);
    const std::size_t transactions = pick(1, shape.max_transactions);

    uhuopm::UtilityTable table;
    for (std::size_t i = 0; i < items; ++i)
        table.set("i" + std::to_string(i), static_cast<double>(pick(1, 20)));

    const int lo = static_cast<int>(shape.prob_min * 100 + 0.5);
    const int hi = static_cast<int>(shape.prob_max * 100 + 0.5);
    std::vector<uhuopm::TransactionSpec> rows;
    for (std::size_t t = 0; t < transactions; ++t) {
        std::vector<std::size_t> ids(items);
        for (std::size_t i = 0; i < items; ++i)
            ids[i] = i;
        std::shuffle(ids.begin(), ids.end(), rng);
        ids.resize(pick(1, std::min<std::size_t>(items, 7)));
        uhuopm::TransactionSpec row;
        for (const auto id : ids) {
            const double p = std::uniform_int_distribution<int>(lo, hi)(rng) / 100.0;
            row.occurrences.push_back({"i" + std::to_string(id), static_cast<std::uint32_t>(pick(1, 6)), p});
        }
        rows.push_back(std::move(row));
    }
    return uhuopm::UncertainDatabase::assemble(std::move(rows), std::move(table));
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("uhuopm_test_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& content)
{
    std::ofstream out(p, std::ios::binary);
    out << content;
}

} // namespace fixtures
