#include <doctest.h>

#include <array>
#include <sstream>

#include "support/fixtures.hpp"
#include "uhuopm/bench.hpp"
#include "uhuopm/cli.hpp"

namespace
{

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "uhuopm");
    std::ostringstream out, err;
    const int code = uhuopm::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> example_args(const std::string& cmd, const std::string& a, const std::string& b,
                                      const std::string& g)
{
    return {cmd,       "--data", fixtures::example_transactions().string(), "--utility",
            fixtures::example_utilities().string(), "--alpha", a, "--beta", b, "--gamma", g};
}

/// Drops the runtime_ms column from bench CSV.
std::string without_runtime(const std::string& csv)
{
    std::istringstream in(csv);
    std::string out;
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cols;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');)
            cols.push_back(c);
        REQUIRE(cols.size() == 10);
        cols.erase(cols.begin() + 6);
        for (const auto& c : cols)
            out += c + ',';
        out += '\n';
    }
    return out;
}

std::vector<std::string> csv_column(const std::string& csv, std::size_t col)
{
    std::istringstream in(csv);
    std::vector<std::string> values;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string c;
        for (std::size_t i = 0; i <= col; ++i)
            std::getline(ss, c, ',');
        values.push_back(c);
    }
    return values;
}

} // namespace

TEST_CASE("cli mine")
{
    const auto r = run(example_args("mine", "0.8", "0.6", "0.3"));
    CHECK(r.code == 0);
    CHECK(r.out == "c #SUP: 8 #PRO: 5.4000 #UO: 0.6468\n");

    SUBCASE("repeated runs are byte-identical")
    {
        auto args = example_args("mine", "0.2", "0.2", "0.05");
        CHECK(run(args).out == run(args).out);
        args.push_back("--threads");
        args.push_back("3");
        CHECK(run(args).out == run(example_args("mine", "0.2", "0.2", "0.05")).out);
    }

    SUBCASE("items are printed in mining order")
    {
        const auto out = run(example_args("mine", "0.3", "0.3", "0.05")).out;
        CHECK(out.find("b c #SUP: 3 #PRO: 1.4500 #UO: 0.6554\n") != std::string::npos);
        CHECK(out.find("\nb #SUP") == std::string::npos);
    }

    SUBCASE("csv and json")
    {
        auto csv = example_args("mine", "0.8", "0.6", "0.3");
        csv.insert(csv.end(), {"--format", "csv"});
        CHECK(run(csv).out == "pattern,support,probability,utility_occupancy\nc,8,5.4000,0.6468\n");
        auto json = example_args("mine", "0.8", "0.6", "0.3");
        json.insert(json.end(), {"--format", "json"});
        const auto j = run(json).out;
        CHECK(j.find("\"items\"") != std::string::npos);
        CHECK(j.find("0.6468") != std::string::npos);
    }

    SUBCASE("output and stats files")
    {
        const auto dir = fixtures::temp_dir("cli_mine");
        auto args = example_args("mine", "0.8", "0.6", "0.3");
        args.insert(args.end(), {"--output", (dir / "p.txt").string(), "--stats", (dir / "s.txt").string()});
        const auto rr = run(args);
        CHECK(rr.code == 0);
        CHECK(rr.out.empty());
        CHECK(fixtures::read_file(dir / "p.txt") == "c #SUP: 8 #PRO: 5.4000 #UO: 0.6468\n");
        const auto stats = fixtures::read_file(dir / "s.txt");
        CHECK(stats.find("visited_nodes=") != std::string::npos);
        CHECK(stats.find("patterns_found=1\n") != std::string::npos);
    }
}

TEST_CASE("cli exit codes")
{
    CHECK(run(example_args("mine", "1.1", "0.5", "0.5")).code == 2);
    CHECK(run(example_args("mine", "0.5", "0", "0.5")).code == 2);
    CHECK(run({"mine"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);

    auto args = example_args("mine", "0.5", "0.5", "0.5");
    args[4] = "/nonexistent/utility.txt";
    const auto r = run(args);
    CHECK(r.code == 1);
    CHECK(r.err.find("/nonexistent/utility.txt") != std::string::npos);

    const auto dir = fixtures::temp_dir("cli_bad");
    fixtures::write_file(dir / "t.txt", "a:0:0.5\n");
    fixtures::write_file(dir / "u.txt", "a 1\n");
    const auto bad = run({"mine", "--data", (dir / "t.txt").string(), "--utility", (dir / "u.txt").string(),
                          "--alpha", "0.5", "--beta", "0.5", "--gamma", "0.5"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find(":1:3:") != std::string::npos);
}

TEST_CASE("cli oracle")
{
    for (const auto& th : std::vector<std::array<const char*, 3>>{{"0.8", "0.6", "0.3"}, {"0.3", "0.3", "0.05"},
                                                                  {"0.1", "0.1", "0.0"}})
        CHECK(run(example_args("oracle", th[0], th[1], th[2])).out ==
              run(example_args("mine", th[0], th[1], th[2])).out);

    SUBCASE("max-len 1 reports single items only")
    {
        auto args = example_args("oracle", "0.1", "0.1", "0.0");
        args.insert(args.end(), {"--max-len", "1"});
        const auto out = run(args).out;
        std::istringstream in(out);
        int lines = 0;
        for (std::string line; std::getline(in, line); ++lines)
            CHECK(line.find(' ') == line.find(" #SUP"));
        CHECK(lines > 0);
    }

    SUBCASE("budget exhaustion")
    {
        const auto dir = fixtures::temp_dir("cli_budget");
        CHECK(run({"generate", "--items", "20", "--transactions", "50", "--out-data", (dir / "t.txt").string(),
                   "--out-utility", (dir / "u.txt").string()})
                  .code == 0);
        const auto r = run({"oracle", "--data", (dir / "t.txt").string(), "--utility", (dir / "u.txt").string(),
                            "--alpha", "0.1", "--beta", "0.1", "--gamma", "0.0", "--budget", "10"});
        CHECK(r.code == 3);
    }
}

TEST_CASE("cli stats")
{
    const auto r = run({"stats", "--data", fixtures::example_transactions().string(), "--utility",
                        fixtures::example_utilities().string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("transactions=10\n") != std::string::npos);
    CHECK(r.out.find("items=5\n") != std::string::npos);
    CHECK(r.out.find("max_length=5\n") != std::string::npos);

    const auto dir = fixtures::temp_dir("cli_stats");
    fixtures::write_file(dir / "t.txt", "");
    fixtures::write_file(dir / "u.txt", "a 1\n");
    const auto empty = run({"stats", "--data", (dir / "t.txt").string(), "--utility", (dir / "u.txt").string()});
    CHECK(empty.code == 0);
    CHECK(empty.out.find("transactions=0\n") != std::string::npos);
}

TEST_CASE("cli generate and augment")
{
    const auto dir = fixtures::temp_dir("cli_gen");
    const std::vector<std::string> gen{"generate", "--seed", "42", "--transactions", "30", "--items", "10",
                                       "--avg-length", "4", "--out-data", (dir / "t.txt").string(),
                                       "--out-utility", (dir / "u.txt").string()};
    REQUIRE(run(gen).code == 0);
    const auto golden = fixtures::source_dir() / "tests" / "data";
    CHECK(fixtures::read_file(dir / "t.txt") == fixtures::read_file(golden / "generated_s42_tx.txt"));
    CHECK(fixtures::read_file(dir / "u.txt") == fixtures::read_file(golden / "generated_s42_ut.txt"));

    fixtures::write_file(dir / "plain.txt", "1 2 3\n3 4\n");
    const auto r = run({"augment", "--plain", (dir / "plain.txt").string(), "--seed", "3", "--out-data",
                        (dir / "at.txt").string(), "--out-utility", (dir / "au.txt").string()});
    CHECK(r.code == 0);
    const auto db = uhuopm::load_database(dir / "at.txt", dir / "au.txt");
    CHECK(db.size() == 2);
    CHECK(db.item_count() == 4);

    CHECK(run({"generate", "--prob-min", "0", "--out-data", (dir / "x.txt").string(), "--out-utility",
               (dir / "y.txt").string()})
              .code == 2);
}

TEST_CASE("cli bench")
{
    const auto dir = fixtures::temp_dir("cli_bench");
    const std::string dataset = fixtures::example_transactions().string() + "," + fixtures::example_utilities().string();

    SUBCASE("presets agree on pattern counts")
    {
        const auto r = run({"bench", "--dataset", dataset, "--alpha", "0.2,0.3,0.5", "--beta", "0.3", "--gamma",
                            "0.05", "--strategies", "full,s12,s13,s1"});
        REQUIRE(r.code == 0);
        CHECK(r.out.rfind(std::string(uhuopm::kBenchCsvHeader) + "\n", 0) == 0);
        const auto patterns = csv_column(r.out, 9);
        const auto alphas = csv_column(r.out, 1);
        REQUIRE(patterns.size() == 12);
        for (std::size_t i = 0; i < patterns.size(); i += 4)
            for (std::size_t k = 1; k < 4; ++k) {
                CHECK(patterns[i + k] == patterns[i]);
                CHECK(alphas[i + k] == alphas[i]);
            }
    }

    SUBCASE("runs differ only in runtime")
    {
        const std::vector<std::string> args{"bench", "--dataset", dataset, "--alpha", "0.3", "--beta", "0.3",
                                            "--gamma", "0,0.05,0.1", "--reps", "2"};
        const auto a = run(args);
        const auto b = run(args);
        REQUIRE(a.code == 0);
        CHECK(without_runtime(a.out) == without_runtime(b.out));
        CHECK(csv_column(a.out, 3) == std::vector<std::string>{"0", "0", "0.05", "0.05", "0.1", "0.1"});
    }

    SUBCASE("plan file")
    {
        fixtures::write_file(dir / "plan.txt", "# sweep\ndataset = " + dataset +
                                                   "\nalpha = 0.3\nbeta = 0.2,0.4\ngamma = 0.05\n"
                                                   "strategies = full,s1\nrepetitions = 1\n");
        const auto r = run({"bench", "--plan", (dir / "plan.txt").string(), "--output", (dir / "o.csv").string()});
        CHECK(r.code == 0);
        CHECK(csv_column(fixtures::read_file(dir / "o.csv"), 4) ==
              std::vector<std::string>{"full", "s1", "full", "s1"});
    }

    SUBCASE("two varying parameters are rejected")
    {
        CHECK(run({"bench", "--dataset", dataset, "--alpha", "0.2,0.3", "--beta", "0.2,0.3", "--gamma", "0.05"})
                  .code == 2);
        CHECK(run({"bench", "--dataset", dataset, "--alpha", "0.2", "--beta", "0.2", "--gamma", "0.05",
                   "--strategies", "s2"})
                  .code == 2);
    }
}
