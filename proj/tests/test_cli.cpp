#include "doctest.h"
#include "oracles.hpp"

#include "pileshuffle/cli.hpp"
#include "pileshuffle/io.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace pileshuffle;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args, const std::string& input = {})
{
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content)
{
    const auto path = std::filesystem::temp_directory_path() / ("pileshuffle_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

bool contains(const std::string& haystack, const std::string& needle)
{
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("usage errors")
{
    CHECK(run({}).code == cli::kUsageError);
    CHECK(run({"bogus"}).code == cli::kUsageError);
    CHECK(run({"sort", "1", "1"}).code == cli::kUsageError);
    CHECK(contains(run({"sort", "1", "1"}).err, "value 1"));
    CHECK(run({"sort", "--mode", "nope", "1"}).code == cli::kUsageError);
    CHECK(run({"prob", "0", "2"}).code == cli::kUsageError);
    CHECK(run({"prob", "5", "2", "--mode", "dealer"}).code == cli::kUsageError);
    CHECK(run({"shuffle", "1", "2"}).code == cli::kUsageError);
    CHECK(run({"shuffle", "--plan", "/nonexistent/plan.json", "1"}).code == cli::kUsageError);
    CHECK(run({"--format", "xml", "stats", "1"}).code == cli::kUsageError);
    CHECK(run({"--help"}).code == cli::kSuccess);
}

TEST_CASE("stats")
{
    const auto r = run({"stats", "3", "6", "4", "1", "5", "2"});
    REQUIRE(r.code == cli::kSuccess);
    CHECK(contains(r.out, "readings: 3\n"));
    CHECK(contains(r.out, "ascending_runs: 3\n"));
    CHECK(contains(r.out, "deck: 3 6 4 1 5 2\n"));

    const auto piped = run({"stats"}, "3,6,4,1,5,2\n");
    CHECK(piped.out == r.out);

    const auto embedded = run({"stats", "--embedding", "2", "1", "4", "3"});
    REQUIRE(embedded.code == cli::kSuccess);
    CHECK(contains(embedded.out, "dealer_types: SS\n"));
    CHECK(contains(embedded.out, "dealer_min: 2\n"));
}

TEST_CASE("sort prints the plan and tableau")
{
    const auto r = run({"sort", "7", "3", "1", "4", "8", "5", "2", "6"});
    REQUIRE(r.code == cli::kSuccess);
    CHECK(contains(r.out, "plan.assignment: 1 1 2 2 2 2 3 3\n"));
    CHECK(contains(r.out, "plan.types: QQQ\n"));
    CHECK(contains(r.out, "    | 1 2 3 4 5 6 7 8\n"
                          "----+----------------\n"
                          "P1 Q|     1       2\n"
                          "P2 Q|   3   4   5   6\n"
                          "P3 Q| 7       8\n"));

    const auto s = run({"--format", "structured", "--tableau", "sort", "7", "3", "1", "4", "8", "5", "2", "6"});
    REQUIRE(s.code == cli::kSuccess);
    const Json doc = Json::parse(s.out);
    CHECK(doc["plan"]["piles_used"] == 3);
    CHECK(doc["tableau"]["rows"].size() == 3);
}

TEST_CASE("sort modes and exit codes")
{
    const auto qs = run({"--embedding", "sort", "--mode", "types:QS", "2", "1", "4", "3"});
    CHECK(qs.code == cli::kInfeasible);
    CHECK(contains(qs.out, "feasible: false\n"));
    CHECK(contains(qs.out, "position: 3\n"));

    const auto also_flag_after = run({"sort", "--embedding", "--mode", "types:QS", "2", "1", "4", "3"});
    CHECK(also_flag_after.code == cli::kInfeasible);

    CHECK(run({"sort", "--mode", "queues", "--budget", "2", "7", "3", "1", "4", "8", "5", "2", "6"}).code ==
          cli::kInfeasible);
    CHECK(run({"sort", "--mode", "queues", "--budget", "3", "7", "3", "1", "4", "8", "5", "2", "6"}).code ==
          cli::kSuccess);
    CHECK(run({"sort", "--mode", "dealer", "--rounds", "1", "1", "2", "3"}).code == cli::kSuccess);
    CHECK(run({"sort", "--mode", "dealer", "--rounds", "1", "2", "1", "4", "3"}).code == cli::kInfeasible);
    CHECK(run({"--search-budget", "1", "sort", "--mode", "dealer", "--rounds", "1", "3", "2", "1"}).code ==
          cli::kBudgetExceeded);
    CHECK(run({"sort", "--mode", "queues", "--rounds", "2,2", "5", "4", "3", "2", "1"}).code == cli::kInfeasible);
    const auto multi = run({"--tableau", "sort", "--mode", "stacks", "--rounds", "2,2", "3", "1", "4", "2", "5"});
    CHECK(multi.code == cli::kSuccess);
    CHECK(contains(multi.out, "round 2:\n"));
    CHECK(run({"sort", "--mode", "types:QS,SQ", "4", "3", "2", "1"}).code == cli::kSuccess);
    CHECK(run({"sort", "--mode", "types:QS/SQ", "--rounds", "2,3", "1", "2"}).code == cli::kUsageError);
}

TEST_CASE("shuffle applies a plan file")
{
    const auto plan = temp_file("stack_example.json", R"({"piles_used":3,"types":"SSSS","assignment":[4,2,1,2,4,2]})");
    const auto r = run({"shuffle", "--plan", plan, "4", "5", "6", "1", "2", "3"});
    REQUIRE(r.code == cli::kSuccess);
    CHECK(r.out == "3 2 6 4 1 5\n");

    const auto wrong_size = run({"shuffle", "--plan", plan, "1", "2", "3"});
    CHECK(wrong_size.code == cli::kUsageError);

    const auto broken = temp_file("broken.json", "{not json");
    CHECK(run({"shuffle", "--plan", broken, "1"}).code == cli::kUsageError);
}

TEST_CASE("sort then shuffle restores the identity")
{
    std::mt19937_64 rng(2024);
    const std::vector<std::vector<std::string>> modes{
        {"--mode", "queues"}, {"--mode", "stacks"}, {"--mode", "dealer"},
        {"--mode", "stacks", "--rounds", "3,3"}, {"--mode", "dealer", "--rounds", "2,3"}};
    int sorted = 0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 1 + rng() % 9;
        const Permutation p = oracle::random_permutation(n, rng);
        std::vector<std::string> deck;
        for (auto v : p.sequence()) deck.push_back(std::to_string(v));

        std::vector<std::string> args{"--format", "structured", "sort"};
        const auto& mode = modes[static_cast<std::size_t>(i) % modes.size()];
        args.insert(args.end(), mode.begin(), mode.end());
        args.insert(args.end(), deck.begin(), deck.end());
        const auto r = run(args);
        if (r.code == cli::kInfeasible) continue;
        REQUIRE(r.code == cli::kSuccess);

        const auto path = temp_file("roundtrip.json", Json::parse(r.out)["plan"].dump());
        std::vector<std::string> shuffle_args{"shuffle", "--plan", path};
        shuffle_args.insert(shuffle_args.end(), deck.begin(), deck.end());
        const auto s = run(shuffle_args);
        REQUIRE(s.code == cli::kSuccess);
        std::string expected;
        for (std::size_t k = 1; k <= n; ++k) expected += (k > 1 ? " " : "") + std::to_string(k);
        REQUIRE(s.out == expected + "\n");
        ++sorted;
    }
    CHECK(sorted >= 80);
}

TEST_CASE("prob")
{
    const auto r = run({"prob", "3", "2"});
    REQUIRE(r.code == cli::kSuccess);
    CHECK(contains(r.out, "exact: 5/6\n"));

    const auto a = run({"--seed", "9", "prob", "40", "20", "--mc-samples", "20000", "--threads", "3"});
    const auto b = run({"--seed", "9", "prob", "40", "20", "--mc-samples", "20000"});
    REQUIRE(a.code == cli::kSuccess);
    CHECK(a.out == b.out);
    CHECK(contains(a.out, "mc.seed: 9\n"));

    CHECK(run({"prob", "500", "200"}).code == cli::kUsageError);
    CHECK(run({"prob", "500", "200", "--exact-limit", "500"}).code == cli::kSuccess);
    CHECK(run({"prob", "10", "3", "--mode", "dealer", "--mc-samples", "1000"}).code == cli::kSuccess);
}

TEST_CASE("text and structured outputs carry the same numbers")
{
    const auto text = run({"--seed", "4", "prob", "12", "5", "--mc-samples", "5000"});
    const auto structured = run({"--format", "structured", "--seed", "4", "prob", "12", "5", "--mc-samples", "5000"});
    const Json doc = Json::parse(structured.out);
    CHECK(contains(text.out, "exact: " + doc["exact"].get<std::string>() + "\n"));
    CHECK(contains(text.out, "float: " + doc["float"].dump() + "\n"));
    CHECK(contains(text.out, "mc.estimate: " + doc["mc"]["estimate"].dump() + "\n"));
    CHECK(contains(text.out, "mc.stderr: " + doc["mc"]["stderr"].dump() + "\n"));

    const auto st = run({"--format", "structured", "stats", "3", "6", "4", "1", "5", "2"});
    const Json sdoc = Json::parse(st.out);
    CHECK(sdoc["readings"] == 3);
    CHECK(sdoc["deck"] == Json({3, 6, 4, 1, 5, 2}));
}
