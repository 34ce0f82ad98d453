#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "powersort/harness/bench.hpp"
#include "powersort/harness/generator.hpp"
#include "powersort/oracle.hpp"
#include "powersort/stats.hpp"

using namespace powersort::harness;
namespace po = powersort::oracle;

namespace {

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const std::size_t comma = std::min(line.find(',', pos), line.size());
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

}  // namespace

TEST_CASE("sorted and reverse generators") {
    CHECK(generate({InputKind::sorted, 5, 0, 1, 0}) == std::vector<std::int64_t>{0, 1, 2, 3, 4});
    CHECK(generate({InputKind::reverse, 3, 0, 1, 0}) == std::vector<std::int64_t>{2, 1, 0});
    CHECK_THROWS_AS(generate({InputKind::sorted, 0, 0, 1, 0}), std::invalid_argument);
}

TEST_CASE("random permutation is a permutation and seed-deterministic") {
    const GeneratorSpec spec{InputKind::random_permutation, 1000, 0, 99, 0};
    auto a = generate(spec);
    CHECK(a == generate(spec));
    auto other = spec;
    other.seed = 100;
    CHECK(a != generate(other));
    std::sort(a.begin(), a.end());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == static_cast<std::int64_t>(i));
}

TEST_CASE("random runs realize the sampled profile") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const GeneratorSpec spec{InputKind::random_runs, 20000, 50, seed, 0};
        const auto sampled = sample_run_lengths(spec);
        auto keys = generate(spec);
        CHECK(keys.size() == spec.n);
        for (auto k : keys) CHECK(k <= kMaxKey);
        // Interior runs of length one merge with a neighbour by construction of
        // run detection; skip those samples.
        if (std::any_of(sampled.begin(), sampled.end() - 1, [](auto l) { return l < 2; })) continue;
        CHECK(po::detect_runs(std::span<std::int64_t>(keys)) == sampled);
    }
}

TEST_CASE("geometric sampling has the requested mean") {
    Rng rng(5);
    double sum = 0;
    const int draws = 200000;
    for (int i = 0; i < draws; ++i) sum += static_cast<double>(rng.geometric(1.0 / 40));
    CHECK(std::abs(sum / draws - 40.0) < 0.5);
    CHECK(rng.geometric(1.0) == 1);
}

TEST_CASE("random runs with mean length 1000 at n = 1e6 give about 1000 runs") {
    double total = 0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s) {
        auto keys = generate({InputKind::random_runs, 1000000, 1000, static_cast<std::uint64_t>(s), 0});
        total += static_cast<double>(po::detect_runs(std::span<std::int64_t>(keys)).size());
    }
    const double mean = total / seeds;
    CHECK(mean > 900);
    CHECK(mean < 1100);
}

TEST_CASE("duplicate-heavy generators stay in the key range") {
    for (auto kind : {InputKind::random_runs, InputKind::random_permutation, InputKind::sorted, InputKind::reverse}) {
        const auto keys = generate({kind, 777, 0, 3, 5});
        CHECK(keys.size() == 777);
        for (auto k : keys) {
            CHECK(k >= 0);
            CHECK(k < 5);
        }
    }
}

TEST_CASE("rng bounded draws are in range and reproducible") {
    Rng a(1, 2), b(1, 2), c(1, 3);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.below(7);
        CHECK(x < 7);
        CHECK(x == b.below(7));
        if (c.below(7) != x) differs = true;
    }
    CHECK(differs);
}

TEST_CASE("parsers") {
    CHECK(parse_algo("4way-nosentinel") == Algo::four_way_no_sentinel);
    CHECK(to_string(Algo::two_way_copy_smaller) == "2way-copy-smaller");
    CHECK_THROWS_AS(parse_algo("3way"), std::invalid_argument);
    CHECK(parse_input_kind("random-permutation") == InputKind::random_permutation);
    const Measures m = parse_measures("time,scanned");
    CHECK(m.time);
    CHECK(m.scanned);
    CHECK_FALSE(m.merge_cost);
    CHECK_THROWS_AS(parse_measures("time,cache"), std::invalid_argument);
    CHECK_FALSE(config_for(Algo::std_stable, 24).has_value());
    CHECK(config_for(Algo::four_way, 24)->k == 4);
}

TEST_CASE("benchmark row count, reproducibility and CSV layout") {
    BenchSpec spec;
    spec.algos = {Algo::two_way, Algo::four_way};
    spec.input = {InputKind::random_runs, 100000, 0, 7, 0};
    spec.trials = 10;
    spec.threads = 2;
    const auto rows = run_benchmark(spec);
    CHECK(rows.size() == 20);
    for (const auto& r : rows) CHECK(r.verified);

    std::ostringstream out;
    write_csv(out, rows, spec.measures);
    const auto text = lines(out.str());
    REQUIRE(text.size() == 21);
    CHECK(text[0] == kCsvHeader);
    CHECK(fields(text[1]).size() == fields(std::string(kCsvHeader)).size());

    const auto again = run_benchmark(spec);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(*rows[i].stats == *again[i].stats);
        CHECK(rows[i].entropy_bits == again[i].entropy_bits);
    }
}

TEST_CASE("sorted input gives zero merge cost in every row") {
    BenchSpec spec;
    spec.algos = {Algo::two_way, Algo::two_way_copy_smaller, Algo::two_way_no_sentinel, Algo::four_way,
                  Algo::four_way_no_sentinel};
    spec.input = {InputKind::sorted, 5000, 0, 1, 0};
    spec.trials = 2;
    spec.measures = parse_measures("mergecost");
    const auto rows = run_benchmark(spec);
    std::ostringstream out;
    write_csv(out, rows, spec.measures);
    const auto text = lines(out.str());
    for (std::size_t i = 1; i < text.size(); ++i) {
        const auto f = fields(text[i]);
        CHECK(f[4].empty());  // time not measured
        CHECK(f[6] == "0");
    }
}

TEST_CASE("records verify stability and std-stable runs") {
    BenchSpec spec;
    spec.algos = {Algo::std_stable, Algo::four_way_no_sentinel, Algo::two_way_copy_smaller};
    spec.input = {InputKind::random_permutation, 3000, 0, 4, 10};
    spec.trials = 3;
    spec.element = ElementType::record;
    for (const auto& r : run_benchmark(spec)) {
        CHECK(r.verified);
        CHECK(r.stats->comparisons > 0);
    }
}

TEST_CASE("merge-cost ratio is computable from the CSV") {
    BenchSpec spec;
    spec.algos = {Algo::two_way, Algo::four_way};
    spec.input = {InputKind::random_runs, 100000, 0, 3, 0};
    spec.trials = 5;
    spec.measures = parse_measures("mergecost");
    std::ostringstream out;
    write_csv(out, run_benchmark(spec), spec.measures);
    double two = 0, four = 0;
    const auto text = lines(out.str());
    for (std::size_t i = 1; i < text.size(); ++i) {
        const auto f = fields(text[i]);
        (f[0] == "2way" ? two : four) += std::stod(f[6]);
    }
    const double ratio = four / two;
    CHECK(ratio > 0.4);
    CHECK(ratio < 0.7);
}

TEST_CASE("normalization helpers") {
    const double n = 1e6;
    CHECK(powersort::normalized_merge_cost(n * std::log2(n / 24), n, 24) == doctest::Approx(1.0));
    CHECK(powersort::normalized_merge_cost(28, 16, 1) == doctest::Approx(0.4375));
    CHECK(powersort::normalized_time(1, 1e6) == doctest::Approx(0.0502).epsilon(1e-3));
    powersort::SortStats s;
    CHECK(powersort::scanned_elements_estimate(s, 10) == 20);
    s.merge_cost = 6;
    CHECK(powersort::scanned_elements_estimate(s, 6) == 36);
}
