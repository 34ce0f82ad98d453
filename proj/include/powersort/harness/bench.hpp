#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "powersort/harness/generator.hpp"
#include "powersort/policy.hpp"
#include "powersort/stats.hpp"

namespace powersort::harness {

enum class Algo { two_way, two_way_copy_smaller, two_way_no_sentinel, four_way, four_way_no_sentinel, std_stable };

Algo parse_algo(std::string_view name);
std::string_view to_string(Algo algo);

/// Sort configuration behind an algorithm id. std-stable has none.
std::optional<Config> config_for(Algo algo, std::size_t min_run_len);

enum class ElementType { int32, record };

ElementType parse_element_type(std::string_view name);

struct Measures {
    bool time = true;
    bool merge_cost = true;
    bool comparisons = true;
    bool scanned = true;

    bool any_counter() const { return merge_cost || comparisons || scanned; }
};

/// Parses a comma-separated subset of {time, mergecost, comparisons, scanned}.
Measures parse_measures(std::string_view list);

struct BenchSpec {
    std::vector<Algo> algos;
    GeneratorSpec input;  // input.seed is the base seed
    std::uint64_t trials = 1;
    std::size_t min_run_len = 24;
    Measures measures;
    ElementType element = ElementType::int32;
    unsigned threads = 1;
};

struct BenchRow {
    Algo algo = Algo::four_way;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::optional<std::uint64_t> time_ns;
    std::optional<SortStats> stats;
    double entropy_bits = 0;
    bool verified = false;
    std::string error;
};

/// Runs every (trial, algorithm) pair. All algorithms of one trial sort the
/// same input, generated with trial_seed(spec.input.seed, trial). Results are
/// checked after the timed region: sorted, a permutation of the input, and
/// stable for records.
std::vector<BenchRow> run_benchmark(const BenchSpec& spec);

inline constexpr std::string_view kCsvHeader =
    "algo,n,seed,trial,time_ns,comparisons,merge_cost,buffer_cost,moves,max_stack,runs,merges2,merges3,"
    "merges4,scanned_estimate,entropy_bits";

/// Header plus one line per row. Columns that were not measured are left empty.
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows, const Measures& measures);

/// Worker count from POWERSORT_THREADS (default: hardware concurrency).
unsigned threads_from_env();

}  // namespace powersort::harness
