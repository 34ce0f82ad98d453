#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "powersort/element.hpp"

namespace powersort::harness {

enum class InputKind { random_runs, random_permutation, sorted, reverse };

InputKind parse_input_kind(std::string_view name);
std::string_view to_string(InputKind kind);

/// Seedable description of an input distribution.
struct GeneratorSpec {
    InputKind kind = InputKind::random_runs;
    std::uint64_t n = 0;
    /// Mean run length for random-runs; 0 selects round(sqrt(n)).
    std::uint64_t expected_run_len = 0;
    std::uint64_t seed = 0;
    /// Number of distinct keys; 0 means the full key range. Small values
    /// give duplicate-heavy inputs.
    std::uint64_t distinct_keys = 0;
};

/// Keys of random-runs inputs are drawn from [0, kMaxKey]; kMaxKey is below
/// the reserved sentinel of both element types.
inline constexpr std::int64_t kMaxKey = 2147483646;

/// Pseudo-random source used by every generator.
///
/// Stream splitting: the state is a std::mt19937_64 (whose output sequence
/// is fixed by the C++ standard) seeded with splitmix64(seed ^ splitmix64(stream)).
/// Bounded integers use Lemire's multiply-and-reject method and uniform reals
/// take the top 53 bits, so sequences are identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, bound), bound >= 1.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [0, 1).
    double uniform01();
    /// Geometric on {1, 2, ...} with success probability p, by inverse transform.
    std::uint64_t geometric(double p);

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of trial `trial` derived from a base seed.
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial);

/// Integer keys following `spec`. Throws std::invalid_argument for n = 0.
std::vector<std::int64_t> generate(const GeneratorSpec& spec);

std::vector<std::int32_t> generate_ints(const GeneratorSpec& spec);

/// Records whose index field is the original position.
std::vector<Record> generate_records(const GeneratorSpec& spec);

/// Run lengths as sampled by the random-runs generator, before filling.
std::vector<std::uint64_t> sample_run_lengths(const GeneratorSpec& spec);

}  // namespace powersort::harness
