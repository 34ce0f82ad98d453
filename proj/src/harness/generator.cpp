#include "powersort/harness/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace powersort::harness {

namespace {

constexpr std::uint64_t kLengthStream = 0;
constexpr std::uint64_t kKeyStream = 1;

std::uint64_t mean_run_length(const GeneratorSpec& spec) {
    if (spec.expected_run_len > 0) return spec.expected_run_len;
    return std::max<std::uint64_t>(1, std::llround(std::sqrt(static_cast<double>(spec.n))));
}

void check(const GeneratorSpec& spec) {
    if (spec.n == 0) throw std::invalid_argument("generate: n must be positive");
}

std::vector<std::int64_t> random_runs(const GeneratorSpec& spec) {
    const std::vector<std::uint64_t> lengths = sample_run_lengths(spec);
    const std::int64_t hi = spec.distinct_keys ? static_cast<std::int64_t>(spec.distinct_keys) - 1 : kMaxKey;
    Rng rng(spec.seed, kKeyStream);
    std::vector<std::int64_t> keys;
    keys.reserve(spec.n);
    for (std::uint64_t len : lengths) {
        const std::size_t start = keys.size();
        for (std::uint64_t i = 0; i < len; ++i) keys.push_back(static_cast<std::int64_t>(rng.below(hi + 1)));
        std::sort(keys.begin() + static_cast<std::ptrdiff_t>(start), keys.end());
        if (start == 0 || hi == 0) continue;
        // Force a descent at the boundary so neighbouring runs stay separate.
        std::int64_t& prev_last = keys[start - 1];
        std::int64_t& first = keys[start];
        if (first < prev_last) continue;
        if (prev_last > 0) {
            first = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(prev_last)));
        } else {
            prev_last = hi;
            first = 0;
        }
    }
    return keys;
}

}  // namespace

InputKind parse_input_kind(std::string_view name) {
    if (name == "random-runs") return InputKind::random_runs;
    if (name == "random-permutation") return InputKind::random_permutation;
    if (name == "sorted") return InputKind::sorted;
    if (name == "reverse") return InputKind::reverse;
    throw std::invalid_argument("unknown input kind: " + std::string(name));
}

std::string_view to_string(InputKind kind) {
    switch (kind) {
        case InputKind::random_runs: return "random-runs";
        case InputKind::random_permutation: return "random-permutation";
        case InputKind::sorted: return "sorted";
        case InputKind::reverse: return "reverse";
    }
    return "?";
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial) {
    return splitmix64(base_seed + splitmix64(trial));
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(splitmix64(seed ^ splitmix64(stream))) {}

std::uint64_t Rng::below(std::uint64_t bound) {
    using wide = unsigned __int128;
    wide m = wide(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = wide(next()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double Rng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::geometric(double p) {
    if (p >= 1.0) return 1;
    const double u = uniform01();
    return 1 + static_cast<std::uint64_t>(std::floor(std::log1p(-u) / std::log1p(-p)));
}

std::vector<std::uint64_t> sample_run_lengths(const GeneratorSpec& spec) {
    check(spec);
    const double p = 1.0 / static_cast<double>(mean_run_length(spec));
    Rng rng(spec.seed, kLengthStream);
    std::vector<std::uint64_t> lengths;
    std::uint64_t remaining = spec.n;
    while (remaining > 0) {
        const std::uint64_t len = std::min(remaining, rng.geometric(p));
        lengths.push_back(len);
        remaining -= len;
    }
    return lengths;
}

std::vector<std::int64_t> generate(const GeneratorSpec& spec) {
    check(spec);
    const std::uint64_t n = spec.n;
    const std::uint64_t d = spec.distinct_keys;
    std::vector<std::int64_t> keys(n);
    switch (spec.kind) {
        case InputKind::random_runs:
            return random_runs(spec);
        case InputKind::random_permutation: {
            std::iota(keys.begin(), keys.end(), std::int64_t{0});
            Rng rng(spec.seed, kKeyStream);
            for (std::uint64_t i = n - 1; i > 0; --i) std::swap(keys[i], keys[rng.below(i + 1)]);
            if (d) for (auto& k : keys) k %= static_cast<std::int64_t>(d);
            break;
        }
        case InputKind::sorted:
            for (std::uint64_t i = 0; i < n; ++i)
                keys[i] = static_cast<std::int64_t>(d ? static_cast<std::uint64_t>(
                                                            static_cast<unsigned __int128>(i) * d / n)
                                                      : i);
            break;
        case InputKind::reverse:
            for (std::uint64_t i = 0; i < n; ++i) {
                const std::uint64_t j = n - 1 - i;
                keys[i] = static_cast<std::int64_t>(
                    d ? static_cast<std::uint64_t>(static_cast<unsigned __int128>(j) * d / n) : j);
            }
            break;
    }
    return keys;
}

std::vector<std::int32_t> generate_ints(const GeneratorSpec& spec) {
    const std::vector<std::int64_t> keys = generate(spec);
    return {keys.begin(), keys.end()};
}

std::vector<Record> generate_records(const GeneratorSpec& spec) {
    const std::vector<std::int64_t> keys = generate(spec);
    std::vector<Record> records(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) records[i] = {keys[i], i};
    return records;
}

}  // namespace powersort::harness
