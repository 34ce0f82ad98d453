#include "powersort/harness/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "powersort/oracle.hpp"

namespace powersort::harness {

namespace {

std::uint64_t key_of(std::int32_t v) { return static_cast<std::uint64_t>(static_cast<std::int64_t>(v)); }
std::uint64_t key_of(const Record& r) { return static_cast<std::uint64_t>(r.key); }
std::uint64_t fingerprint(std::int32_t v) { return splitmix64(key_of(v)); }
std::uint64_t fingerprint(const Record& r) { return splitmix64(key_of(r) ^ splitmix64(r.index)); }

/// Order-independent multiset checksum.
template <class T>
std::pair<std::uint64_t, std::uint64_t> checksum(const std::vector<T>& v) {
    std::uint64_t sum = 0, mixed = 0;
    for (const T& x : v) {
        const std::uint64_t f = fingerprint(x);
        sum += f;
        mixed += splitmix64(f);
    }
    return {sum, mixed};
}

template <class T>
std::string verify(const std::vector<T>& sorted, std::pair<std::uint64_t, std::uint64_t> expected) {
    if (!std::is_sorted(sorted.begin(), sorted.end())) return "not sorted";
    if (checksum(sorted) != expected) return "not a permutation of the input";
    if constexpr (std::is_same_v<T, Record>) {
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (sorted[i - 1].key == sorted[i].key && sorted[i - 1].index > sorted[i].index) return "not stable";
    }
    return {};
}

template <class T>
void sort_with(Algo algo, std::vector<T>& v, std::size_t min_run_len) {
    if (auto config = config_for(algo, min_run_len))
        stable_sort_fast(std::span<T>(v), *config);
    else
        std::stable_sort(v.begin(), v.end());
}

template <class T>
SortStats instrumented_sort(Algo algo, std::vector<T>& v, std::size_t min_run_len) {
    if (auto config = config_for(algo, min_run_len)) return stable_sort_with(std::span<T>(v), *config);
    SortStats stats;
    CountingCompare<std::less<>> counting{{}, &stats.comparisons};
    std::stable_sort(v.begin(), v.end(), counting);
    return stats;
}

template <class T>
std::vector<T> make_input(const GeneratorSpec& spec) {
    if constexpr (std::is_same_v<T, Record>)
        return generate_records(spec);
    else
        return generate_ints(spec);
}

template <class T>
void run_trial(const BenchSpec& spec, std::uint64_t trial, BenchRow* rows) {
    GeneratorSpec input = spec.input;
    input.seed = trial_seed(spec.input.seed, trial);
    const std::vector<T> original = make_input<T>(input);
    const auto expected = checksum(original);

    std::vector<T> scratch = original;
    const double h = oracle::entropy(oracle::detect_runs(std::span<T>(scratch), spec.min_run_len));

    for (std::size_t a = 0; a < spec.algos.size(); ++a) {
        BenchRow& row = rows[a];
        row.algo = spec.algos[a];
        row.n = spec.input.n;
        row.seed = spec.input.seed;
        row.trial = trial;
        row.entropy_bits = h;
        try {
            std::string error;
            if (spec.measures.time) {
                std::vector<T> v = original;
                const auto start = std::chrono::steady_clock::now();
                sort_with(row.algo, v, spec.min_run_len);
                const auto stop = std::chrono::steady_clock::now();
                row.time_ns = static_cast<std::uint64_t>(
                    std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
                error = verify(v, expected);
            }
            if (error.empty() && spec.measures.any_counter()) {
                std::vector<T> v = original;
                row.stats = instrumented_sort(row.algo, v, spec.min_run_len);
                error = verify(v, expected);
            }
            row.error = error;
            row.verified = error.empty();
        } catch (const std::exception& e) {
            row.error = e.what();
            row.verified = false;
        }
    }
}

}  // namespace

Algo parse_algo(std::string_view name) {
    if (name == "2way") return Algo::two_way;
    if (name == "2way-copy-smaller") return Algo::two_way_copy_smaller;
    if (name == "2way-nosentinel") return Algo::two_way_no_sentinel;
    if (name == "4way") return Algo::four_way;
    if (name == "4way-nosentinel") return Algo::four_way_no_sentinel;
    if (name == "std-stable") return Algo::std_stable;
    throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

std::string_view to_string(Algo algo) {
    switch (algo) {
        case Algo::two_way: return "2way";
        case Algo::two_way_copy_smaller: return "2way-copy-smaller";
        case Algo::two_way_no_sentinel: return "2way-nosentinel";
        case Algo::four_way: return "4way";
        case Algo::four_way_no_sentinel: return "4way-nosentinel";
        case Algo::std_stable: return "std-stable";
    }
    return "?";
}

std::optional<Config> config_for(Algo algo, std::size_t min_run_len) {
    Config c;
    c.min_run_len = min_run_len;
    switch (algo) {
        case Algo::two_way: c.k = 2; c.kernel = MergeKernel::sentinel; return c;
        case Algo::two_way_copy_smaller: c.k = 2; c.kernel = MergeKernel::copy_smaller; return c;
        case Algo::two_way_no_sentinel: c.k = 2; c.kernel = MergeKernel::no_sentinel; return c;
        case Algo::four_way: c.k = 4; c.kernel = MergeKernel::sentinel; return c;
        case Algo::four_way_no_sentinel: c.k = 4; c.kernel = MergeKernel::no_sentinel; return c;
        case Algo::std_stable: return std::nullopt;
    }
    return std::nullopt;
}

ElementType parse_element_type(std::string_view name) {
    if (name == "int") return ElementType::int32;
    if (name == "record") return ElementType::record;
    throw std::invalid_argument("unknown element type: " + std::string(name));
}

Measures parse_measures(std::string_view list) {
    Measures m{false, false, false, false};
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const std::size_t comma = std::min(list.find(',', pos), list.size());
        const std::string_view item = list.substr(pos, comma - pos);
        if (item == "time")
            m.time = true;
        else if (item == "mergecost")
            m.merge_cost = true;
        else if (item == "comparisons")
            m.comparisons = true;
        else if (item == "scanned")
            m.scanned = true;
        else
            throw std::invalid_argument("unknown measure: " + std::string(item));
        pos = comma + 1;
    }
    return m;
}

unsigned threads_from_env() {
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("POWERSORT_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) threads = std::min(threads, static_cast<unsigned>(cap));
    }
    return threads;
}

std::vector<BenchRow> run_benchmark(const BenchSpec& spec) {
    if (spec.algos.empty()) throw std::invalid_argument("run_benchmark: no algorithms");
    if (spec.trials == 0) throw std::invalid_argument("run_benchmark: trials must be positive");
    std::vector<BenchRow> rows(spec.algos.size() * spec.trials);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t t; (t = next++) < spec.trials;) {
            BenchRow* out = rows.data() + t * spec.algos.size();
            if (spec.element == ElementType::record)
                run_trial<Record>(spec, t, out);
            else
                run_trial<std::int32_t>(spec, t, out);
        }
    };
    const unsigned threads =
        static_cast<unsigned>(std::clamp<std::uint64_t>(spec.threads, 1, spec.trials));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows, const Measures& measures) {
    out << kCsvHeader << '\n';
    for (const BenchRow& r : rows) {
        out << to_string(r.algo) << ',' << r.n << ',' << r.seed << ',' << r.trial << ',';
        if (r.time_ns) out << *r.time_ns;
        out << ',';
        if (r.stats && measures.comparisons) out << r.stats->comparisons;
        out << ',';
        if (r.stats && measures.merge_cost) {
            const SortStats& s = *r.stats;
            out << s.merge_cost << ',' << s.buffer_cost << ',' << s.moves << ',' << s.max_stack_height << ','
                << s.runs_detected << ',' << s.merges_with_arity(2) << ',' << s.merges_with_arity(3) << ','
                << s.merges_with_arity(4) << ',';
        } else {
            out << ",,,,,,,,";
        }
        if (r.stats && measures.scanned) out << scanned_elements_estimate(*r.stats, r.n);
        out << ',' << std::setprecision(10) << r.entropy_bits << '\n';
    }
}

}  // namespace powersort::harness
