#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>

namespace powersort {

/// Counters gathered by one sort call.
///
/// merge_cost is the total size of all merge outputs. buffer_cost counts
/// elements copied into the merge buffer. element_reads/element_writes are
/// the scan-model tallies: run detection reads, buffer initialization writes,
/// and every element a merge kernel reads or writes (sentinel slots included).
struct SortStats {
    std::uint64_t comparisons = 0;
    std::uint64_t merge_cost = 0;
    std::uint64_t buffer_cost = 0;
    std::uint64_t moves = 0;
    std::uint64_t max_stack_height = 0;
    std::uint64_t runs_detected = 0;
    std::array<std::uint64_t, 3> merges_by_arity{};  // index 0,1,2 -> 2,3,4-way
    std::uint64_t element_reads = 0;
    std::uint64_t element_writes = 0;

    std::uint64_t merges_with_arity(int arity) const { return merges_by_arity.at(arity - 2); }

    std::uint64_t merges() const {
        return merges_by_arity[0] + merges_by_arity[1] + merges_by_arity[2];
    }

    std::uint64_t scan_tally() const { return element_reads + element_writes; }

    void record_merge(int arity, std::uint64_t output_len) {
        ++merges_by_arity.at(arity - 2);
        merge_cost += output_len;
    }

    friend bool operator==(const SortStats&, const SortStats&) = default;
};

/// Comparator wrapper that counts every invocation.
template <class Compare>
struct CountingCompare {
    Compare comp;
    std::uint64_t* counter;

    template <class A, class B>
    bool operator()(const A& a, const B& b) const {
        ++*counter;
        return comp(a, b);
    }
};

/// Analytic count of element accesses that miss the cache: each merge of
/// size m reads and writes its elements twice (copy to buffer, merge back),
/// plus one detection scan and one buffer initialization.
inline std::uint64_t scanned_elements_estimate(const SortStats& stats, std::uint64_t n) {
    return 4 * stats.merge_cost + 2 * n;
}

/// Merge cost relative to n lg(n / min_run_len).
inline double normalized_merge_cost(double value, double n, double min_run_len) {
    return value / (n * std::log2(n / min_run_len));
}

/// Running time in milliseconds scaled by 10^6 / (n lg n).
inline double normalized_time(double millis, double n) {
    return millis * 1e6 / (n * std::log2(n));
}

}  // namespace powersort
