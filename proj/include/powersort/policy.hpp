#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "powersort/element.hpp"
#include "powersort/merges.hpp"
#include "powersort/power.hpp"
#include "powersort/runs.hpp"
#include "powersort/stats.hpp"

namespace powersort {

enum class MergeKernel {
    sentinel,      // 2-, 3- and 4-way kernels with +inf sentinels
    no_sentinel,   // bounds-checked 2-way; stages for 3- and 4-way
    copy_smaller,  // 2-way only: buffer the shorter run
};

struct Config {
    int k = 4;
    MergeKernel kernel = MergeKernel::sentinel;
    std::size_t min_run_len = 24;
    /// Collapse the final stack by popping up to k-1 runs per merge, instead
    /// of first normalizing the run count to 3j+1 (k = 4 only).
    bool strict_merge_down = false;
};

/// One executed merge: the participating run boundaries b0 < b1 < ... < bm.
struct MergeEvent {
    std::vector<std::size_t> bounds;

    std::size_t arity() const { return bounds.size() - 1; }
    std::size_t output_length() const { return bounds.back() - bounds.front(); }

    friend bool operator==(const MergeEvent&, const MergeEvent&) = default;
};

using MergeTrace = std::vector<MergeEvent>;

inline void validate(const Config& config) {
    if (config.k != 2 && config.k != 4) throw std::invalid_argument("powersort: k must be 2 or 4");
    if (config.min_run_len < 1) throw std::invalid_argument("powersort: min_run_len must be >= 1");
    if (config.kernel == MergeKernel::copy_smaller && config.k != 2)
        throw std::invalid_argument("powersort: copy_smaller kernel requires k = 2");
}

namespace detail {

struct StackEntry {
    std::size_t begin;
    BoundaryPower power;
};

/// The k-way Powersort merge policy over a source of runs.
///
/// `next_run(begin)` returns the weakly increasing run starting at `begin`.
/// The driver keeps a stack of (run start, power) entries whose powers weakly
/// increase from bottom to top, with a power-0 entry at the bottom.
template <bool Instrumented, class T, class Compare, class RunSource>
class Driver {
public:
    Driver(std::span<T> a, const Config& config, Compare comp, bool use_sentinels, SortStats* stats,
           MergeTrace* trace)
        : a_(a),
          n_(a.size()),
          k_(config.k),
          kernel_(config.kernel),
          strict_(config.strict_merge_down),
          use_sentinels_(use_sentinels),
          comp_(comp),
          stats_(stats),
          trace_(trace),
          buffer_(a.size() + 4),
          stack_capacity_(max_stack_height_bound(config.k, a.size())) {
        stack_.reserve(stack_capacity_ + 1);
        stack_.push_back({0, 0});
        if constexpr (Instrumented) stats_->element_writes += n_;  // buffer initialization
    }

    void sort(RunSource& next_run) {
        Run run_a = next_run(0);
        if constexpr (Instrumented) ++stats_->runs_detected;
        while (run_a.end < n_) {
            const Run run_b = next_run(run_a.end);
            if constexpr (Instrumented) ++stats_->runs_detected;
            const BoundaryPower p = node_power_unchecked(static_cast<std::uint64_t>(k_), n_, run_a.begin,
                                                         run_a.end, run_b.begin, run_b.end);
            while (stack_.back().power > p) merge_loop(run_a);
            push({run_a.begin, p});
            run_a = run_b;
        }
        merge_down(run_a);
    }

private:
    void push(StackEntry e) {
        if (stack_.size() - 1 >= stack_capacity_)
            throw std::logic_error("powersort: run stack exceeded its height bound");
        stack_.push_back(e);
        if constexpr (Instrumented)
            stats_->max_stack_height = std::max<std::uint64_t>(stats_->max_stack_height, stack_.size() - 1);
    }

    /// Merges the maximal group of equal-power entries on top of the stack
    /// with `run_a` and pops them.
    void merge_loop(Run& run_a) {
        std::size_t group = 1;
        while (stack_[stack_.size() - 1 - group].power == stack_.back().power) ++group;
        merge_top(group, run_a);
    }

    /// Merges the topmost `count` stack entries with `run_a`.
    void merge_top(std::size_t count, Run& run_a) {
        std::array<std::size_t, 5> bounds{};
        for (std::size_t i = 0; i < count; ++i) bounds[i] = stack_[stack_.size() - count + i].begin;
        bounds[count] = run_a.begin;
        bounds[count + 1] = run_a.end;
        merge(std::span<const std::size_t>(bounds.data(), count + 2));
        run_a.begin = bounds[0];
        stack_.resize(stack_.size() - count);
    }

    void merge_down(Run& run_a) {
        const std::size_t height = stack_.size() - 1;
        if (k_ == 4 && !strict_) {
            // Bring the run count to 3j+1 so that every remaining merge is 4-way.
            const std::size_t runs = height + 1;
            if (runs % 3 == 0)
                merge_top(2, run_a);
            else if (runs % 3 == 2)
                merge_top(1, run_a);
            while (stack_.size() > 1) merge_top(3, run_a);
        } else {
            while (stack_.size() > 1)
                merge_top(std::min<std::size_t>(stack_.size() - 1, static_cast<std::size_t>(k_ - 1)), run_a);
        }
    }

    void merge(std::span<const std::size_t> b) {
        if constexpr (Instrumented) {
            if (trace_) trace_->push_back({std::vector<std::size_t>(b.begin(), b.end())});
        }
        SortStats* const s = Instrumented ? stats_ : nullptr;
        const std::size_t arity = b.size() - 1;
        if constexpr (sentinel_traits<T>::available) {
            if (use_sentinels_) {
                switch (arity) {
                    case 2: merge_2way_sentinel(a_, b[0], b[1], b[2], buffer_, comp_, s); return;
                    case 3: merge_3way_sentinel(a_, b[0], b[1], b[2], b[3], buffer_, comp_, s); return;
                    default: merge_4way_sentinel(a_, b[0], b[1], b[2], b[3], b[4], buffer_, comp_, s); return;
                }
            }
        }
        if (arity == 2) {
            if (kernel_ == MergeKernel::copy_smaller)
                merge_2way_copy_smaller(a_, b[0], b[1], b[2], buffer_, comp_, s);
            else
                merge_2way_no_sentinel(a_, b[0], b[1], b[2], buffer_, comp_, s);
        } else {
            merge_by_stages(a_, b, buffer_, comp_, s);
        }
    }

    std::span<T> a_;
    std::size_t n_;
    int k_;
    MergeKernel kernel_;
    bool strict_;
    bool use_sentinels_;
    Compare comp_;
    SortStats* stats_;
    MergeTrace* trace_;
    MergeBuffer<T> buffer_;
    std::size_t stack_capacity_;
    std::vector<StackEntry> stack_;
};

/// Detects the next run and extends it to the minimum run length.
template <class T, class Compare>
struct DetectingRunSource {
    std::span<T> a;
    std::size_t min_run_len;
    Compare comp;
    SortStats* stats;

    Run operator()(std::size_t begin) {
        std::span<T> view = a.subspan(begin);
        Run run = find_first_run(view, comp, stats);
        run = extend_run(view, run, min_run_len, comp, stats);
        if (stats) stats->element_reads += run.length();
        return {begin + run.begin, begin + run.end};
    }
};

/// Replays a fixed list of run end positions.
struct ScriptedRunSource {
    std::span<const std::size_t> ends;
    std::size_t next = 0;

    Run operator()(std::size_t begin) {
        if (next >= ends.size() || ends[next] <= begin)
            throw std::invalid_argument("sort_presorted_runs: malformed run ends");
        return {begin, ends[next++]};
    }
};

template <class T, class Compare>
bool sentinels_enabled(std::span<const T> a, const Config& config) {
    if constexpr (sentinel_usable_v<T, Compare>) {
        if (config.kernel != MergeKernel::sentinel) return false;
        return std::none_of(a.begin(), a.end(), [](const T& x) { return sentinel_traits<T>::is_reserved(x); });
    } else {
        return false;
    }
}

template <bool Instrumented, class T, class Compare, class MakeSource>
SortStats run_driver(std::span<T> a, const Config& config, Compare comp, MergeTrace* trace,
                     MakeSource make_source) {
    validate(config);
    SortStats stats;
    if (a.empty()) return stats;
    const bool sentinels = sentinels_enabled<T, Compare>(std::span<const T>(a), config);
    if constexpr (Instrumented) {
        CountingCompare<Compare> counting{comp, &stats.comparisons};
        auto source = make_source(counting, &stats);
        Driver<true, T, CountingCompare<Compare>, decltype(source)> driver(a, config, counting, sentinels,
                                                                           &stats, trace);
        driver.sort(source);
    } else {
        auto source = make_source(comp, nullptr);
        Driver<false, T, Compare, decltype(source)> driver(a, config, comp, sentinels, nullptr, nullptr);
        driver.sort(source);
    }
    return stats;
}

}  // namespace detail

/// Sorts `a` stably with k-way Powersort and returns the collected counters.
/// `trace`, when given, receives one entry per executed merge.
template <class T, class Compare = std::less<>>
SortStats stable_sort_with(std::span<T> a, const Config& config, Compare comp = {},
                           MergeTrace* trace = nullptr) {
    const std::size_t min_run_len = config.min_run_len;
    return detail::run_driver<true>(a, config, comp, trace, [&](auto c, SortStats* s) {
        return detail::DetectingRunSource<T, decltype(c)>{a, min_run_len, c, s};
    });
}

/// Uninstrumented variant used for timing: no counters, no trace.
template <class T, class Compare = std::less<>>
void stable_sort_fast(std::span<T> a, const Config& config, Compare comp = {}) {
    const std::size_t min_run_len = config.min_run_len;
    detail::run_driver<false>(a, config, comp, nullptr, [&](auto c, SortStats*) {
        return detail::DetectingRunSource<T, decltype(c)>{a, min_run_len, c, nullptr};
    });
}

/// Sorts with 4-way Powersort, sentinel kernels where available.
template <class T, class Compare = std::less<>>
void stable_sort(std::span<T> a, Compare comp = {}) {
    stable_sort_fast(a, Config{}, comp);
}

/// Applies the merge policy to an array that already consists of sorted
/// runs ending at `run_ends` (strictly increasing, last entry = a.size()).
/// No run detection takes place; min_run_len is ignored.
template <class T, class Compare = std::less<>>
SortStats sort_presorted_runs(std::span<T> a, std::span<const std::size_t> run_ends, const Config& config,
                              Compare comp = {}, MergeTrace* trace = nullptr) {
    if (a.empty() ? !run_ends.empty() : (run_ends.empty() || run_ends.back() != a.size()))
        throw std::invalid_argument("sort_presorted_runs: run ends must finish at the array end");
    return detail::run_driver<true>(a, config, comp, trace, [&](auto, SortStats*) {
        return detail::ScriptedRunSource{run_ends};
    });
}

}  // namespace powersort
