#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>

#include "powersort/stats.hpp"

namespace powersort {

/// Half-open index interval [begin, end) of a weakly increasing segment.
struct Run {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t length() const { return end - begin; }

    friend bool operator==(const Run&, const Run&) = default;
};

/// Stable insertion sort of `view`, assuming its first `sorted_prefix_len`
/// elements are already weakly increasing. Returns the number of element
/// writes performed.
template <class T, class Compare>
std::size_t insertion_sort(std::span<T> view, std::size_t sorted_prefix_len, Compare comp) {
    std::size_t writes = 0;
    for (std::size_t i = std::max<std::size_t>(sorted_prefix_len, 1); i < view.size(); ++i) {
        if (!comp(view[i], view[i - 1])) continue;
        T x = std::move(view[i]);
        std::size_t j = i;
        do {
            view[j] = std::move(view[j - 1]);
            ++writes;
            --j;
        } while (j > 0 && comp(x, view[j - 1]));
        view[j] = std::move(x);
        ++writes;
    }
    return writes;
}

/// Finds the maximal run at the start of `view`: either weakly increasing, or
/// strictly decreasing (which is reversed in place). Requires a nonempty view.
/// Uses exactly min(len + 1, |view|) - 1 comparisons, where len is the run length.
template <class T, class Compare>
Run find_first_run(std::span<T> view, Compare comp, SortStats* stats = nullptr) {
    const std::size_t n = view.size();
    if (n < 2) return {0, n};
    std::size_t end = 2;
    if (comp(view[1], view[0])) {
        while (end < n && comp(view[end], view[end - 1])) ++end;
        std::reverse(view.begin(), view.begin() + static_cast<std::ptrdiff_t>(end));
        if (stats) stats->moves += 2 * (end / 2);
    } else {
        while (end < n && !comp(view[end], view[end - 1])) ++end;
    }
    return {0, end};
}

/// Extends `run` (which starts at the left edge of `view`) to at least
/// `min_run_len` elements, clamped at the view's end, by insertion-sorting
/// the extended region.
template <class T, class Compare>
Run extend_run(std::span<T> view, Run run, std::size_t min_run_len, Compare comp,
               SortStats* stats = nullptr) {
    if (run.length() >= min_run_len) return run;
    const std::size_t new_end = std::min(view.size(), run.begin + min_run_len);
    const std::size_t writes =
        insertion_sort(view.subspan(run.begin, new_end - run.begin), run.length(), comp);
    if (stats) stats->moves += writes;
    return {run.begin, new_end};
}

}  // namespace powersort
