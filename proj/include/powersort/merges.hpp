#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "powersort/element.hpp"
#include "powersort/stats.hpp"

// Merge kernels. Each merges adjacent weakly increasing regions of an array
// in place, going through an external buffer. Ties always go to the leftmost
// run, which makes every kernel stable.

namespace powersort {

/// Scratch space for the merge kernels: n elements plus room for up to four
/// sentinel slots.
template <class T>
class MergeBuffer {
public:
    MergeBuffer() = default;
    explicit MergeBuffer(std::size_t capacity) : storage_(capacity) {}

    std::size_t capacity() const { return storage_.size(); }
    T* data() { return storage_.data(); }

private:
    std::vector<T> storage_;
};

namespace detail {

inline void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

template <class T>
void check_regions(std::span<T> a, std::span<const std::size_t> bounds, std::size_t buffer_capacity,
                   std::size_t extra_slots) {
    require(bounds.back() <= a.size(), "merge: region exceeds array");
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
        require(bounds[i] < bounds[i + 1], "merge: empty or malformed run");
    require(buffer_capacity >= bounds.back() - bounds.front() + extra_slots, "merge: buffer too small");
}

/// Accounting for kernels that copy every input element to the buffer.
inline void account_copy_all(SortStats* stats, int arity, std::size_t m, std::size_t extra_writes) {
    if (!stats) return;
    stats->record_merge(arity, m);
    stats->buffer_cost += m;
    stats->moves += 2 * m;
    stats->element_reads += 2 * m;
    stats->element_writes += 2 * m + extra_writes;
}

}  // namespace detail

template <class T, class Compare>
void merge_2way_sentinel(std::span<T> a, std::size_t l, std::size_t m, std::size_t r,
                         MergeBuffer<T>& buffer, Compare comp, SortStats* stats = nullptr) {
    const std::array bounds{l, m, r};
    detail::check_regions(a, std::span<const std::size_t>(bounds), buffer.capacity(), 2);
    const T inf = sentinel_traits<T>::value();
    T* const B = buffer.data();
    T* const mid = std::copy(a.data() + l, a.data() + m, B);
    *mid = inf;
    *std::copy(a.data() + m, a.data() + r, mid + 1) = inf;

    T* c1 = B;
    T* c2 = mid + 1;
    for (T *o = a.data() + l, *const end = a.data() + r; o < end; ++o)
        *o = !comp(*c2, *c1) ? *c1++ : *c2++;
    detail::account_copy_all(stats, 2, r - l, 2);
}

template <class T, class Compare>
void merge_2way_no_sentinel(std::span<T> a, std::size_t l, std::size_t m, std::size_t r,
                            MergeBuffer<T>& buffer, Compare comp, SortStats* stats = nullptr) {
    const std::array bounds{l, m, r};
    detail::check_regions(a, std::span<const std::size_t>(bounds), buffer.capacity(), 0);
    T* const B = buffer.data();
    std::copy(a.data() + l, a.data() + r, B);
    T *c1 = B, *const e1 = B + (m - l), *c2 = e1, *const e2 = B + (r - l);
    T* o = a.data() + l;
    while (c1 < e1 && c2 < e2) *o++ = !comp(*c2, *c1) ? *c1++ : *c2++;
    o = std::copy(c1, e1, o);
    std::copy(c2, e2, o);
    detail::account_copy_all(stats, 2, r - l, 0);
}

/// Copies only the shorter run into the buffer and merges into the gap it
/// leaves. When the right run is shorter, the merge runs right to left taking
/// the larger element, with the right run winning ties.
template <class T, class Compare>
void merge_2way_copy_smaller(std::span<T> a, std::size_t l, std::size_t m, std::size_t r,
                             MergeBuffer<T>& buffer, Compare comp, SortStats* stats = nullptr) {
    const std::array bounds{l, m, r};
    detail::check_regions(a, std::span<const std::size_t>(bounds), buffer.capacity(), 0);
    const std::size_t n1 = m - l, n2 = r - m;
    T* const B = buffer.data();
    T* const A = a.data();
    std::size_t written = 0;
    if (n1 <= n2) {
        std::copy(A + l, A + m, B);
        T *c1 = B, *const e1 = B + n1, *c2 = A + m, *const e2 = A + r, *o = A + l;
        while (c1 < e1 && c2 < e2) *o++ = !comp(*c2, *c1) ? *c1++ : *c2++;
        o = std::copy(c1, e1, o);
        written = static_cast<std::size_t>(o - (A + l));
    } else {
        std::copy(A + m, A + r, B);
        // Signed indices: cursors step below the start of each run.
        std::ptrdiff_t c1 = static_cast<std::ptrdiff_t>(m) - 1, s1 = static_cast<std::ptrdiff_t>(l);
        std::ptrdiff_t c2 = static_cast<std::ptrdiff_t>(n2) - 1, o = static_cast<std::ptrdiff_t>(r) - 1;
        while (c1 >= s1 && c2 >= 0) A[o--] = !comp(B[c2], A[c1]) ? B[c2--] : A[c1--];
        while (c2 >= 0) A[o--] = B[c2--];
        written = r - 1 - static_cast<std::size_t>(o);
    }
    if (stats) {
        const std::size_t copied = std::min(n1, n2);
        stats->record_merge(2, r - l);
        stats->buffer_cost += copied;
        stats->moves += copied + written;
        stats->element_reads += copied + written;
        stats->element_writes += copied + written;
    }
}

/// Three runs through the four-leaf winner tree with the right subtree
/// replaced by the third run's cursor.
template <class T, class Compare>
void merge_3way_sentinel(std::span<T> a, std::size_t l, std::size_t g1, std::size_t g2, std::size_t r,
                         MergeBuffer<T>& buffer, Compare comp, SortStats* stats = nullptr) {
    const std::array bounds{l, g1, g2, r};
    detail::check_regions(a, std::span<const std::size_t>(bounds), buffer.capacity(), 3);
    const T inf = sentinel_traits<T>::value();
    T* const A = a.data();
    T* const B = buffer.data();
    T* c[3];
    c[0] = B;
    c[1] = std::copy(A + l, A + g1, c[0]) + 1;
    c[1][-1] = inf;
    c[2] = std::copy(A + g1, A + g2, c[1]) + 1;
    c[2][-1] = inf;
    *std::copy(A + g2, A + r, c[2]) = inf;

    auto leq = [&](const T* x, const T* y) { return !comp(*y, *x); };
    const T* x = leq(c[0], c[1]) ? c[0]++ : c[1]++;
    const T* y = c[2]++;
    bool from_left = leq(x, y);
    T* o = A + l;
    *o++ = from_left ? *x : *y;
    for (T* const end = A + r; o < end; ++o) {
        if (from_left)
            x = leq(c[0], c[1]) ? c[0]++ : c[1]++;
        else
            y = c[2]++;
        from_left = leq(x, y);
        *o = from_left ? *x : *y;
    }
    detail::account_copy_all(stats, 3, r - l, 3);
}

/// Four runs through a winner tree of three nodes: x over runs 0/1, y over
/// runs 2/3, and the root, which remembers whether its winner came from x.
/// Every output after the first recomputes exactly two nodes.
template <class T, class Compare>
void merge_4way_sentinel(std::span<T> a, std::size_t l, std::size_t g1, std::size_t g2, std::size_t g3,
                         std::size_t r, MergeBuffer<T>& buffer, Compare comp, SortStats* stats = nullptr) {
    const std::array bounds{l, g1, g2, g3, r};
    detail::check_regions(a, std::span<const std::size_t>(bounds), buffer.capacity(), 4);
    const T inf = sentinel_traits<T>::value();
    T* const A = a.data();
    T* const B = buffer.data();
    T* c[4];
    c[0] = B;
    c[1] = std::copy(A + l, A + g1, c[0]) + 1;
    c[1][-1] = inf;
    c[2] = std::copy(A + g1, A + g2, c[1]) + 1;
    c[2][-1] = inf;
    c[3] = std::copy(A + g2, A + g3, c[2]) + 1;
    c[3][-1] = inf;
    *std::copy(A + g3, A + r, c[3]) = inf;

    auto leq = [&](const T* p, const T* q) { return !comp(*q, *p); };
    const T* x = leq(c[0], c[1]) ? c[0]++ : c[1]++;
    const T* y = leq(c[2], c[3]) ? c[2]++ : c[3]++;
    bool from_left = leq(x, y);
    T* o = A + l;
    *o++ = from_left ? *x : *y;
    for (T* const end = A + r; o < end; ++o) {
        if (from_left)
            x = leq(c[0], c[1]) ? c[0]++ : c[1]++;
        else
            y = leq(c[2], c[3]) ? c[2]++ : c[3]++;
        from_left = leq(x, y);
        *o = from_left ? *x : *y;
    }
    detail::account_copy_all(stats, 4, r - l, 4);
}

namespace detail {

/// Sentinel-free multiway merge of 2..4 buffered runs, organized in stages.
/// Within a stage, `safe` = shortest remaining run length iterations can run
/// without bounds checks. When a run is exhausted, the root is emitted, the
/// other tree node is returned to its run, the empty run is dropped, and the
/// merge continues with one run fewer.
template <class T, class Compare>
class StagedMerge {
public:
    StagedMerge(T* out, std::span<T*> cursors, std::span<T*> ends, Compare comp)
        : out_(out), comp_(comp), nruns_(static_cast<int>(cursors.size())) {
        std::copy(cursors.begin(), cursors.end(), c_.begin());
        std::copy(ends.begin(), ends.end(), e_.begin());
    }

    void run() {
        while (nruns_ >= 3) tournament_stage();
        if (nruns_ == 2) {
            while (c_[0] < e_[0] && c_[1] < e_[1]) *out_++ = leq(c_[0], c_[1]) ? *c_[0]++ : *c_[1]++;
            out_ = std::copy(c_[0], e_[0], out_);
            out_ = std::copy(c_[1], e_[1], out_);
        } else if (nruns_ == 1) {
            out_ = std::copy(c_[0], e_[0], out_);
        }
    }

    /// Times a run became empty while its element was still held by the
    /// losing tree node, forcing a tree rebuild with the same arity.
    int rebuilds() const { return rebuilds_; }

private:
    struct Node {
        T* it;
        int run;
    };

    bool leq(const T* p, const T* q) const { return !comp_(*q, *p); }

    Node pick(int i, int j) {
        if (leq(c_[i], c_[j])) return {c_[i]++, i};
        return {c_[j]++, j};
    }

    Node pick_right() { return nruns_ == 4 ? pick(2, 3) : Node{c_[2]++, 2}; }

    void init_tree() {
        left_ = pick(0, 1);
        right_ = pick_right();
        root_left_ = leq(left_.it, right_.it);
    }

    void update_tree() {
        if (root_left_)
            left_ = pick(0, 1);
        else
            right_ = pick_right();
        root_left_ = leq(left_.it, right_.it);
    }

    T* root() const { return root_left_ ? left_.it : right_.it; }

    std::ptrdiff_t shortest_remaining() const {
        std::ptrdiff_t s = e_[0] - c_[0];
        for (int i = 1; i < nruns_; ++i) s = std::min(s, e_[i] - c_[i]);
        return s;
    }

    void tournament_stage() {
        init_tree();
        for (;;) {
            std::ptrdiff_t safe = shortest_remaining();
            if (safe > 0) {
                for (; safe > 0; --safe) {
                    *out_++ = *root();
                    update_tree();
                }
                continue;
            }
            // Some run is exhausted. The root is still the global minimum.
            *out_++ = *root();
            const Node other = root_left_ ? right_ : left_;
            --c_[other.run];
            int empty = 0;
            while (empty < nruns_ && c_[empty] != e_[empty]) ++empty;
            if (empty == nruns_) {
                // The rollback refilled the exhausted run; rebuild and go on.
                ++rebuilds_;
                init_tree();
                continue;
            }
            for (int i = empty; i + 1 < nruns_; ++i) {
                c_[i] = c_[i + 1];
                e_[i] = e_[i + 1];
            }
            --nruns_;
            return;
        }
    }

    T* out_;
    Compare comp_;
    int nruns_;
    std::array<T*, 4> c_{};
    std::array<T*, 4> e_{};
    Node left_{};
    Node right_{};
    bool root_left_ = true;
    int rebuilds_ = 0;
};

/// Buffers the regions delimited by `bounds` (2..4 runs) and merges them by
/// stages. Returns the number of tree rebuilds.
template <class T, class Compare>
int merge_by_stages(std::span<T> a, std::span<const std::size_t> bounds, MergeBuffer<T>& buffer,
                    Compare comp, SortStats* stats) {
    check_regions(a, bounds, buffer.capacity(), 1);
    const std::size_t l = bounds.front(), r = bounds.back(), n = r - l;
    T* const B = buffer.data();
    std::copy(a.data() + l, a.data() + r, B);
    // Duplicate of the last element so reads at a region's end stay defined.
    // It is never compared as a sentinel.
    B[n] = B[n - 1];

    const std::size_t nruns = bounds.size() - 1;
    std::array<T*, 4> c{}, e{};
    for (std::size_t i = 0; i < nruns; ++i) {
        c[i] = B + (bounds[i] - l);
        e[i] = B + (bounds[i + 1] - l);
    }
    StagedMerge<T, Compare> merger(a.data() + l, std::span<T*>(c.data(), nruns),
                                   std::span<T*>(e.data(), nruns), comp);
    merger.run();
    detail::account_copy_all(stats, static_cast<int>(nruns), n, 1);
    return merger.rebuilds();
}

}  // namespace detail

/// Sentinel-free 4-way merge by stages. Produces the same output as
/// merge_4way_sentinel. Returns how often the tree had to be rebuilt after a
/// rollback into a just-exhausted run.
template <class T, class Compare>
int merge_4way_stages(std::span<T> a, std::size_t l, std::size_t g1, std::size_t g2, std::size_t g3,
                      std::size_t r, MergeBuffer<T>& buffer, Compare comp, SortStats* stats = nullptr) {
    const std::array bounds{l, g1, g2, g3, r};
    return detail::merge_by_stages(a, std::span<const std::size_t>(bounds), buffer, comp, stats);
}

template <class T, class Compare>
int merge_3way_stages(std::span<T> a, std::size_t l, std::size_t g1, std::size_t g2, std::size_t r,
                      MergeBuffer<T>& buffer, Compare comp, SortStats* stats = nullptr) {
    const std::array bounds{l, g1, g2, r};
    return detail::merge_by_stages(a, std::span<const std::size_t>(bounds), buffer, comp, stats);
}

}  // namespace powersort
