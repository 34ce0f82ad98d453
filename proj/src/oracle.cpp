#include "powersort/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace powersort::oracle {

std::string MergeTree::to_string() const {
    if (is_leaf()) return std::to_string(leaf);
    std::string s = "(";
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) s += ',';
        s += children[i].to_string();
    }
    return s + ')';
}

std::uint64_t total_length(const RunProfile& profile) {
    return std::accumulate(profile.begin(), profile.end(), std::uint64_t{0});
}

std::vector<std::size_t> run_ends(const RunProfile& profile) {
    std::vector<std::size_t> ends(profile.size());
    std::partial_sum(profile.begin(), profile.end(), ends.begin());
    return ends;
}

std::vector<int> boundary_powers(const RunProfile& profile, int k) {
    const std::uint64_t n = total_length(profile);
    std::vector<int> powers;
    std::uint64_t begin = 0;
    for (std::size_t i = 0; i + 1 < profile.size(); ++i) {
        const std::uint64_t mid = begin + profile[i];
        powers.push_back(node_power(static_cast<std::uint64_t>(k), n, begin, mid, mid, mid + profile[i + 1]));
        begin = mid;
    }
    return powers;
}

namespace {

// powers[j - 1] is the power of the boundary in front of run j.
MergeTree build(const std::vector<int>& powers, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return MergeTree::make_leaf(lo);
    int lowest = std::numeric_limits<int>::max();
    for (std::size_t j = lo + 1; j < hi; ++j) lowest = std::min(lowest, powers[j - 1]);
    MergeTree node;
    std::size_t start = lo;
    for (std::size_t j = lo + 1; j < hi; ++j) {
        if (powers[j - 1] != lowest) continue;
        node.children.push_back(build(powers, start, j));
        start = j;
    }
    node.children.push_back(build(powers, start, hi));
    return node;
}

void leaf_depths(const MergeTree& t, int depth, std::vector<int>& out) {
    if (t.is_leaf()) {
        out.push_back(depth);
        return;
    }
    for (const auto& c : t.children) leaf_depths(c, depth + 1, out);
}

// Returns subtree weight; accumulates the weights of internal nodes.
std::uint64_t internal_weights(const MergeTree& t, const RunProfile& profile, std::uint64_t& sum) {
    if (t.is_leaf()) return profile.at(t.leaf);
    std::uint64_t w = 0;
    for (const auto& c : t.children) w += internal_weights(c, profile, sum);
    sum += w;
    return w;
}

// Returns [first leaf, last leaf] of the subtree and records LCA depths of
// boundaries between children.
std::pair<std::size_t, std::size_t> lca_depths(const MergeTree& t, int depth, std::vector<int>& out) {
    if (t.is_leaf()) return {t.leaf, t.leaf};
    std::size_t first = 0, last = 0;
    for (std::size_t i = 0; i < t.children.size(); ++i) {
        const auto [f, l] = lca_depths(t.children[i], depth + 1, out);
        if (i == 0)
            first = f;
        else
            out.at(f - 1) = depth;
        last = l;
    }
    return {first, last};
}

bool collect_leaves(const MergeTree& t, std::vector<std::size_t>& leaves) {
    if (t.is_leaf()) {
        leaves.push_back(t.leaf);
        return true;
    }
    if (t.children.size() < 2) return false;
    for (const auto& c : t.children)
        if (!collect_leaves(c, leaves)) return false;
    return true;
}

}  // namespace

MergeTree kway_tree(const RunProfile& profile, int k) {
    if (profile.empty()) throw std::invalid_argument("kway_tree: empty profile");
    return build(boundary_powers(profile, k), 0, profile.size());
}

std::uint64_t tree_merge_cost(const MergeTree& tree, const RunProfile& profile) {
    std::vector<int> depths;
    leaf_depths(tree, 0, depths);
    if (depths.size() != profile.size()) throw std::invalid_argument("tree_merge_cost: leaf count mismatch");
    std::uint64_t by_depth = 0;
    for (std::size_t i = 0; i < depths.size(); ++i) by_depth += static_cast<std::uint64_t>(depths[i]) * profile[i];
    std::uint64_t by_nodes = 0;
    internal_weights(tree, profile, by_nodes);
    if (by_depth != by_nodes) throw std::logic_error("tree_merge_cost: depth and node sums disagree");
    return by_depth;
}

double entropy(const RunProfile& profile) {
    const long double n = static_cast<long double>(total_length(profile));
    long double h = 0;
    for (std::uint64_t len : profile) {
        const long double l = static_cast<long double>(len);
        h += l / n * std::log2(n / l);
    }
    return static_cast<double>(h);
}

std::uint64_t optimal_merge_cost(const RunProfile& profile, int k) {
    const std::size_t r = profile.size();
    if (r == 0) throw std::invalid_argument("optimal_merge_cost: empty profile");
    if (r > 14) throw std::invalid_argument("optimal_merge_cost: at most 14 runs");
    if (k < 2) throw std::invalid_argument("optimal_merge_cost: k must be >= 2");
    constexpr std::uint64_t inf = std::numeric_limits<std::uint64_t>::max() / 4;
    std::vector<std::uint64_t> prefix(r + 1, 0);
    for (std::size_t i = 0; i < r; ++i) prefix[i + 1] = prefix[i] + profile[i];

    // opt[i][j]: best tree over runs i..j. part[t][i][j]: best split of runs
    // i..j into exactly t consecutive subtrees (t = 1..k).
    const auto kk = static_cast<std::size_t>(k);
    std::vector<std::vector<std::vector<std::uint64_t>>> part(
        kk + 1, std::vector<std::vector<std::uint64_t>>(r, std::vector<std::uint64_t>(r, inf)));
    for (std::size_t len = 1; len <= r; ++len) {
        for (std::size_t i = 0; i + len <= r; ++i) {
            const std::size_t j = i + len - 1;
            for (std::size_t t = 2; t <= kk && t <= len; ++t) {
                std::uint64_t best = inf;
                for (std::size_t m = i; m < j; ++m) best = std::min(best, part[1][i][m] + part[t - 1][m + 1][j]);
                part[t][i][j] = best;
            }
            if (len == 1) {
                part[1][i][j] = 0;
            } else {
                std::uint64_t best = inf;
                for (std::size_t t = 2; t <= kk && t <= len; ++t) best = std::min(best, part[t][i][j]);
                part[1][i][j] = best + (prefix[j + 1] - prefix[i]);
            }
        }
    }
    return part[1][0][r - 1];
}

std::vector<int> boundary_depths(const MergeTree& tree, std::size_t runs) {
    std::vector<int> depths(runs > 0 ? runs - 1 : 0, -1);
    lca_depths(tree, 0, depths);
    return depths;
}

std::size_t max_degree(const MergeTree& tree) {
    std::size_t d = tree.children.size();
    for (const auto& c : tree.children) d = std::max(d, max_degree(c));
    return d;
}

bool well_formed(const MergeTree& tree, std::size_t runs) {
    std::vector<std::size_t> leaves;
    if (!collect_leaves(tree, leaves)) return false;
    if (leaves.size() != runs) return false;
    for (std::size_t i = 0; i < runs; ++i)
        if (leaves[i] != i) return false;
    return true;
}

MergeTree tree_from_trace(const MergeTrace& trace, std::span<const std::size_t> run_ends) {
    // Subtrees keyed by the start position of the region they cover.
    std::map<std::size_t, std::pair<std::size_t, MergeTree>> pending;  // begin -> (end, tree)
    std::size_t begin = 0;
    for (std::size_t i = 0; i < run_ends.size(); ++i) {
        pending[begin] = {run_ends[i], MergeTree::make_leaf(i)};
        begin = run_ends[i];
    }
    for (const MergeEvent& e : trace) {
        MergeTree node;
        for (std::size_t i = 0; i + 1 < e.bounds.size(); ++i) {
            auto it = pending.find(e.bounds[i]);
            if (it == pending.end() || it->second.first != e.bounds[i + 1])
                throw std::invalid_argument("tree_from_trace: merge does not match pending regions");
            node.children.push_back(std::move(it->second.second));
            pending.erase(it);
        }
        pending[e.bounds.front()] = {e.bounds.back(), std::move(node)};
    }
    if (pending.size() != 1) throw std::invalid_argument("tree_from_trace: trace leaves several regions");
    return std::move(pending.begin()->second.second);
}

}  // namespace powersort::oracle
