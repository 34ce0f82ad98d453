#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "powersort/policy.hpp"

// Reference computations over run profiles. Nothing here is on the sorting
// path; tests and the harness use it to check the policy.

namespace powersort::oracle {

/// Run lengths L_0..L_{r-1}, all positive.
using RunProfile = std::vector<std::uint64_t>;

/// Ordered merge tree. A node without children is a leaf holding a run index.
struct MergeTree {
    std::size_t leaf = 0;
    std::vector<MergeTree> children;

    bool is_leaf() const { return children.empty(); }
    std::string to_string() const;

    static MergeTree make_leaf(std::size_t run) { return {run, {}}; }

    friend bool operator==(const MergeTree&, const MergeTree&) = default;
};

std::uint64_t total_length(const RunProfile& profile);

/// Powers P_1..P_{r-1} of the interior run boundaries, relative to the whole profile.
std::vector<int> boundary_powers(const RunProfile& profile, int k);

/// The merge tree obtained by recursively splitting at every boundary of
/// minimal power.
MergeTree kway_tree(const RunProfile& profile, int k);

/// Sum over leaves of depth times run length. Also computes the sum of
/// subtree weights over internal nodes and throws std::logic_error if the
/// two disagree.
std::uint64_t tree_merge_cost(const MergeTree& tree, const RunProfile& profile);

/// Shannon entropy in bits of the run-length fractions L_i / n.
double entropy(const RunProfile& profile);

/// Minimum merge cost over all merge trees with node degrees in [2, k].
/// Throws std::invalid_argument for more than 14 runs.
std::uint64_t optimal_merge_cost(const RunProfile& profile, int k);

/// Depth of the lowest common ancestor of leaves j-1 and j, for j = 1..r-1.
std::vector<int> boundary_depths(const MergeTree& tree, std::size_t runs);

/// Largest number of children of any node.
std::size_t max_degree(const MergeTree& tree);

/// Structural check: leaves 0..r-1 in order, no unary nodes.
bool well_formed(const MergeTree& tree, std::size_t runs);

/// Rebuilds the executed merge tree from a merge trace. `run_ends` are the
/// end positions of the initial runs.
MergeTree tree_from_trace(const MergeTrace& trace, std::span<const std::size_t> run_ends);

/// Prefix sums of the profile: end position of each run.
std::vector<std::size_t> run_ends(const RunProfile& profile);

/// Run profile of an array, using the same detection and extension as the sort.
template <class T, class Compare = std::less<>>
RunProfile detect_runs(std::span<T> a, std::size_t min_run_len = 1, Compare comp = {}) {
    RunProfile profile;
    std::size_t begin = 0;
    while (begin < a.size()) {
        std::span<T> view = a.subspan(begin);
        Run run = extend_run(view, find_first_run(view, comp), min_run_len, comp);
        profile.push_back(run.length());
        begin += run.length();
    }
    return profile;
}

}  // namespace powersort::oracle
