#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace powersort {

using BoundaryPower = int;

namespace detail {

/// Power of the boundary between runs [b1, e1) and [b2 = e1, e2) in an array
/// of length n: the least p >= 1 such that floor(a k^p) < floor(b k^p), where
/// a and b are the run midpoints as fractions of n. Runs an exact digit loop
/// on the numerators A = 2 b1 + n1 and B = 2 b2 + n2 over denominator 2n.
/// Requires A < B < 2n, which holds for adjacent nonempty runs.
inline BoundaryPower node_power_unchecked(std::uint64_t k, std::uint64_t n, std::uint64_t b1,
                                          std::uint64_t e1, std::uint64_t b2, std::uint64_t e2) {
    using wide = unsigned __int128;
    const wide denom = wide(2) * n;
    wide a = wide(2) * b1 + (e1 - b1);
    wide b = wide(2) * b2 + (e2 - b2);
    for (BoundaryPower p = 1;; ++p) {
        a *= k;
        b *= k;
        const wide qa = a / denom;
        if (qa < b / denom) return p;
        // Same leading digit: drop it and keep only the fractional parts.
        a -= qa * denom;
        b -= qa * denom;
    }
}

}  // namespace detail

/// Checked form of the boundary power for any arity k >= 2.
inline BoundaryPower node_power(std::uint64_t k, std::uint64_t n, std::uint64_t b1,
                                std::uint64_t e1, std::uint64_t b2, std::uint64_t e2) {
    if (k < 2 || k > (std::uint64_t(1) << 32)) throw std::invalid_argument("node_power: k out of range");
    if (!(b1 < e1 && e1 == b2 && b2 < e2 && e2 <= n))
        throw std::invalid_argument("node_power: malformed run bounds");
    if (n > (std::uint64_t(1) << 62)) throw std::invalid_argument("node_power: n too large");
    return detail::node_power_unchecked(k, n, b1, e1, b2, e2);
}

/// Smallest c >= 0 with k^c >= n (n >= 1).
inline int ceil_log(std::uint64_t k, std::uint64_t n) {
    int c = 0;
    unsigned __int128 pow = 1;
    while (pow < n) {
        pow *= k;
        ++c;
    }
    return c;
}

/// Largest run-stack height k-way Powersort can reach on n elements:
/// (k-1) * ceil(log_k(n) + 1).
inline std::size_t max_stack_height_bound(std::uint64_t k, std::uint64_t n) {
    return static_cast<std::size_t>((k - 1) * static_cast<std::uint64_t>(ceil_log(k, n) + 1));
}

}  // namespace powersort
