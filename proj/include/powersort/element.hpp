#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <type_traits>

namespace powersort {

/// 16-byte record sorted by key; `index` carries the original position and
/// doubles as a stability witness.
struct Record {
    std::int64_t key = 0;
    std::uint64_t index = 0;

    friend bool operator<(const Record& a, const Record& b) { return a.key < b.key; }
};

static_assert(sizeof(Record) == 16);

/// Describes a reserved +infinity value for T. Types without a
/// specialization never use the sentinel kernels.
template <class T>
struct sentinel_traits {
    static constexpr bool available = false;
};

template <>
struct sentinel_traits<std::int32_t> {
    static constexpr bool available = true;
    static constexpr std::int32_t value() { return std::numeric_limits<std::int32_t>::max(); }
    static constexpr bool is_reserved(std::int32_t v) { return v == value(); }
};

template <>
struct sentinel_traits<std::int64_t> {
    static constexpr bool available = true;
    static constexpr std::int64_t value() { return std::numeric_limits<std::int64_t>::max(); }
    static constexpr bool is_reserved(std::int64_t v) { return v == value(); }
};

template <>
struct sentinel_traits<Record> {
    static constexpr bool available = true;
    static constexpr Record value() { return {std::numeric_limits<std::int64_t>::max(), 0}; }
    static constexpr bool is_reserved(const Record& r) {
        return r.key == std::numeric_limits<std::int64_t>::max();
    }
};

/// Sentinels are only meaningful under the element type's natural order.
template <class T, class Compare>
inline constexpr bool sentinel_usable_v =
    sentinel_traits<T>::available &&
    (std::is_same_v<Compare, std::less<>> || std::is_same_v<Compare, std::less<T>>);

}  // namespace powersort
