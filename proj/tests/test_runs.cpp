#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "powersort/runs.hpp"
#include "test_util.hpp"

using powersort::extend_run;
using powersort::find_first_run;
using powersort::insertion_sort;
using powersort::Run;
using powersort::SortStats;

namespace {

std::less<> less;

template <class T>
std::span<T> view(std::vector<T>& v) {
    return std::span<T>(v);
}

}  // namespace

TEST_CASE("find_first_run on the documented examples") {
    std::vector<int> single{5};
    CHECK(find_first_run(view(single), less) == Run{0, 1});

    std::vector<int> equal_pair{1, 2, 2, 1};
    CHECK(find_first_run(view(equal_pair), less) == Run{0, 3});
    CHECK(equal_pair == std::vector<int>{1, 2, 2, 1});

    std::vector<int> decreasing{3, 2, 1, 9};
    CHECK(find_first_run(view(decreasing), less) == Run{0, 3});
    CHECK(decreasing == std::vector<int>{1, 2, 3, 9});
}

TEST_CASE("weakly decreasing pair ends a decreasing run") {
    std::vector<int> v{3, 2, 2, 1};
    CHECK(find_first_run(view(v), less) == Run{0, 2});
    CHECK(v == std::vector<int>{2, 3, 2, 1});
}

TEST_CASE("run detection uses n-1 comparisons over a whole array") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<int> v(1 + rng() % 60);
        for (int& x : v) x = static_cast<int>(rng() % 5);
        std::uint64_t count = 0;
        powersort::CountingCompare<std::less<>> comp{{}, &count};
        std::size_t begin = 0;
        while (begin < v.size()) {
            begin += find_first_run(view(v).subspan(begin), comp).length();
        }
        CHECK(count == v.size() - 1);
    }
}

TEST_CASE("run decomposition partitions the array into sorted runs") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 500; ++rep) {
        std::vector<int> v(1 + rng() % 80);
        for (int& x : v) x = static_cast<int>(rng() % 6);
        std::vector<int> again = v;
        std::vector<Run> runs, runs_again;
        for (std::size_t b = 0; b < v.size();) {
            const Run r = find_first_run(view(v).subspan(b), less);
            REQUIRE(r.begin == 0);
            REQUIRE(r.end >= 1);
            CHECK(std::is_sorted(v.begin() + static_cast<std::ptrdiff_t>(b),
                                 v.begin() + static_cast<std::ptrdiff_t>(b + r.end)));
            runs.push_back({b, b + r.end});
            b += r.end;
        }
        for (std::size_t b = 0; b < again.size();) {
            const Run r = find_first_run(view(again).subspan(b), less);
            runs_again.push_back({b, b + r.end});
            b += r.end;
        }
        CHECK(runs == runs_again);
        CHECK(runs.back().end == v.size());
    }
}

TEST_CASE("reversal of strictly decreasing runs is stable") {
    // Keys strictly decreasing, so no equal keys are reversed past each other.
    auto v = testutil::records({5, 4, 4, 3});
    const Run r = find_first_run(view(v), less);
    CHECK(r == Run{0, 2});
    CHECK(v[0].index == 1);
    CHECK(v[1].index == 0);
}

TEST_CASE("extend_run") {
    SUBCASE("already long enough") {
        std::vector<int> v(40);
        std::iota(v.begin(), v.end(), 0);
        CHECK(extend_run(view(v), Run{0, 30}, 24, less) == Run{0, 30});
    }
    SUBCASE("clamped at the view end") {
        std::vector<int> v{1, 2, 3, 9, 4, 8, 0, 7, 5, 6};
        CHECK(extend_run(view(v), Run{0, 3}, 24, less) == Run{0, 10});
        CHECK(std::is_sorted(v.begin(), v.end()));
    }
    SUBCASE("extends to min length") {
        std::vector<int> v{1, 5, 2, 4, 3, 0};
        CHECK(extend_run(view(v), Run{0, 2}, 4, less) == Run{0, 4});
        CHECK(std::vector<int>(v.begin(), v.begin() + 4) == std::vector<int>{1, 2, 4, 5});
        CHECK(v[4] == 3);
        CHECK(v[5] == 0);
    }
    SUBCASE("min length 1 disables extension") {
        std::vector<int> v{2, 1};
        CHECK(extend_run(view(v), Run{0, 1}, 1, less) == Run{0, 1});
    }
}

TEST_CASE("insertion_sort") {
    std::vector<int> two{2, 1};
    insertion_sort(view(two), 1, less);
    CHECK(two == std::vector<int>{1, 2});

    std::vector<int> sorted{1, 2, 3};
    CHECK(insertion_sort(view(sorted), 3, less) == 0);
    CHECK(sorted == std::vector<int>{1, 2, 3});

    auto ties = testutil::records({1, 1});
    insertion_sort(view(ties), 1, less);
    CHECK(ties[0].index == 0);
    CHECK(ties[1].index == 1);
}

TEST_CASE("insertion_sort is stable on random duplicate-heavy records") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 300; ++rep) {
        std::vector<std::int64_t> keys(1 + rng() % 40);
        for (auto& k : keys) k = static_cast<std::int64_t>(rng() % 4);
        auto v = testutil::records(keys);
        const auto expected = testutil::reference_sorted(v);
        insertion_sort(view(v), 0, less);
        CHECK(testutil::same_records(v, expected));
    }
}
