#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "quadrics/chains.hpp"
#include "quadrics/compass.hpp"
#include "quadrics/errors.hpp"

using namespace quadrics;

namespace {

std::vector<std::vector<int>> coeff_lists(const std::vector<Character>& cs) {
    std::vector<std::vector<int>> out;
    out.reserve(cs.size());
    for (const Character& c : cs)
        out.push_back(c.coeffs);
    return out;
}

} // namespace

TEST_CASE("golden compass of the full flag ({1},{2},{3})") {
    const FixedPoint p{3, {{1, 0}, {2, 0}, {3, 0}}};
    const auto chars = coeff_lists(compass(p));
    const std::vector<std::vector<int>> expected = {
        {1, -1, 0}, {1, 0, -1}, {0, 1, -1}, {2, -2, 0}, {0, 2, -2}};
    CHECK(chars == expected);
}

TEST_CASE("single pair block: both roots") {
    const FixedPoint p{2, {{1, 2}}};
    const auto chars = coeff_lists(compass(p));
    const std::vector<std::vector<int>> expected = {{1, -1}, {-1, 1}};
    CHECK(chars == expected);
}

TEST_CASE("two singletons") {
    const FixedPoint p{2, {{1, 0}, {2, 0}}};
    const auto chars = coeff_lists(compass(p));
    const std::vector<std::vector<int>> expected = {{1, -1}, {2, -2}};
    CHECK(chars == expected);
}

TEST_CASE("cardinality, distinctness and coefficient shape for n <= 6") {
    for (int n = 1; n <= 6; ++n) {
        const size_t expected = static_cast<size_t>(n) * (n + 1) / 2 - 1;
        for_each_fixed_point(n, [&](const FixedPoint& p) {
            const auto chars = compass(p); // throws on count/duplicate defects
            REQUIRE(chars.size() == expected);
            for (const Character& c : chars) {
                CHECK(c.coeff_sum() == 0);
                CHECK_FALSE(c.is_zero());
                int nonzero = 0;
                for (int v : c.coeffs) {
                    CHECK(v >= -2);
                    CHECK(v <= 2);
                    if (v != 0)
                        ++nonzero;
                }
                CHECK(nonzero <= 4);
            }
        });
    }
}

TEST_CASE("reversing the chain negates the compass as a set") {
    for (int n = 2; n <= 5; ++n) {
        for_each_fixed_point(n, [&](const FixedPoint& p) {
            std::set<std::vector<int>> negated;
            for (const Character& c : compass(p))
                negated.insert(c.negated().coeffs);
            std::set<std::vector<int>> reversed;
            for (const Character& c : compass(p.reversed()))
                reversed.insert(c.coeffs);
            CHECK(negated == reversed);
        });
    }
}

TEST_CASE("all-singleton chains: cross pairs plus doubled consecutive") {
    const int n = 5;
    // identity permutation as a chain
    FixedPoint p{n, {}};
    for (int i = 1; i <= n; ++i)
        p.blocks.push_back({i, 0});
    std::set<std::vector<int>> expected;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            std::vector<int> c(n, 0);
            c[i - 1] = 1;
            c[j - 1] = -1;
            expected.insert(c);
        }
    for (int i = 1; i < n; ++i) {
        std::vector<int> c(n, 0);
        c[i - 1] = 2;
        c[i] = -2;
        expected.insert(c);
    }
    std::set<std::vector<int>> got;
    for (const Character& c : compass(p))
        got.insert(c.coeffs);
    CHECK(got == expected);
    CHECK(expected.size() == static_cast<size_t>(n * (n + 1) / 2 - 1));
}

TEST_CASE("compass rejects invalid points") {
    CHECK_THROWS_AS(compass(FixedPoint{2, {{1, 0}}}), std::invalid_argument);
}

TEST_CASE("character helpers") {
    const Character c{{2, -1, -1}};
    CHECK(c.coeff_sum() == 0);
    CHECK_FALSE(c.is_zero());
    CHECK(c.negated().coeffs == std::vector<int>{-2, 1, 1});
    CHECK(c.to_string() == "2e1-e2-e3");
    CHECK(Character{{1, -1}}.to_string() == "e1-e2");
    CHECK(Character{{0, 0}}.to_string() == "0");
}
