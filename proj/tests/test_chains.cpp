#include <doctest.h>

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "quadrics/chains.hpp"

using namespace quadrics;

namespace {

std::vector<FixedPoint> collect(int n) {
    std::vector<FixedPoint> out;
    for_each_fixed_point(n, [&](const FixedPoint& p) { out.push_back(p); });
    return out;
}

uint64_t count_points(int n) {
    uint64_t c = 0;
    for_each_fixed_point(n, [&](const FixedPoint&) { ++c; });
    return c;
}

} // namespace

TEST_CASE("kappa small values and recursion") {
    CHECK(kappa(0) == 1);
    CHECK(kappa(1) == 1);
    CHECK(kappa(2) == 3);
    CHECK(kappa(3) == 12);
    CHECK(kappa(4) == 66);
    CHECK(kappa(5) == 450);
    CHECK(kappa(6) == 3690);
    CHECK(kappa(7) == 35280);
    CHECK(kappa(9) == 4740120);
    for (int n = 2; n <= 20; ++n)
        CHECK(kappa(n) == n * kappa(n - 1) +
                              mpz_class(n) * (n - 1) / 2 * kappa(n - 2));
    CHECK_THROWS_AS(kappa(-1), std::invalid_argument);
}

TEST_CASE("kappa matches the Binet-style closed form") {
    // n!((1+sqrt3)^{n+1} - (1-sqrt3)^{n+1}) / (2^{n+1} sqrt3), evaluated
    // with 512-bit floats; test-only, the production path is the recursion.
    mpf_set_default_prec(512);
    mpf_class sqrt3;
    mpf_sqrt_ui(sqrt3.get_mpf_t(), 3);
    for (int n = 1; n <= 12; ++n) {
        mpf_class plus = 1 + sqrt3, minus = 1 - sqrt3;
        mpf_class pp, mm;
        mpf_pow_ui(pp.get_mpf_t(), plus.get_mpf_t(),
                   static_cast<unsigned long>(n + 1));
        mpf_pow_ui(mm.get_mpf_t(), minus.get_mpf_t(),
                   static_cast<unsigned long>(n + 1));
        mpz_class fact;
        mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
        mpz_class pow2;
        mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(n + 1));
        mpf_class value = mpf_class(fact) * (pp - mm) / (mpf_class(pow2) * sqrt3);
        mpf_class err = value - mpf_class(kappa(n));
        CHECK(abs(err) < 0.5);
    }
}

TEST_CASE("enumeration counts equal kappa") {
    for (int n = 1; n <= 9; ++n) {
        CHECK(mpz_class(static_cast<unsigned long>(count_points(n))) ==
              kappa(n));
    }
}

TEST_CASE("canonical order for n=2") {
    const auto pts = collect(2);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].blocks == std::vector<Block>{{1, 0}, {2, 0}});
    CHECK(pts[1].blocks == std::vector<Block>{{2, 0}, {1, 0}});
    CHECK(pts[2].blocks == std::vector<Block>{{1, 2}});
}

TEST_CASE("n=1 and n=3") {
    const auto one = collect(1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].blocks == std::vector<Block>{{1, 0}});
    CHECK(collect(3).size() == 12);
}

TEST_CASE("every yielded point is a valid partition, no duplicates") {
    for (int n = 1; n <= 6; ++n) {
        std::set<std::string> seen;
        for_each_fixed_point(n, [&](const FixedPoint& p) {
            CHECK(p.n == n);
            CHECK(p.is_valid());
            CHECK(seen.insert(p.to_json()).second);
        });
        CHECK(seen.size() == static_cast<size_t>(kappa(n).get_ui()));
    }
}

TEST_CASE("enumeration is deterministic") {
    const auto a = collect(5);
    const auto b = collect(5);
    CHECK(a == b);
}

TEST_CASE("prefix chunks concatenate to the canonical stream") {
    for (int n : {3, 5}) {
        const auto plain = collect(n);
        for (int depth : {1, 2, 3}) {
            std::vector<FixedPoint> chunked;
            for (const auto& prefix : enumeration_prefixes(n, depth))
                for_each_completion(n, prefix, [&](const FixedPoint& p) {
                    chunked.push_back(p);
                });
            CHECK(chunked == plain);
        }
    }
}

TEST_CASE("invalid dimensions are rejected") {
    CHECK_THROWS_AS(count_points(0), std::invalid_argument);
    CHECK_THROWS_AS(count_points(-3), std::invalid_argument);
    CHECK_THROWS_AS(enumeration_prefixes(0, 1), std::invalid_argument);
}

TEST_CASE("JSON record") {
    FixedPoint p{3, {{1, 0}, {2, 3}}};
    CHECK(p.to_json() == "{\"n\":3,\"blocks\":[[1],[2,3]]}");
}

TEST_CASE("prefix unions rebuild the ascending chain") {
    const FixedPoint p{5, {{2, 4}, {1, 0}, {3, 5}}};
    const std::vector<std::vector<int>> expected = {
        {2, 4}, {1, 2, 4}, {1, 2, 3, 4, 5}};
    CHECK(p.chain() == expected);
    // last chain element is always {1..n}, steps have size 1 or 2
    for_each_fixed_point(4, [&](const FixedPoint& q) {
        const auto chain = q.chain();
        CHECK(chain.back() == std::vector<int>{1, 2, 3, 4});
        size_t prev = 0;
        for (const auto& link : chain) {
            CHECK(link.size() - prev >= 1);
            CHECK(link.size() - prev <= 2);
            prev = link.size();
        }
    });
}

TEST_CASE("reversed flips block order") {
    FixedPoint p{5, {{1, 4}, {3, 0}, {2, 5}}};
    const FixedPoint r = p.reversed();
    CHECK(r.blocks == std::vector<Block>{{2, 5}, {3, 0}, {1, 4}});
    CHECK(r.reversed() == p);
}

TEST_CASE("is_valid rejects malformed partitions") {
    CHECK(FixedPoint{2, {{1, 2}}}.is_valid());
    CHECK_FALSE(FixedPoint{2, {{1, 0}}}.is_valid());          // missing 2
    CHECK_FALSE(FixedPoint{2, {{1, 0}, {1, 0}}}.is_valid());  // duplicate
    CHECK_FALSE(FixedPoint{2, {{1, 3}}}.is_valid());          // out of range
    CHECK_FALSE(FixedPoint{2, {{2, 1}}}.is_valid());          // hi <= lo
    CHECK_FALSE(FixedPoint{3, {{1, 2}, {2, 3}}}.is_valid());  // overlap
}
