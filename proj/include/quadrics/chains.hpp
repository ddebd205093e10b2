#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "quadrics/errors.hpp"

namespace quadrics {

// One block of an ordered partition of {1..n}: one or two 1-based indices.
struct Block {
    int lo = 0;
    int hi = 0; // 0 when the block is a singleton, otherwise hi > lo

    bool is_pair() const { return hi != 0; }
    int size() const { return hi ? 2 : 1; }
    bool contains(int i) const { return i == lo || i == hi; }

    friend bool operator==(const Block&, const Block&) = default;
};

// Torus-fixed point of the variety of complete quadrics: an ordered
// partition of {1..n} into blocks of size 1 or 2. Prefix unions of the
// blocks reconstruct the ascending chain I_1 ⊂ ... ⊂ I_r = {1..n},
// block k being I_k \ I_{k-1}.
struct FixedPoint {
    int n = 0;
    std::vector<Block> blocks;

    const Block& first_block() const { return blocks.front(); }
    const Block& last_block() const { return blocks.back(); }

    // Partition property: blocks disjoint, union {1..n}, sizes 1 or 2,
    // within-block indices ascending.
    bool is_valid() const;

    // The ascending chain I_1 ⊂ ... ⊂ I_r as sorted index sets, rebuilt
    // from the prefix unions of the blocks.
    std::vector<std::vector<int>> chain() const;

    // Same partition with the block order reversed (chain read backwards).
    FixedPoint reversed() const;

    // One JSON-lines record: {"n":3,"blocks":[[1],[2,3]]}
    std::string to_json() const;

    friend bool operator==(const FixedPoint&, const FixedPoint&) = default;
};

// Number of torus-fixed points: κ(n) = n·κ(n−1) + C(n,2)·κ(n−2),
// κ(0) = κ(1) = 1.
mpz_class kappa(int n);

namespace detail {

// Enumeration tracks unused indices in a 64-bit mask.
inline constexpr int kMaxEnumerationDim = 64;

inline void check_enumeration_dim(int n) {
    if (n < 1)
        throw std::invalid_argument("dimension n must be >= 1, got " +
                                    std::to_string(n));
    if (n > kMaxEnumerationDim)
        throw std::invalid_argument("fixed-point enumeration supports n <= 64");
}

inline uint64_t full_mask(int n) {
    return n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
}

// Canonical order: at every step the candidate next blocks are all unused
// singletons {i} with i ascending, then all unused pairs {i,j} in
// lexicographic order. Recursing on each candidate yields the documented
// deterministic enumeration order.
template <class Visitor>
void enumerate_rec(FixedPoint& p, uint64_t unused, Visitor& visit) {
    if (unused == 0) {
        visit(std::as_const(p));
        return;
    }
    for (uint64_t m = unused; m; m &= m - 1) {
        const int i = std::countr_zero(m) + 1;
        p.blocks.push_back({i, 0});
        enumerate_rec(p, unused & ~(uint64_t{1} << (i - 1)), visit);
        p.blocks.pop_back();
    }
    for (uint64_t m1 = unused; m1; m1 &= m1 - 1) {
        const int i = std::countr_zero(m1) + 1;
        for (uint64_t m2 = m1 & (m1 - 1); m2; m2 &= m2 - 1) {
            const int j = std::countr_zero(m2) + 1;
            p.blocks.push_back({i, j});
            enumerate_rec(p,
                          unused & ~(uint64_t{1} << (i - 1)) &
                              ~(uint64_t{1} << (j - 1)),
                          visit);
            p.blocks.pop_back();
        }
    }
}

inline uint64_t mask_without(uint64_t mask, const Block& b, int n) {
    if (b.lo < 1 || b.lo > n || !(mask & (uint64_t{1} << (b.lo - 1))))
        throw std::invalid_argument("prefix is not a partial partition");
    mask &= ~(uint64_t{1} << (b.lo - 1));
    if (b.is_pair()) {
        if (b.hi <= b.lo || b.hi > n || !(mask & (uint64_t{1} << (b.hi - 1))))
            throw std::invalid_argument("prefix is not a partial partition");
        mask &= ~(uint64_t{1} << (b.hi - 1));
    }
    return mask;
}

} // namespace detail

// Streams every fixed point exactly once in canonical order. The visitor
// receives a reference that is valid only for the duration of the call;
// copy it if it must outlive the visit. Memory use is O(n) regardless of
// how many points are produced.
template <class Visitor>
void for_each_fixed_point(int n, Visitor&& visit) {
    detail::check_enumeration_dim(n);
    FixedPoint p;
    p.n = n;
    p.blocks.reserve(static_cast<size_t>(n));
    detail::enumerate_rec(p, detail::full_mask(n), visit);
}

// Streams the fixed points whose chain starts with the given blocks, in
// canonical order. An already-complete prefix yields exactly itself.
template <class Visitor>
void for_each_completion(int n, const std::vector<Block>& prefix,
                         Visitor&& visit) {
    detail::check_enumeration_dim(n);
    FixedPoint p;
    p.n = n;
    p.blocks.reserve(static_cast<size_t>(n));
    uint64_t unused = detail::full_mask(n);
    for (const Block& b : prefix) {
        p.blocks.push_back(b);
        unused = detail::mask_without(unused, b, n);
    }
    detail::enumerate_rec(p, unused, visit);
}

// Chain prefixes of at most `depth` blocks, in canonical order, cut so
// that enumerating the completions of each prefix in order visits every
// fixed point exactly once in canonical order. Used to partition the
// stream across workers.
std::vector<std::vector<Block>> enumeration_prefixes(int n, int depth);

} // namespace quadrics
