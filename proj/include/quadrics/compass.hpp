#pragma once

#include <string>
#include <vector>

#include "quadrics/chains.hpp"

namespace quadrics {

// A weight Σ c_i ε_i of the torus action, stored as the dense coefficient
// vector (c_1..c_n). Coefficient sums vanish (SL(V) torus).
struct Character {
    std::vector<int> coeffs;

    bool is_zero() const;
    int coeff_sum() const;
    Character negated() const;

    // Human-readable form for diagnostics: "2e1-e2-e3".
    std::string to_string() const;

    friend bool operator==(const Character&, const Character&) = default;
    friend auto operator<=>(const Character&, const Character&) = default;
};

namespace detail {

// Sparse form of a tangent character: at most four (index, coefficient)
// entries. Every character of the six case shapes fits.
struct SparseCharacter {
    int idx[4];
    int coeff[4];
    int len = 0;
    int case_no = 0;

    void add(int index, int c) {
        idx[len] = index;
        coeff[len] = c;
        ++len;
    }
};

// Emits the tangent characters at p in the documented order: case number
// (1)..(6) first, then block position, then index order within a block.
//
//   (1) ε_i − ε_j            i in a strictly earlier block than j
//   (2) 2ε_i − 2ε_j          consecutive singletons {i} then {j}
//   (3) ε_i − ε_j, ε_j − ε_i each pair block {i,j}
//   (4) 2ε_k − ε_i − ε_j     consecutive singleton {k} then pair {i,j}
//   (5) ε_i + ε_j − 2ε_k     consecutive pair {i,j} then singleton {k}
//   (6) ε_i' + ε_j' − ε_i − ε_j  consecutive pairs {i',j'} then {i,j}
//
// Earlier blocks always carry the positive coefficients.
template <class Emit>
void for_each_character(const FixedPoint& p, Emit&& emit) {
    const auto& blocks = p.blocks;
    const size_t r = blocks.size();

    // (1): one character per ordered cross-block pair
    for (size_t s = 0; s + 1 < r; ++s) {
        for (size_t t = s + 1; t < r; ++t) {
            const int is[2] = {blocks[s].lo, blocks[s].hi};
            const int js[2] = {blocks[t].lo, blocks[t].hi};
            for (int a = 0; a < blocks[s].size(); ++a) {
                for (int b = 0; b < blocks[t].size(); ++b) {
                    SparseCharacter c;
                    c.case_no = 1;
                    c.add(is[a], 1);
                    c.add(js[b], -1);
                    emit(c);
                }
            }
        }
    }
    // (2): singleton then singleton
    for (size_t s = 0; s + 1 < r; ++s) {
        if (!blocks[s].is_pair() && !blocks[s + 1].is_pair()) {
            SparseCharacter c;
            c.case_no = 2;
            c.add(blocks[s].lo, 2);
            c.add(blocks[s + 1].lo, -2);
            emit(c);
        }
    }
    // (3): both roots of each pair block
    for (size_t s = 0; s < r; ++s) {
        if (blocks[s].is_pair()) {
            SparseCharacter c;
            c.case_no = 3;
            c.add(blocks[s].lo, 1);
            c.add(blocks[s].hi, -1);
            emit(c);
            SparseCharacter d;
            d.case_no = 3;
            d.add(blocks[s].lo, -1);
            d.add(blocks[s].hi, 1);
            emit(d);
        }
    }
    // (4): singleton then pair
    for (size_t s = 0; s + 1 < r; ++s) {
        if (!blocks[s].is_pair() && blocks[s + 1].is_pair()) {
            SparseCharacter c;
            c.case_no = 4;
            c.add(blocks[s].lo, 2);
            c.add(blocks[s + 1].lo, -1);
            c.add(blocks[s + 1].hi, -1);
            emit(c);
        }
    }
    // (5): pair then singleton
    for (size_t s = 0; s + 1 < r; ++s) {
        if (blocks[s].is_pair() && !blocks[s + 1].is_pair()) {
            SparseCharacter c;
            c.case_no = 5;
            c.add(blocks[s].lo, 1);
            c.add(blocks[s].hi, 1);
            c.add(blocks[s + 1].lo, -2);
            emit(c);
        }
    }
    // (6): pair then pair
    for (size_t s = 0; s + 1 < r; ++s) {
        if (blocks[s].is_pair() && blocks[s + 1].is_pair()) {
            SparseCharacter c;
            c.case_no = 6;
            c.add(blocks[s].lo, 1);
            c.add(blocks[s].hi, 1);
            c.add(blocks[s + 1].lo, -1);
            c.add(blocks[s + 1].hi, -1);
            emit(c);
        }
    }
}

std::string sparse_to_string(const SparseCharacter& c);

} // namespace detail

// All tangent characters of the torus action at p, in the documented
// order. Exactly C(n+1,2) − 1 characters, pairwise distinct; both are
// re-checked on every call and a violation throws internal_error.
std::vector<Character> compass(const FixedPoint& p);

// Pairing ⟨χ, w⟩ = Σ χ_k w_k folded over the compass of p without
// materializing the characters; `fn` is called once per character with
// (pairing value, sparse character). Weight type W is any integer type
// supporting +,-,* with int (int64_t, mpz_class, ...).
template <class W, class Fn>
void for_each_compass_pairing(const FixedPoint& p, const std::vector<W>& weights,
                              Fn&& fn) {
    detail::for_each_character(p, [&](const detail::SparseCharacter& c) {
        W v = weights[c.idx[0] - 1] * c.coeff[0];
        for (int k = 1; k < c.len; ++k)
            v += weights[c.idx[k] - 1] * c.coeff[k];
        fn(v, c);
    });
}

} // namespace quadrics
