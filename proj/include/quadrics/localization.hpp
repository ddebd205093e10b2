#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "quadrics/chains.hpp"
#include "quadrics/compass.hpp"

namespace quadrics {

// One-parameter subgroup ε_i ↦ a_i specializing t_i ↦ t^{a_i}. Generic
// when all C(n+1,2) pair sums a_i + a_{i'} (i ≤ i') are distinct, which
// keeps every compass character away from zero.
struct Subgroup {
    int n = 0;
    std::vector<mpz_class> weights; // a_1..a_n
};

// The standard choice a_i = 2^i. Pair sums of powers of two have distinct
// binary digit patterns, so genericity holds for every n.
Subgroup default_subgroup(int n);

// Deterministic rejection sampler: draws weight vectors with entries in
// [1, bound] from a seeded generator until the genericity condition
// holds. Use bound >= n^3 to keep the collision rate low; gives up after
// 1000 attempts (retries_exhausted).
Subgroup random_subgroup(int n, uint64_t seed, uint64_t bound);

// True iff all pair sums a_i + a_{i'} (i ≤ i') are pairwise distinct.
bool validate_subgroup(const Subgroup& s);

// Data of the K-theory class restriction at p: the Laurent monomial
// (1 − t_i⁻¹ t_{i'}⁻¹)^a (1 − t_j t_{j'})^b with {i,i'} the first block
// and {j,j'} the last block (i = i' resp. j = j' for singletons).
struct RestrictedClass {
    Block first;
    Block last;
    int a = 0;
    int b = 0;

    friend bool operator==(const RestrictedClass&, const RestrictedClass&) = default;
};

// Requires a + b = C(n+1,2) − 1 (the dimension); throws invalid_argument
// otherwise.
RestrictedClass restrict_class(const FixedPoint& p, int a, int b);

// lim_{t→1} ∏(1 − t^{b_i}) / ∏(1 − t^{c_i}) = (∏ b_i) / (∏ c_i).
// Lists must have equal length and no zero entries.
mpq_class limit_ratio(const std::vector<mpz_class>& numerator_exponents,
                      const std::vector<mpz_class>& denominator_exponents);

// The t→1 limit of r_p after specialization along s:
//
//     (−(a_i + a_{i'}))^a · (a_j + a_{j'})^b / ∏_χ ⟨χ, s.weights⟩
//
// with the product over the compass of p. Throws non_generic_subgroup
// (naming the character) if some pairing vanishes.
mpq_class contribution(const FixedPoint& p, int a, int b, const Subgroup& s);

// ML-degree φ(n,a) = Σ_p contribution(p, a−1, C(n+1,2)−a, s) over all
// fixed points, times the global cotangent sign (−1)^(C(n+1,2)−1).
// Exact rational arithmetic throughout; the sum is checked to be a
// positive integer (internal_error otherwise). Valid a: 1..C(n+1,2).
mpz_class ml_degree(int n, int a);
mpz_class ml_degree(int n, int a, const Subgroup& s, int threads = 1);

// Computes φ(n,a) for several a in one sweep over the fixed points (the
// denominators are shared). `progress`, when given, accumulates the
// number of points processed and may be polled from another thread.
std::vector<mpz_class> ml_degree_row(int n, const std::vector<int>& as,
                                     const Subgroup& s, int threads = 1,
                                     std::atomic<uint64_t>* progress = nullptr);

} // namespace quadrics
