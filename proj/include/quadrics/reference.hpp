#pragma once

#include <utility>
#include <vector>

#include <gmpxx.h>

namespace quadrics {

// φ(·,a) as a polynomial in n with exact rational coefficients,
// ascending degree; size a (degree a−1) when produced by interpolation.
struct PhiPolynomial {
    int a = 0;
    std::vector<mpq_class> coeffs;

    mpq_class operator()(const mpq_class& n) const;
    int degree() const; // index of the highest nonzero coefficient
};

// Exact value of the known (a ≤ 5) or conjectured (6 ≤ a ≤ 12) closed
// form for φ(n,a) at any integer n, including n ≤ 0 for extrapolation.
// Throws unsupported_formula for a > 12.
mpq_class phi_closed_form(long n, int a);

// ML-degree of the diagonal (log-linear) analogue: the β invariant
// C(n−2, a−1), zero outside the binomial range.
mpz_class beta_diagonal(int n, int a);

// Exact Lagrange interpolation through (n, φ) samples. Uses the first a
// distinct samples to build the unique degree-<a polynomial and verifies
// every extra sample lies on it (inconsistent_samples otherwise —
// evidence against polynomiality at this a). Duplicate n values are an
// invalid_argument.
PhiPolynomial interpolate_phi(int a,
                              const std::vector<std::pair<long, mpz_class>>& samples);

} // namespace quadrics
