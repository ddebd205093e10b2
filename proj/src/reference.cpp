#include "quadrics/reference.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "quadrics/errors.hpp"

namespace quadrics {

mpq_class PhiPolynomial::operator()(const mpq_class& n) const {
    mpq_class v = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        v = v * n + *it;
    return v;
}

int PhiPolynomial::degree() const {
    for (size_t k = coeffs.size(); k-- > 0;)
        if (coeffs[k] != 0)
            return static_cast<int>(k);
    return -1;
}

namespace {

// One stored formula: (1/denom) * prod (n - root) * tail(n), with the
// trailing polynomial given by descending integer coefficients.
struct Formula {
    long denom;
    std::vector<long> roots;
    std::vector<long> tail;
};

const Formula& formula_for(int a) {
    static const std::vector<Formula> formulas = {
        /* a=1 */ {1, {}, {1}},
        /* a=2 */ {1, {1}, {1}},
        /* a=3 */ {1, {1, 1}, {1}},
        /* a=4 */ {6, {1, 2}, {5, -3}},
        /* a=5 */ {12, {1, 2}, {7, -19, 6}},
        /* a=6 */ {120, {1, 2}, {43, -221, 316, -60}},
        // -57 sits on the degree-2 term: the whole expression must have
        // degree a-1 = 6 after the cubic prefactor, and the localization
        // values for n = 4,5,6 confirm this reading.
        /* a=7 */ {60, {1, 2, 3}, {12, -57, 81, -10}},
        /* a=8 */ {840, {1, 2, 3}, {87, -654, 1755, -1844, 140}},
        /* a=9 */ {3360, {1, 2, 3}, {169, -1770, 7163, -14042, 12136, -560}},
        /* a=10 */
        {362880, {1, 2, 3},
         {8357, -114126, 629471, -1816902, 2911016, -2201088, 60480}},
        /* a=11 */
        {907200, {1, 2, 3, 4},
         {9053, -118395, 625700, -1749975, 2847707, -2352810, 37800}},
        /* a=12 */
        {9979200, {1, 2, 3, 4},
         {40993, -685483, 4763290, -17995750, 41239027, -59728927, 45442410,
          -415800}},
    };
    if (a < 1)
        throw std::invalid_argument("phi_closed_form: a must be >= 1");
    if (a > static_cast<int>(formulas.size()))
        throw unsupported_formula(
            "phi_closed_form: no stored formula for a = " + std::to_string(a) +
            " (known a <= 5, conjectured 6 <= a <= 12)");
    return formulas[static_cast<size_t>(a - 1)];
}

} // namespace

mpq_class phi_closed_form(long n, int a) {
    const Formula& f = formula_for(a);
    mpz_class value = 1;
    for (long r : f.roots)
        value *= mpz_class(n - r);
    mpz_class tail = 0;
    for (long c : f.tail)
        tail = tail * n + c;
    value *= tail;
    mpq_class q(value, f.denom);
    q.canonicalize();
    return q;
}

mpz_class beta_diagonal(int n, int a) {
    if (n < 1 || a < 1)
        throw std::invalid_argument("beta_diagonal: need n >= 1 and a >= 1");
    const int m = n - 2, k = a - 1;
    if (m < 0 || k > m)
        return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(m),
                 static_cast<unsigned long>(k));
    return r;
}

PhiPolynomial interpolate_phi(
    int a, const std::vector<std::pair<long, mpz_class>>& samples) {
    if (a < 1)
        throw std::invalid_argument("interpolate_phi: a must be >= 1");
    {
        std::vector<long> ns;
        ns.reserve(samples.size());
        for (const auto& [n, phi] : samples)
            ns.push_back(n);
        std::sort(ns.begin(), ns.end());
        if (std::adjacent_find(ns.begin(), ns.end()) != ns.end())
            throw std::invalid_argument(
                "interpolate_phi: duplicate sample point n");
    }
    if (samples.size() < static_cast<size_t>(a))
        throw std::invalid_argument(
            "interpolate_phi: need at least a = " + std::to_string(a) +
            " samples, got " + std::to_string(samples.size()));

    const size_t m = static_cast<size_t>(a);
    std::vector<mpq_class> coeffs(m, mpq_class(0));
    std::vector<mpq_class> basis; // expanded prod_{j != i} (x - x_j)
    for (size_t i = 0; i < m; ++i) {
        basis.assign(m, mpq_class(0));
        basis[0] = 1;
        size_t deg = 0;
        mpq_class denom = 1;
        const mpq_class xi(samples[i].first);
        for (size_t j = 0; j < m; ++j) {
            if (j == i)
                continue;
            const mpq_class xj(samples[j].first);
            // multiply the basis polynomial by (x - x_j)
            ++deg;
            for (size_t k = deg; k >= 1; --k)
                basis[k] = basis[k - 1] - xj * basis[k];
            basis[0] = -xj * basis[0];
            denom *= xi - xj;
        }
        const mpq_class scale = mpq_class(samples[i].second) / denom;
        for (size_t k = 0; k <= deg; ++k)
            coeffs[k] += scale * basis[k];
    }

    PhiPolynomial poly{a, std::move(coeffs)};
    for (size_t i = m; i < samples.size(); ++i) {
        const mpq_class predicted = poly(mpq_class(samples[i].first));
        if (predicted != mpq_class(samples[i].second))
            throw inconsistent_samples(
                "interpolate_phi: sample (n = " +
                std::to_string(samples[i].first) +
                ", phi = " + samples[i].second.get_str() +
                ") is off the degree-" + std::to_string(a - 1) +
                " interpolant, which predicts " + predicted.get_str());
    }
    return poly;
}

} // namespace quadrics
