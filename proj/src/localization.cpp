#include "quadrics/localization.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "quadrics/errors.hpp"

namespace quadrics {

namespace {

constexpr int kRandomSubgroupAttempts = 1000;

// Fast kernel precondition: with every |a_i| below this bound, compass
// pairings (at most 2(|a_i|+|a_j|)) and pair sums stay well inside int64.
constexpr uint64_t kFastWeightLimit = uint64_t{1} << 59;

int dimension(int n) { return n * (n + 1) / 2 - 1; } // dim of the variety

void check_n(int n) {
    if (n < 1)
        throw std::invalid_argument("n must be >= 1, got " + std::to_string(n));
}

mpz_class pair_sum(const Subgroup& s, const Block& b) {
    const mpz_class& lo = s.weights[static_cast<size_t>(b.lo - 1)];
    if (!b.is_pair())
        return lo + lo;
    return lo + s.weights[static_cast<size_t>(b.hi - 1)];
}

void set_mpz_from_i128(mpz_t out, __int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u =
        neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    mpz_set_ui(out, static_cast<uint64_t>(u >> 64));
    mpz_mul_2exp(out, out, 64);
    mpz_add_ui(out, out, static_cast<uint64_t>(u));
    if (neg)
        mpz_neg(out, out);
}

} // namespace

Subgroup default_subgroup(int n) {
    check_n(n);
    Subgroup s;
    s.n = n;
    s.weights.reserve(static_cast<size_t>(n));
    mpz_class w = 1;
    for (int i = 1; i <= n; ++i) {
        w *= 2; // a_i = 2^i
        s.weights.push_back(w);
    }
    return s;
}

Subgroup random_subgroup(int n, uint64_t seed, uint64_t bound) {
    check_n(n);
    if (bound < 1)
        throw std::invalid_argument("random_subgroup: bound must be >= 1");
    std::mt19937_64 rng(seed);
    Subgroup s;
    s.n = n;
    for (int attempt = 0; attempt < kRandomSubgroupAttempts; ++attempt) {
        s.weights.clear();
        for (int i = 0; i < n; ++i)
            s.weights.emplace_back(1 + rng() % bound);
        if (validate_subgroup(s))
            return s;
    }
    throw retries_exhausted(
        "random_subgroup: no generic weight vector in [1," +
        std::to_string(bound) + "]^" + std::to_string(n) + " after " +
        std::to_string(kRandomSubgroupAttempts) + " attempts; raise bound");
}

bool validate_subgroup(const Subgroup& s) {
    const size_t n = s.weights.size();
    std::vector<mpz_class> sums;
    sums.reserve(n * (n + 1) / 2);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j)
            sums.push_back(s.weights[i] + s.weights[j]);
    std::sort(sums.begin(), sums.end());
    return std::adjacent_find(sums.begin(), sums.end()) == sums.end();
}

RestrictedClass restrict_class(const FixedPoint& p, int a, int b) {
    if (!p.is_valid())
        throw std::invalid_argument("restrict_class: invalid fixed point");
    if (a < 0 || b < 0 || a + b != dimension(p.n))
        throw std::invalid_argument(
            "restrict_class: exponents must be nonnegative with a + b = "
            "C(n+1,2) - 1 = " +
            std::to_string(dimension(p.n)) + ", got a = " + std::to_string(a) +
            ", b = " + std::to_string(b));
    return {p.first_block(), p.last_block(), a, b};
}

mpq_class limit_ratio(const std::vector<mpz_class>& numerator_exponents,
                      const std::vector<mpz_class>& denominator_exponents) {
    if (numerator_exponents.size() != denominator_exponents.size())
        throw std::invalid_argument(
            "limit_ratio: exponent lists must have equal length");
    mpz_class num = 1, den = 1;
    for (const mpz_class& b : numerator_exponents) {
        if (b == 0)
            throw std::invalid_argument("limit_ratio: zero exponent");
        num *= b;
    }
    for (const mpz_class& c : denominator_exponents) {
        if (c == 0)
            throw std::invalid_argument("limit_ratio: zero exponent");
        den *= c;
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

mpq_class contribution(const FixedPoint& p, int a, int b, const Subgroup& s) {
    if (s.n != p.n || static_cast<int>(s.weights.size()) != p.n)
        throw std::invalid_argument("contribution: subgroup dimension " +
                                    std::to_string(s.n) +
                                    " does not match point dimension " +
                                    std::to_string(p.n));
    const RestrictedClass cls = restrict_class(p, a, b);

    const mpz_class first_sum = pair_sum(s, cls.first);
    const mpz_class last_sum = pair_sum(s, cls.last);
    mpz_class num;
    mpz_pow_ui(num.get_mpz_t(), mpz_class(-first_sum).get_mpz_t(),
               static_cast<unsigned long>(a));
    mpz_class lb;
    mpz_pow_ui(lb.get_mpz_t(), last_sum.get_mpz_t(),
               static_cast<unsigned long>(b));
    num *= lb;

    mpz_class den = 1;
    for_each_compass_pairing(
        p, s.weights, [&](const mpz_class& v, const detail::SparseCharacter& c) {
            if (v == 0)
                throw non_generic_subgroup(
                    "subgroup pairs to zero with compass character " +
                    detail::sparse_to_string(c) + " at " + p.to_json());
            den *= v;
        });

    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

namespace {

// Powers s^e for every possible pair sum s of the subgroup (all distinct
// by genericity) and every exponent e in 0..dim. Shared read-only by the
// workers; one mpz multiply per point retrieves a numerator.
template <class Sum>
struct PowerTable {
    std::vector<Sum> sums; // sorted
    std::vector<std::vector<mpz_class>> pows;

    void build(const std::vector<Sum>& weights, int dim) {
        const size_t n = weights.size();
        sums.clear();
        sums.reserve(n * (n + 1) / 2);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j)
                sums.push_back(weights[i] + weights[j]);
        std::sort(sums.begin(), sums.end());
        pows.assign(sums.size(), {});
        for (size_t k = 0; k < sums.size(); ++k) {
            auto& row = pows[k];
            row.reserve(static_cast<size_t>(dim) + 1);
            row.emplace_back(1);
            mpz_class base(sums[k]);
            for (int e = 1; e <= dim; ++e)
                row.push_back(row.back() * base);
        }
    }

    const std::vector<mpz_class>& row(const Sum& s) const {
        auto it = std::lower_bound(sums.begin(), sums.end(), s);
        assert(it != sums.end() && *it == s);
        return pows[static_cast<size_t>(it - sums.begin())];
    }
};

struct ExponentPair {
    unsigned long first;  // a - 1
    unsigned long last;   // dim - (a - 1)
    bool negate;          // (a - 1) odd: sign of (-first_sum)^(a-1)
};

// Accumulates Σ_p num_p / den_p for all requested exponent pairs over one
// sub-stream of fixed points. Weight type W is int64_t (fast kernel) or
// mpz_class (general kernel).
template <class W>
class Summation {
public:
    Summation(const std::vector<W>& weights, const PowerTable<W>& table,
              const std::vector<ExponentPair>& exps)
        : weights_(weights), table_(table), exps_(exps),
          acc_(exps.size(), mpq_class(0)) {}

    void consume(const FixedPoint& p) {
        compute_denominator(p);
        const auto& first_pows = table_.row(block_sum(p.first_block()));
        const auto& last_pows = table_.row(block_sum(p.last_block()));
        for (size_t i = 0; i < exps_.size(); ++i) {
            mpz_mul(mpq_numref(term_.get_mpq_t()),
                    first_pows[exps_[i].first].get_mpz_t(),
                    last_pows[exps_[i].last].get_mpz_t());
            if (exps_[i].negate)
                mpz_neg(mpq_numref(term_.get_mpq_t()),
                        mpq_numref(term_.get_mpq_t()));
            mpz_set(mpq_denref(term_.get_mpq_t()), den_.get_mpz_t());
            mpq_canonicalize(term_.get_mpq_t());
            acc_[i] += term_;
        }
        ++points_;
    }

    const std::vector<mpq_class>& partials() const { return acc_; }
    uint64_t points() const { return points_; }

private:
    W block_sum(const Block& b) const {
        const W& lo = weights_[static_cast<size_t>(b.lo - 1)];
        if (!b.is_pair())
            return lo + lo;
        return lo + weights_[static_cast<size_t>(b.hi - 1)];
    }

    void compute_denominator(const FixedPoint& p);

    const std::vector<W>& weights_;
    const PowerTable<W>& table_;
    const std::vector<ExponentPair>& exps_;
    std::vector<mpq_class> acc_;
    mpq_class term_;
    mpz_class den_;
    uint64_t points_ = 0;
};

// Fast kernel: pairings are int64; their product is chunked through
// __int128 so the big-integer multiply runs once per ~120 bits.
template <>
void Summation<int64_t>::compute_denominator(const FixedPoint& p) {
    __int128 chunk = 1;
    int bits = 0;
    bool den_started = false;
    for_each_compass_pairing(
        p, weights_, [&](int64_t v, const detail::SparseCharacter& c) {
            if (v == 0)
                throw non_generic_subgroup(
                    "subgroup pairs to zero with compass character " +
                    detail::sparse_to_string(c) + " at " + p.to_json());
            const uint64_t mag =
                v < 0 ? static_cast<uint64_t>(-v) : static_cast<uint64_t>(v);
            const int width = 64 - std::countl_zero(mag);
            if (bits + width > 120) {
                if (!den_started) {
                    set_mpz_from_i128(den_.get_mpz_t(), chunk);
                    den_started = true;
                } else {
                    mpz_class c128;
                    set_mpz_from_i128(c128.get_mpz_t(), chunk);
                    den_ *= c128;
                }
                chunk = 1;
                bits = 0;
            }
            chunk *= v;
            bits += width;
        });
    if (!den_started) {
        set_mpz_from_i128(den_.get_mpz_t(), chunk);
    } else {
        mpz_class c128;
        set_mpz_from_i128(c128.get_mpz_t(), chunk);
        den_ *= c128;
    }
}

template <>
void Summation<mpz_class>::compute_denominator(const FixedPoint& p) {
    den_ = 1;
    for_each_compass_pairing(
        p, weights_, [&](const mpz_class& v, const detail::SparseCharacter& c) {
            if (v == 0)
                throw non_generic_subgroup(
                    "subgroup pairs to zero with compass character " +
                    detail::sparse_to_string(c) + " at " + p.to_json());
            den_ *= v;
        });
}

template <class W>
std::vector<mpq_class> sum_over_points(int n, const std::vector<W>& weights,
                                       const std::vector<ExponentPair>& exps,
                                       int threads,
                                       std::atomic<uint64_t>* progress) {
    const int dim = dimension(n);
    PowerTable<W> table;
    table.build(weights, dim);

    const int depth = n >= 7 ? 2 : 1;
    const auto prefixes = enumeration_prefixes(n, depth);
    threads = std::clamp<int>(threads, 1, static_cast<int>(prefixes.size()));

    std::vector<mpq_class> total(exps.size(), mpq_class(0));
    std::mutex merge_mutex;
    std::atomic<size_t> next{0};
    std::exception_ptr failure;

    auto work = [&]() {
        try {
            Summation<W> local(weights, table, exps);
            uint64_t reported = 0;
            for (;;) {
                const size_t idx = next.fetch_add(1);
                if (idx >= prefixes.size())
                    break;
                for_each_completion(n, prefixes[idx],
                                    [&](const FixedPoint& p) { local.consume(p); });
                if (progress) {
                    progress->fetch_add(local.points() - reported,
                                        std::memory_order_relaxed);
                    reported = local.points();
                }
            }
            std::lock_guard<std::mutex> lock(merge_mutex);
            for (size_t i = 0; i < total.size(); ++i)
                total[i] += local.partials()[i];
        } catch (...) {
            std::lock_guard<std::mutex> lock(merge_mutex);
            if (!failure)
                failure = std::current_exception();
        }
    };

    if (threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(work);
        for (auto& th : pool)
            th.join();
    }
    if (failure)
        std::rethrow_exception(failure);
    return total;
}

bool fits_fast_kernel(const Subgroup& s) {
    for (const mpz_class& w : s.weights) {
        if (!w.fits_slong_p())
            return false;
        const long v = w.get_si();
        const uint64_t mag = v < 0 ? static_cast<uint64_t>(-(v + 1)) + 1
                                   : static_cast<uint64_t>(v);
        if (mag >= kFastWeightLimit)
            return false;
    }
    return true;
}

} // namespace

std::vector<mpz_class> ml_degree_row(int n, const std::vector<int>& as,
                                     const Subgroup& s, int threads,
                                     std::atomic<uint64_t>* progress) {
    check_n(n);
    if (threads < 1)
        throw std::invalid_argument("ml_degree_row: threads must be >= 1");
    if (s.n != n || static_cast<int>(s.weights.size()) != n)
        throw std::invalid_argument("ml_degree_row: subgroup dimension " +
                                    std::to_string(s.n) +
                                    " does not match n = " + std::to_string(n));
    if (!validate_subgroup(s))
        throw non_generic_subgroup(
            "subgroup fails genericity: two pair sums a_i + a_i' coincide");
    const int dim = dimension(n);
    std::vector<ExponentPair> exps;
    exps.reserve(as.size());
    for (int a : as) {
        if (a < 1 || a > dim + 1)
            throw std::invalid_argument(
                "ml_degree: a must satisfy 1 <= a <= C(n+1,2) = " +
                std::to_string(dim + 1) + ", got " + std::to_string(a));
        exps.push_back({static_cast<unsigned long>(a - 1),
                        static_cast<unsigned long>(dim - (a - 1)),
                        (a - 1) % 2 != 0});
    }

    std::vector<mpq_class> sums;
    if (fits_fast_kernel(s)) {
        std::vector<int64_t> w64;
        w64.reserve(s.weights.size());
        for (const mpz_class& w : s.weights)
            w64.push_back(w.get_si());
        sums = sum_over_points<int64_t>(n, w64, exps, threads, progress);
    } else {
        sums = sum_over_points<mpz_class>(n, s.weights, exps, threads, progress);
    }

    // Cotangent convention of the push-forward: negating the compass of
    // the tangent-character contributions is one global sign.
    const bool flip = dim % 2 != 0;
    std::vector<mpz_class> result;
    result.reserve(sums.size());
    for (size_t i = 0; i < sums.size(); ++i) {
        mpq_class total = flip ? mpq_class(-sums[i]) : sums[i];
        if (total.get_den() != 1)
            throw internal_error(
                "ml_degree: localization sum for a = " +
                std::to_string(as[i]) + " is not an integer: " +
                total.get_str());
        if (total <= 0)
            throw internal_error("ml_degree: localization sum for a = " +
                                 std::to_string(as[i]) +
                                 " is not positive: " + total.get_str());
        result.push_back(total.get_num());
    }
    return result;
}

mpz_class ml_degree(int n, int a, const Subgroup& s, int threads) {
    return ml_degree_row(n, {a}, s, threads).front();
}

mpz_class ml_degree(int n, int a) {
    return ml_degree(n, a, default_subgroup(n), 1);
}

} // namespace quadrics
