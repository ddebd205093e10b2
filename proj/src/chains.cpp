#include "quadrics/chains.hpp"

#include <algorithm>
#include <sstream>

namespace quadrics {

bool FixedPoint::is_valid() const {
    if (n < 1)
        return false;
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    int covered = 0;
    for (const Block& b : blocks) {
        if (b.lo < 1 || b.lo > n)
            return false;
        if (seen[static_cast<size_t>(b.lo)])
            return false;
        seen[static_cast<size_t>(b.lo)] = 1;
        ++covered;
        if (b.is_pair()) {
            if (b.hi <= b.lo || b.hi > n)
                return false;
            if (seen[static_cast<size_t>(b.hi)])
                return false;
            seen[static_cast<size_t>(b.hi)] = 1;
            ++covered;
        }
    }
    return covered == n;
}

std::vector<std::vector<int>> FixedPoint::chain() const {
    std::vector<std::vector<int>> out;
    out.reserve(blocks.size());
    std::vector<int> prefix;
    for (const Block& b : blocks) {
        prefix.push_back(b.lo);
        if (b.is_pair())
            prefix.push_back(b.hi);
        std::sort(prefix.begin(), prefix.end());
        out.push_back(prefix);
    }
    return out;
}

FixedPoint FixedPoint::reversed() const {
    FixedPoint r;
    r.n = n;
    r.blocks.assign(blocks.rbegin(), blocks.rend());
    return r;
}

std::string FixedPoint::to_json() const {
    std::ostringstream out;
    out << "{\"n\":" << n << ",\"blocks\":[";
    for (size_t k = 0; k < blocks.size(); ++k) {
        if (k)
            out << ',';
        out << '[' << blocks[k].lo;
        if (blocks[k].is_pair())
            out << ',' << blocks[k].hi;
        out << ']';
    }
    out << "]}";
    return out.str();
}

mpz_class kappa(int n) {
    if (n < 0)
        throw std::invalid_argument("kappa: n must be >= 0, got " +
                                    std::to_string(n));
    mpz_class prev = 1, cur = 1; // κ(0), κ(1)
    for (int m = 2; m <= n; ++m) {
        // κ(m) = m·κ(m−1) + C(m,2)·κ(m−2)
        mpz_class next = m * cur + (mpz_class(m) * (m - 1) / 2) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return n == 0 ? prev : cur;
}

namespace {

void collect_prefixes(int n, uint64_t unused, int depth,
                      std::vector<Block>& stack,
                      std::vector<std::vector<Block>>& out) {
    if (depth == 0 || unused == 0) {
        out.push_back(stack);
        return;
    }
    for (uint64_t m = unused; m; m &= m - 1) {
        const int i = std::countr_zero(m) + 1;
        stack.push_back({i, 0});
        collect_prefixes(n, unused & ~(uint64_t{1} << (i - 1)), depth - 1,
                         stack, out);
        stack.pop_back();
    }
    for (uint64_t m1 = unused; m1; m1 &= m1 - 1) {
        const int i = std::countr_zero(m1) + 1;
        for (uint64_t m2 = m1 & (m1 - 1); m2; m2 &= m2 - 1) {
            const int j = std::countr_zero(m2) + 1;
            stack.push_back({i, j});
            collect_prefixes(n,
                             unused & ~(uint64_t{1} << (i - 1)) &
                                 ~(uint64_t{1} << (j - 1)),
                             depth - 1, stack, out);
            stack.pop_back();
        }
    }
}

} // namespace

std::vector<std::vector<Block>> enumeration_prefixes(int n, int depth) {
    detail::check_enumeration_dim(n);
    if (depth < 0)
        throw std::invalid_argument("enumeration_prefixes: depth must be >= 0");
    std::vector<std::vector<Block>> out;
    std::vector<Block> stack;
    collect_prefixes(n, detail::full_mask(n), depth, stack, out);
    return out;
}

} // namespace quadrics
