#include "quadrics/compass.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "quadrics/errors.hpp"

namespace quadrics {

bool Character::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](int c) { return c == 0; });
}

int Character::coeff_sum() const {
    return std::accumulate(coeffs.begin(), coeffs.end(), 0);
}

Character Character::negated() const {
    Character r = *this;
    for (int& c : r.coeffs)
        c = -c;
    return r;
}

std::string Character::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        const int c = coeffs[i];
        if (c == 0)
            continue;
        if (c > 0 && !first)
            out << '+';
        if (c == -1)
            out << '-';
        else if (c != 1)
            out << c;
        out << 'e' << (i + 1);
        first = false;
    }
    if (first)
        out << '0';
    return out.str();
}

namespace detail {

std::string sparse_to_string(const SparseCharacter& c) {
    std::ostringstream out;
    for (int k = 0; k < c.len; ++k) {
        const int v = c.coeff[k];
        if (v > 0 && k > 0)
            out << '+';
        if (v == -1)
            out << '-';
        else if (v != 1)
            out << v;
        out << 'e' << c.idx[k];
    }
    return out.str();
}

} // namespace detail

std::vector<Character> compass(const FixedPoint& p) {
    if (!p.is_valid())
        throw std::invalid_argument("compass: fixed point is not a valid "
                                    "ordered partition of {1..n}");
    const size_t n = static_cast<size_t>(p.n);
    std::vector<Character> chars;
    const size_t expected =
        static_cast<size_t>(p.n) * (static_cast<size_t>(p.n) + 1) / 2 - 1;
    chars.reserve(expected);

    detail::for_each_character(p, [&](const detail::SparseCharacter& c) {
        Character ch;
        ch.coeffs.assign(n, 0);
        for (int k = 0; k < c.len; ++k)
            ch.coeffs[static_cast<size_t>(c.idx[k] - 1)] += c.coeff[k];
        chars.push_back(std::move(ch));
    });

    if (chars.size() != expected)
        throw internal_error("compass: expected " + std::to_string(expected) +
                             " characters at " + p.to_json() + ", generated " +
                             std::to_string(chars.size()));
    std::vector<Character> sorted = chars;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw internal_error("compass: duplicate character at " + p.to_json());
    return chars;
}

} // namespace quadrics
