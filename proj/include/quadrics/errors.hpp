#pragma once

#include <stdexcept>
#include <string>

namespace quadrics {

// Violated internal invariant (wrong compass cardinality, non-integer
// localization sum, ...). Signals a bug in this library, not a user error.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

// A one-parameter subgroup paired to zero against a compass character.
// The message names the offending character.
class non_generic_subgroup : public std::invalid_argument {
public:
    explicit non_generic_subgroup(const std::string& what)
        : std::invalid_argument(what) {}
};

// No closed-form or conjectured formula is stored for the requested a.
class unsupported_formula : public std::invalid_argument {
public:
    explicit unsupported_formula(const std::string& what)
        : std::invalid_argument(what) {}
};

// Interpolation was given more samples than needed and an extra sample
// does not lie on the interpolated polynomial.
class inconsistent_samples : public std::runtime_error {
public:
    explicit inconsistent_samples(const std::string& what)
        : std::runtime_error(what) {}
};

// Rejection sampling failed to produce a generic subgroup within the
// retry limit.
class retries_exhausted : public std::runtime_error {
public:
    explicit retries_exhausted(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace quadrics
