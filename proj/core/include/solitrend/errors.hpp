#pragma once

#include <stdexcept>
#include <string>

namespace solitrend {

/// Bad inputs: malformed files, out-of-range parameters, violated preconditions.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// A requested quantity is undefined for the given inputs (e.g. a return time
/// without forcing). Distinct so callers can branch on it.
class undefined_error : public validation_error {
public:
    explicit undefined_error(const std::string& what) : validation_error(what) {}
};

/// Numerical failure during a run: blow-up, escape from a confining well,
/// exhausted step budget.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace solitrend
