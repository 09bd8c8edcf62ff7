#pragma once

#include <stdexcept>
#include <string>

#include "expsieve/multipoly.hpp"

namespace expsieve {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

// Parses an integer polynomial in the variables t1..tr and X from text built
// with +, -, *, ^, parentheses and non-negative integer literals.  The
// variable count is the largest t index that appears (t indices are 1-based
// and contiguous use is not required).  The result must involve X with degree
// at least 1.  Throws ParseError on malformed input and std::overflow_error
// when a coefficient leaves the signed 64-bit range.
IntMultiPoly parse_poly(const std::string& text);

// Canonical rendering: X-degree descending, then t exponents lexicographically;
// round-trips through parse_poly.
std::string to_string(const IntMultiPoly& f);

}  // namespace expsieve
