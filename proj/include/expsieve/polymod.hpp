#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "expsieve/multipoly.hpp"

namespace expsieve {

// Dense polynomial over F_p, coefficients ascending, no trailing zeros.
struct PolyModP {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    std::uint64_t eval(std::uint64_t x) const;
    bool operator==(const PolyModP&) const = default;
};

// Reduces the coefficients mod p and strips trailing zeros.
PolyModP make_poly(std::uint64_t p, std::vector<std::uint64_t> coeffs);
PolyModP poly_add(const PolyModP&, const PolyModP&);
PolyModP poly_sub(const PolyModP&, const PolyModP&);
PolyModP poly_mul(const PolyModP&, const PolyModP&);
PolyModP poly_rem(const PolyModP& a, const PolyModP& b);
PolyModP poly_gcd(PolyModP a, PolyModP b);  // monic (or zero)
PolyModP poly_derivative(const PolyModP&);
PolyModP poly_monic(const PolyModP&);
// base^e mod modulus (e >= 0, modulus of degree >= 1).
PolyModP poly_pow_mod(const PolyModP& base, std::uint64_t e, const PolyModP& modulus);

struct Specialized {
    PolyModP F;
    bool lead_ok = false;  // the formal X-leading coefficient survives mod p
};
// f(y, X) mod p for residues y (one per t variable).
Specialized specialize(const IntMultiPoly& f, const std::vector<std::uint64_t>& y,
                       std::uint64_t p);

// deg F >= 1 and gcd(F, F') is constant.
bool is_separable(const PolyModP& F);
// Does F have a root in F_p?  Constant nonzero F: no.  Zero F: invalid.
bool has_root(const PolyModP& F);
// All distinct roots in F_p, ascending.  Randomized splitting is driven by a
// deterministic seed; the returned set is seed-independent.
std::vector<std::uint64_t> all_roots(const PolyModP& F, std::uint64_t seed = 1);
// Smallest root, if any.
std::optional<std::uint64_t> extract_root(const PolyModP& F, std::uint64_t seed = 1);
// Multiset of irreducible-factor degrees (ascending).  Requires a separable
// nonconstant F; throws std::domain_error otherwise.
std::vector<int> degree_pattern(const PolyModP& F);
// Every degree expressible as a sum of a sub-multiset (0 and the full sum
// included), ascending.
std::vector<int> achievable_degrees(const std::vector<int>& pattern);

}  // namespace expsieve
