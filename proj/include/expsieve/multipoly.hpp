#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

namespace expsieve {

// Exponent vector over the parameter variables t1..tr (index i-1 <-> t_i).
using TExp = std::vector<int>;

struct Monomial {
    TExp t;
    int x = 0;
    auto operator<=>(const Monomial&) const = default;
};

// Sparse polynomial in Z[t1..tr][X] with checked 64-bit coefficients.
class IntMultiPoly {
  public:
    IntMultiPoly() = default;
    IntMultiPoly(int r, std::map<Monomial, long long> terms);

    int var_count() const { return r_; }
    bool is_zero() const { return terms_.empty(); }
    int x_degree() const;  // -1 for the zero polynomial
    const std::map<Monomial, long long>& terms() const { return terms_; }

    // Coefficient of X^j as a sparse polynomial in the t variables.
    std::map<TExp, long long> x_coefficient(int j) const;
    std::map<TExp, long long> leading_coefficient() const;
    int t_degree(int i) const;  // max exponent of t_{i+1}; 0-based i
    IntMultiPoly x_derivative() const;
    // f(t1^m1, ..., tr^mr, X); every m_i must be >= 1.
    IntMultiPoly substitute_powers(const std::vector<int>& m) const;

    bool operator==(const IntMultiPoly&) const = default;

  private:
    int r_ = 0;
    std::map<Monomial, long long> terms_;
};

// Ring operations (throw std::overflow_error if a coefficient leaves int64).
IntMultiPoly poly_add(const IntMultiPoly&, const IntMultiPoly&);
IntMultiPoly poly_sub(const IntMultiPoly&, const IntMultiPoly&);
IntMultiPoly poly_mul(const IntMultiPoly&, const IntMultiPoly&);
IntMultiPoly poly_neg(const IntMultiPoly&);
IntMultiPoly poly_pow(const IntMultiPoly&, int e);
IntMultiPoly poly_const(int r, long long c);
IntMultiPoly poly_var_t(int r, int i);  // t_i, 1-based i <= r
IntMultiPoly poly_var_x(int r);
// Reinterpret with a larger variable count (pads exponent vectors).
IntMultiPoly with_var_count(const IntMultiPoly&, int r);

// Sparse polynomial in the t variables alone, big-integer coefficients.
using TPolyZ = std::map<TExp, mpz_class>;

bool is_constant_tpoly(const std::map<TExp, long long>& g);
// True when every coefficient of g vanishes mod p (the zero polynomial over F_p).
bool tpoly_vanishes_mod_p(const TPolyZ& g, std::uint64_t p);
std::uint64_t tpoly_eval_mod_p(const TPolyZ& g, const std::vector<std::uint64_t>& y,
                               std::uint64_t p);

// Discriminant of f with respect to X, computed exactly over Z:
//   (-1)^(d(d-1)/2) * Res_X(f, df/dX) / lc_X(f),
// where d = deg_X f >= 1 (std::invalid_argument otherwise) and the resultant
// is taken at the formal degrees (d, d-1).  An empty map encodes the zero
// polynomial; d = 1 yields the constant 1.
TPolyZ discriminant_in_x(const IntMultiPoly& f);

}  // namespace expsieve
