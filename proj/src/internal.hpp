#pragma once

#include <gmpxx.h>

#include <vector>

namespace expsieve::detail {

// Dense integer polynomial, ascending coefficients, no leading zeros.
using ZPoly = std::vector<mpz_class>;

void zpoly_normalize(ZPoly& f);
int zpoly_degree(const ZPoly& f);  // -1 for zero
ZPoly zpoly_derivative(const ZPoly& f);
mpz_class zpoly_content(const ZPoly& f);        // >= 0
ZPoly zpoly_primitive(ZPoly f);                 // content removed, leading > 0
ZPoly zpoly_gcd(ZPoly a, ZPoly b);              // primitive, leading > 0
ZPoly zpoly_divexact(const ZPoly& a, const ZPoly& b);
// sum_j f_j u^j v^(deg-j) == 0, i.e. u/v is a root.
bool zpoly_root_check(const ZPoly& f, const mpz_class& u, const mpz_class& v);

// Canonical root order: smaller height max(|num|, |den|) first, then positive
// before zero before negative, then smaller value.
bool rational_less(const mpq_class& a, const mpq_class& b);

}  // namespace expsieve::detail
