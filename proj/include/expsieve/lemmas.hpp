#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "expsieve/multipoly.hpp"
#include "expsieve/pipeline.hpp"

namespace expsieve {

// One measured quantity compared against its theoretical ceiling.
struct LemmaValue {
    std::string label;
    double measured = 0;
    double bound = 0;
    double slack = 0;  // distance to the nearest violated edge; >= 0 iff pass
    bool pass = false;
};

struct LemmaCheckResult {
    std::string check_id;
    std::string params;  // human-readable parameter summary
    std::vector<LemmaValue> values;
    bool pass = false;  // conjunction over values
};

// Exhaustively scans unit specializations y in (F_p^x)^r and measures the
// fraction whose image keeps full X-degree yet acquires a root mod p; the
// ceiling is 1 - 1/d + c_tol / sqrt(p).  Supports r <= 2 with size caps
// (p <= 10^4 for r = 1, p <= 2*10^3 for r = 2).
LemmaCheckResult one_prime_check(const IntMultiPoly& f, std::uint64_t p,
                                 double c_tol = 3.0);

// Measures how often every site in a battery simultaneously fails to certify
// (leading coefficient vanishes or the image has a root) along exponent
// orbits, against the independence model (1 - 1/d)^t + c_tol / sqrt(min p),
// and reports the gap between the joint rate and the product of marginals.
// Exhaustive over one full period when r = 1 and lcm(p_i - 1) <= max_enum,
// otherwise sampled.
LemmaCheckResult many_primes_check(const IntMultiPoly& f,
                                   const std::vector<long long>& bases,
                                   const std::vector<PrimeSite>& sites,
                                   double c_tol = 5.0,
                                   std::uint64_t max_enum = 10000000,
                                   std::uint64_t samples = 1000000,
                                   std::uint64_t seed = 1);

// Fraction of exponent points n in [-N, N]^r whose leading coefficient
// vanishes mod p, against a Schwartz-Zippel + equidistribution ceiling
// c_tol * (deg / min_order + r * p / (2N + 1)).
LemmaCheckResult vanishing_lead_check(const IntMultiPoly& f,
                                      const std::vector<long long>& bases,
                                      std::uint64_t p, long long N,
                                      double c_tol = 10.0);

// Stability of z * sum_{z < m <= limit} 1 / phi(m)^2 across a grid of z
// values: every entry must sit within a factor of 4 of the geometric mean.
LemmaCheckResult phi_tail_check(const std::vector<std::uint64_t>& z_grid,
                                std::uint64_t limit);

}  // namespace expsieve
