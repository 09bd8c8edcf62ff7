#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "expsieve/arith.hpp"
#include "expsieve/multipoly.hpp"

namespace expsieve {

// A prime together with the order data of the fixed bases.
struct PrimeSite {
    std::uint64_t p = 0;
    FactoredInteger p_minus_1;
    std::vector<std::uint64_t> orders;   // multiplicative order of each base mod p
    std::vector<std::uint64_t> indices;  // (p-1) / order, one per base

    bool operator==(const PrimeSite& o) const { return p == o.p; }
};

enum class RejectReason {
    divides_base,
    leading_coeff_vanishes,
    discriminant_vanishes,
    order_too_small,
};
const char* reject_reason_name(RejectReason r);

struct Rejection {
    RejectReason reason;
    std::string detail;
};

// Precomputes the X-discriminant and leading coefficient of f once and then
// screens primes.  Bases must all lie outside {0, 1, -1}.
class SiteQualifier {
  public:
    SiteQualifier(IntMultiPoly f, std::vector<long long> bases);

    // Screening order: p divides a base; leading coefficient vanishes mod p
    // identically; discriminant vanishes mod p identically; some base has
    // multiplicative order below (p-1)/ell.
    std::variant<PrimeSite, Rejection> qualify(std::uint64_t p, std::uint64_t ell) const;

    const TPolyZ& discriminant() const { return disc_; }
    const IntMultiPoly& poly() const { return f_; }
    const std::vector<long long>& bases() const { return bases_; }

  private:
    IntMultiPoly f_;
    std::vector<long long> bases_;
    TPolyZ disc_;
    TPolyZ lead_;
};

// One-shot variant of SiteQualifier::qualify.
std::variant<PrimeSite, Rejection> qualify_prime(const IntMultiPoly& f,
                                                 const std::vector<long long>& bases,
                                                 std::uint64_t p, std::uint64_t ell);

struct SiteSelection {
    std::vector<PrimeSite> sites;  // ascending p
    std::uint64_t tested = 0;
    std::map<RejectReason, std::uint64_t> rejected;
    bool satisfied = false;  // found the requested number of sites
    std::string diagnostic;  // set when the doubling interval runs dry
};

// Walks the primes of (x, 2x] in ascending order and keeps the first `count`
// that qualify at threshold ell.
SiteSelection select_sites(const IntMultiPoly& f, const std::vector<long long>& bases,
                           std::uint64_t ell, std::uint64_t x, std::size_t count);

// Fraction of primes p <= limit with p not dividing a whose base-a index
// (p-1)/ord_p(a) is at most ell.
double d_ell_estimate(long long a, std::uint64_t ell, std::uint64_t limit);
// Same scan shared across several thresholds; returns (ell, fraction) pairs in
// input order.
std::vector<std::pair<std::uint64_t, double>> d_ell_curve(
    long long a, const std::vector<std::uint64_t>& ells, std::uint64_t limit);

struct CliqueResult {
    std::vector<std::uint64_t> primes;  // clique members, ascending
    std::uint64_t z = 0;
    double edge_density = 0.0;   // 2e/n^2 of the compatibility graph
    std::uint64_t lower_bound = 0;  // ceil(1/(1 - edge_density))
    bool meets_bound = false;
};

// Compatibility graph: p ~ q iff gcd(p-1, q-1) <= z.  Greedy max-degree
// descent into closed neighborhoods; ties break toward the smaller prime.
CliqueResult clique_extract(const std::vector<std::uint64_t>& primes, std::uint64_t z);
CliqueResult clique_extract(const std::vector<PrimeSite>& sites, std::uint64_t z);

struct GcdPairStats {
    std::map<std::uint64_t, std::uint64_t> histogram;  // gcd(p-1, q-1) -> count
    std::uint64_t pair_count = 0;
    std::vector<std::pair<std::uint64_t, double>> fraction_at_most;  // per z in the grid
};
GcdPairStats gcd_pair_stats(const std::vector<std::uint64_t>& primes,
                            const std::vector<std::uint64_t>& z_grid);
GcdPairStats gcd_pair_stats(const std::vector<PrimeSite>& sites,
                            const std::vector<std::uint64_t>& z_grid);

struct ScheduleCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;  // constraint is lhs <= rhs
    bool ok = false;
};

struct Schedule {
    std::uint64_t box = 0;    // N
    std::uint64_t sites = 0;  // number of primes t
    std::uint64_t z = 0;      // pairwise gcd ceiling
    std::uint64_t x = 0;      // prime interval anchor (primes from (x, 2x])
    double c = 1.0;
    std::vector<ScheduleCheck> checks;
    bool ok = false;
};

// Derives (t, x, z) from the box size N so that t ~ sqrt(log log N),
// (2x)^t <= sqrt(N) and c*t <= z <= log x, then evaluates the constraints
// numerically.
Schedule schedule_parameters(std::uint64_t box, double c = 1.0);

}  // namespace expsieve
