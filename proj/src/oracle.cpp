#include <algorithm>
#include <stdexcept>

#include "expsieve/arith.hpp"
#include "expsieve/sieve.hpp"
#include "internal.hpp"

namespace expsieve {

namespace {

std::vector<std::uint64_t> all_divisors(const FactoredInteger& n) {
    std::vector<std::uint64_t> divs{1};
    for (const auto& [p, e] : n.factors) {
        const std::size_t base = divs.size();
        std::uint64_t pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

std::uint64_t small_abs(const mpz_class& z, const char* what) {
    mpz_class a = abs(z);
    if (mpz_sizeinbase(a.get_mpz_t(), 2) > 63)
        throw std::invalid_argument(std::string(what) +
                                    " too large for the divisor scan");
    return mpz_get_ui(a.get_mpz_t());
}

}  // namespace

OracleVerdict brute_oracle(const IntMultiPoly& f, const std::vector<long long>& bases,
                           const std::vector<long long>& n) {
    if (static_cast<int>(n.size()) != f.var_count())
        throw std::invalid_argument("oracle: exponent point arity mismatch");
    for (long long e : n)
        if (e < -12 || e > 12)
            throw std::invalid_argument("oracle: exponents must lie in [-12, 12]");

    const auto g = exact_specialization(f, bases, n);
    OracleVerdict out;
    if (g.empty()) {
        out.has_rational_root = true;
        out.root = mpq_class(0);
        out.true_degree = -1;
        out.irreducible = false;
        return out;
    }
    const int d = static_cast<int>(g.size()) - 1;
    out.true_degree = d;
    if (d == 0) {
        out.irreducible = false;
        return out;
    }
    if (d == 1) {
        out.has_rational_root = true;
        out.root = mpq_class(-g[0]) / mpq_class(g[1]);
        out.irreducible = true;
        return out;
    }

    std::vector<mpq_class> roots;
    detail::ZPoly h = g;
    bool zero_root = false;
    while (h.front() == 0) {
        h.erase(h.begin());
        zero_root = true;
    }
    if (zero_root) roots.emplace_back(0);

    if (h.size() >= 2) {
        const std::uint64_t a0 = small_abs(h.front(), "oracle: constant term");
        const std::uint64_t ad = small_abs(h.back(), "oracle: leading coefficient");
        const auto num_divs = all_divisors(factorize(a0));
        const auto den_divs = all_divisors(factorize(ad));
        if (num_divs.size() * den_divs.size() > 200000)
            throw std::invalid_argument("oracle: divisor scan too large");
        for (std::uint64_t u : num_divs) {
            for (std::uint64_t v : den_divs) {
                if (gcd_u64(u, v) != 1) continue;
                const mpz_class un(u), vn(v);
                if (detail::zpoly_root_check(g, un, vn)) {
                    mpq_class r(un, vn);
                    r.canonicalize();
                    roots.push_back(r);
                }
                if (detail::zpoly_root_check(g, -un, vn)) {
                    mpq_class r(-un, vn);
                    r.canonicalize();
                    roots.push_back(r);
                }
            }
        }
    }

    std::sort(roots.begin(), roots.end(), detail::rational_less);
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    if (!roots.empty()) {
        out.has_rational_root = true;
        out.root = roots.front();
    }
    if (d <= 3) out.irreducible = !out.has_rational_root;
    return out;
}

}  // namespace expsieve
