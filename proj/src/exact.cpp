#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "expsieve/arith.hpp"
#include "expsieve/polymod.hpp"
#include "expsieve/sieve.hpp"
#include "internal.hpp"

namespace expsieve {

namespace detail {

void zpoly_normalize(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int zpoly_degree(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

ZPoly zpoly_derivative(const ZPoly& f) {
    ZPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
    zpoly_normalize(d);
    return d;
}

mpz_class zpoly_content(const ZPoly& f) {
    mpz_class g = 0;
    for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly zpoly_primitive(ZPoly f) {
    zpoly_normalize(f);
    if (f.empty()) return f;
    mpz_class g = zpoly_content(f);
    if (f.back() < 0) g = -g;
    for (auto& c : f) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return f;
}

namespace {

// Pseudo-remainder of a by b (deg a >= deg b >= 0); multiplies through by
// powers of lc(b) so everything stays integral.
ZPoly zpoly_pseudo_rem(ZPoly a, const ZPoly& b) {
    const mpz_class lead = b.back();
    while (zpoly_degree(a) >= zpoly_degree(b) && !a.empty()) {
        const int shift = zpoly_degree(a) - zpoly_degree(b);
        const mpz_class top = a.back();
        for (auto& c : a) c *= lead;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + shift] -= top * b[i];
        zpoly_normalize(a);
    }
    return a;
}

}  // namespace

ZPoly zpoly_gcd(ZPoly a, ZPoly b) {
    a = zpoly_primitive(std::move(a));
    b = zpoly_primitive(std::move(b));
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (zpoly_degree(a) < zpoly_degree(b)) std::swap(a, b);
    while (!b.empty()) {
        ZPoly r = zpoly_primitive(zpoly_pseudo_rem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

ZPoly zpoly_divexact(const ZPoly& a, const ZPoly& b) {
    if (b.empty()) throw std::invalid_argument("zpoly_divexact: zero divisor");
    ZPoly r = a;
    zpoly_normalize(r);
    const int db = zpoly_degree(b);
    const int qd = zpoly_degree(r) - db;
    if (qd < 0) {
        if (r.empty()) return {};
        throw std::logic_error("zpoly_divexact: not divisible");
    }
    ZPoly q(qd + 1, mpz_class(0));
    while (!r.empty() && zpoly_degree(r) >= db) {
        if (!mpz_divisible_p(r.back().get_mpz_t(), b.back().get_mpz_t()))
            throw std::logic_error("zpoly_divexact: not divisible");
        const int shift = zpoly_degree(r) - db;
        mpz_class qc = r.back() / b.back();
        q[shift] = qc;
        for (std::size_t i = 0; i < b.size(); ++i) r[i + shift] -= qc * b[i];
        zpoly_normalize(r);
    }
    if (!r.empty()) throw std::logic_error("zpoly_divexact: nonzero remainder");
    return q;
}

bool zpoly_root_check(const ZPoly& f, const mpz_class& u, const mpz_class& v) {
    if (f.empty()) return true;
    const int d = zpoly_degree(f);
    // Horner in u/v cleared by v^d: (((f_d u + f_{d-1} v) u + f_{d-2} v^2) ...)
    mpz_class acc = f[d];
    mpz_class vpow = 1;
    for (int j = d - 1; j >= 0; --j) {
        vpow *= v;
        acc = acc * u + f[j] * vpow;
    }
    return acc == 0;
}

bool rational_less(const mpq_class& a, const mpq_class& b) {
    // Zero gets height 0 so it is always the canonical representative.
    auto height = [](const mpq_class& x) {
        if (sgn(x) == 0) return mpz_class(0);
        mpz_class n = abs(x.get_num()), d = abs(x.get_den());
        return n > d ? n : d;
    };
    const mpz_class ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    auto sign_rank = [](const mpq_class& x) {
        const int s = sgn(x);
        return s > 0 ? 0 : (s == 0 ? 1 : 2);
    };
    if (sign_rank(a) != sign_rank(b)) return sign_rank(a) < sign_rank(b);
    return a < b;
}

}  // namespace detail

namespace {

using detail::ZPoly;

mpq_class power_of_base(long long base, long long exponent) {
    if (base == 0 && exponent < 0)
        throw std::domain_error("zero base with negative exponent");
    const unsigned long long mag =
        exponent < 0 ? static_cast<unsigned long long>(-(exponent + 1)) + 1
                     : static_cast<unsigned long long>(exponent);
    mpz_class pw, b(static_cast<long>(base));
    mpz_pow_ui(pw.get_mpz_t(), b.get_mpz_t(), mag);
    if (exponent >= 0) return mpq_class(pw);
    mpq_class inv(1, 1);
    inv = mpq_class(1) / mpq_class(pw);
    return inv;
}

}  // namespace

std::vector<mpz_class> exact_specialization(const IntMultiPoly& f,
                                            const std::vector<long long>& bases,
                                            const std::vector<long long>& n) {
    const int r = f.var_count();
    if (static_cast<int>(bases.size()) != r || static_cast<int>(n.size()) != r)
        throw std::invalid_argument("exact_specialization: arity mismatch");
    const int d = f.x_degree();
    if (d < 0) return {};

    // Guard against astronomically large powers before computing them.
    double bit_estimate = 0;
    for (const auto& [m, c] : f.terms()) {
        double bits = 64;
        for (int i = 0; i < r; ++i) {
            const double lg =
                bases[i] == 0 ? 0.0 : std::log2(std::abs(static_cast<double>(bases[i])));
            bits += lg * static_cast<double>(m.t[i]) *
                    static_cast<double>(n[i] < 0 ? -n[i] : n[i]);
        }
        bit_estimate = std::max(bit_estimate, bits);
    }
    if (bit_estimate > 33554432.0)  // 2^25 bits per coefficient
        throw std::overflow_error("exact_specialization: result exceeds the size cap");

    std::vector<mpq_class> vals(d + 1, mpq_class(0));
    for (const auto& [m, c] : f.terms()) {
        mpq_class term(static_cast<long>(c));
        for (int i = 0; i < r; ++i) {
            if (m.t[i] == 0) continue;
            term *= power_of_base(bases[i],
                                  static_cast<long long>(m.t[i]) * n[i]);
        }
        vals[m.x] += term;
    }

    mpz_class den_lcm = 1;
    for (const auto& v : vals)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v.get_den().get_mpz_t());
    ZPoly out(d + 1);
    for (int j = 0; j <= d; ++j) {
        mpq_class scaled = vals[j] * mpq_class(den_lcm);
        if (scaled.get_den() != 1)
            throw std::logic_error("exact_specialization: denominator survived");
        out[j] = scaled.get_num();
    }
    return detail::zpoly_primitive(std::move(out));
}

ExactRootResult exact_rational_root(const std::vector<mpz_class>& poly,
                                    unsigned budget_bits, std::uint64_t rng_seed,
                                    std::uint64_t aux_prime_floor) {
    ZPoly g = poly;
    detail::zpoly_normalize(g);
    if (detail::zpoly_degree(g) < 1)
        throw std::invalid_argument("exact_rational_root: degree must be >= 1");

    ExactRootResult res;
    if (g[0] == 0) {  // X divides
        res.kind = ExactRootResult::Kind::root;
        res.root = 0;
        return res;
    }

    // Squarefree part keeps the same root set and guarantees separable
    // reductions at all but finitely many primes.
    ZPoly sf = detail::zpoly_divexact(g, detail::zpoly_gcd(g, detail::zpoly_derivative(g)));
    sf = detail::zpoly_primitive(std::move(sf));
    const int d = detail::zpoly_degree(sf);

    // Bounds from the rational root theorem: numerator divides the constant
    // term, denominator divides the leading coefficient.
    const mpz_class U = abs(sf[0]);
    const mpz_class V = abs(sf.back());
    const mpz_class required = 2 * U * V + 1;
    const unsigned needed_bits =
        static_cast<unsigned>(mpz_sizeinbase(required.get_mpz_t(), 2));
    if (needed_bits > budget_bits) {
        res.kind = ExactRootResult::Kind::budget_exceeded;
        res.lifted_bits = needed_bits;
        return res;
    }

    // Auxiliary prime: unit leading coefficient and separable reduction.
    std::uint64_t q = std::max<std::uint64_t>(aux_prime_floor, 5) | 1;
    std::uint64_t scanned = 0;
    PolyModP gq;
    for (;; q += 2) {
        if (++scanned > 100000000ull)
            throw std::logic_error("exact_rational_root: no admissible auxiliary prime");
        if (!is_prime(q)) continue;
        if (mpz_fdiv_ui(sf.back().get_mpz_t(), q) == 0) continue;
        std::vector<std::uint64_t> cs(sf.size());
        for (std::size_t i = 0; i < sf.size(); ++i)
            cs[i] = mpz_fdiv_ui(sf[i].get_mpz_t(), q);
        PolyModP cand = make_poly(q, std::move(cs));
        if (cand.degree() != d) continue;  // cannot happen given the lead check
        if (!is_separable(cand)) continue;
        gq = std::move(cand);
        break;
    }
    res.aux_prime = q;

    const auto residues = all_roots(gq, rng_seed == 0 ? 1 : rng_seed);
    std::vector<mpq_class> verified;
    const ZPoly sfd = detail::zpoly_derivative(sf);
    for (std::uint64_t r0 : residues) {
        // Quadratic Hensel lift of the simple root r0 until Q > 2UV.
        mpz_class Q = q;
        mpz_class root(r0);
        while (Q < required) {
            Q = Q * Q;
            // root' = root - sf(root) / sf'(root)  (mod Q)
            mpz_class fx = 0, dfx = 0;
            for (std::size_t i = sf.size(); i-- > 0;)
                fx = (fx * root + sf[i]) % Q;
            for (std::size_t i = sfd.size(); i-- > 0;)
                dfx = (dfx * root + sfd[i]) % Q;
            mpz_class inv;
            if (mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), Q.get_mpz_t()) == 0)
                throw std::logic_error("exact_rational_root: derivative not invertible");
            root = (root - fx * inv) % Q;
            if (root < 0) root += Q;
        }
        res.lifted_bits = std::max<unsigned>(
            res.lifted_bits, static_cast<unsigned>(mpz_sizeinbase(Q.get_mpz_t(), 2)));

        // Rational reconstruction: find u/v with u = root * v (mod Q),
        // |u| <= U, 0 < |v| <= V.
        mpz_class r_prev = Q, s_prev = 0;
        mpz_class r_cur = root % Q, s_cur = 1;
        while (r_cur > U) {
            mpz_class quot = r_prev / r_cur;
            mpz_class r_next = r_prev - quot * r_cur;
            mpz_class s_next = s_prev - quot * s_cur;
            r_prev = std::move(r_cur);
            s_prev = std::move(s_cur);
            r_cur = std::move(r_next);
            s_cur = std::move(s_next);
        }
        if (s_cur == 0) continue;
        if (abs(s_cur) > V) continue;
        mpz_class u = r_cur, v = s_cur;
        if (v < 0) {
            u = -u;
            v = -v;
        }
        if (detail::zpoly_root_check(g, u, v)) {
            mpq_class cand(u, v);
            cand.canonicalize();
            verified.push_back(cand);
        }
    }

    if (verified.empty()) {
        res.kind = ExactRootResult::Kind::none;
        return res;
    }
    std::sort(verified.begin(), verified.end(), detail::rational_less);
    res.kind = ExactRootResult::Kind::root;
    res.root = verified.front();
    return res;
}

}  // namespace expsieve
