#include "expsieve/polymod.hpp"

#include <algorithm>
#include <stdexcept>

#include "expsieve/arith.hpp"

namespace expsieve {

// Exact quotient (remainder must vanish); declared here, defined below.
PolyModP poly_rem_div(const PolyModP& a, const PolyModP& b);

namespace {

void normalize(PolyModP& f) {
    while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
}

void check_same_field(const PolyModP& a, const PolyModP& b) {
    if (a.p != b.p) throw std::invalid_argument("polynomials over different fields");
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    return pow_mod_u(a, p - 2, p);
}

// Splits a product of distinct monic linear factors into roots.
void split_linear(const PolyModP& f, std::uint64_t seed,
                  std::vector<std::uint64_t>& out) {
    const std::uint64_t p = f.p;
    if (f.degree() <= 0) return;
    if (f.degree() == 1) {
        // monic: X + c0  ->  root = -c0
        out.push_back((p - f.c[0]) % p);
        return;
    }
    // Equal-degree splitting at degree 1 (p odd here; p = 2 is handled by the
    // exhaustive scan in all_roots).
    std::uint64_t state = seed;
    for (;;) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        const std::uint64_t shift = state % p;
        // h = (X + shift)^((p-1)/2) - 1 mod f
        PolyModP base = make_poly(p, {shift, 1});
        PolyModP h = poly_pow_mod(base, (p - 1) / 2, f);
        h = poly_sub(h, make_poly(p, {1}));
        PolyModP g = poly_gcd(h, f);
        if (g.degree() >= 1 && g.degree() < f.degree()) {
            split_linear(g, state, out);
            split_linear(poly_monic(poly_rem_div(f, g)), state, out);
            return;
        }
    }
}

}  // namespace

std::uint64_t PolyModP::eval(std::uint64_t x) const {
    std::uint64_t acc = 0;
    x %= p;
    for (std::size_t i = c.size(); i-- > 0;) acc = (mul_mod(acc, x, p) + c[i]) % p;
    return acc;
}

PolyModP make_poly(std::uint64_t p, std::vector<std::uint64_t> coeffs) {
    if (p < 2) throw std::invalid_argument("make_poly: modulus must be a prime");
    PolyModP f{p, std::move(coeffs)};
    for (auto& v : f.c) v %= p;
    normalize(f);
    return f;
}

PolyModP poly_add(const PolyModP& a, const PolyModP& b) {
    check_same_field(a, b);
    PolyModP r{a.p, {}};
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        std::uint64_t v = (i < a.c.size() ? a.c[i] : 0) + (i < b.c.size() ? b.c[i] : 0);
        r.c[i] = v % a.p;
    }
    normalize(r);
    return r;
}

PolyModP poly_sub(const PolyModP& a, const PolyModP& b) {
    check_same_field(a, b);
    PolyModP r{a.p, {}};
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        std::uint64_t av = i < a.c.size() ? a.c[i] : 0;
        std::uint64_t bv = i < b.c.size() ? b.c[i] : 0;
        r.c[i] = (av + a.p - bv) % a.p;
    }
    normalize(r);
    return r;
}

PolyModP poly_mul(const PolyModP& a, const PolyModP& b) {
    check_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return PolyModP{a.p, {}};
    PolyModP r{a.p, std::vector<std::uint64_t>(a.c.size() + b.c.size() - 1, 0)};
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            r.c[i + j] = (r.c[i + j] + mul_mod(a.c[i], b.c[j], a.p)) % a.p;
        }
    }
    normalize(r);
    return r;
}

PolyModP poly_rem(const PolyModP& a, const PolyModP& b) {
    check_same_field(a, b);
    if (b.is_zero()) throw std::invalid_argument("poly_rem: division by zero polynomial");
    PolyModP r = a;
    const std::uint64_t p = a.p;
    const std::uint64_t lead_inv = inv_mod(b.c.back(), p);
    while (r.degree() >= b.degree()) {
        const std::uint64_t q = mul_mod(r.c.back(), lead_inv, p);
        const int shift = r.degree() - b.degree();
        for (int i = 0; i <= b.degree(); ++i) {
            std::uint64_t sub = mul_mod(q, b.c[i], p);
            r.c[i + shift] = (r.c[i + shift] + p - sub) % p;
        }
        normalize(r);
        if (r.is_zero()) break;
    }
    return r;
}

// Exact quotient a / b (remainder must vanish).
PolyModP poly_rem_div(const PolyModP& a, const PolyModP& b) {
    check_same_field(a, b);
    if (b.is_zero()) throw std::invalid_argument("poly_rem_div: division by zero polynomial");
    PolyModP r = a;
    const std::uint64_t p = a.p;
    const std::uint64_t lead_inv = inv_mod(b.c.back(), p);
    const int qlen = std::max(0, a.degree() - b.degree() + 1);
    std::vector<std::uint64_t> q(static_cast<std::size_t>(qlen), 0);
    while (r.degree() >= b.degree()) {
        const std::uint64_t qc = mul_mod(r.c.back(), lead_inv, p);
        const int shift = r.degree() - b.degree();
        q[shift] = qc;
        for (int i = 0; i <= b.degree(); ++i) {
            std::uint64_t sub = mul_mod(qc, b.c[i], p);
            r.c[i + shift] = (r.c[i + shift] + p - sub) % p;
        }
        normalize(r);
        if (r.is_zero()) break;
    }
    if (!r.is_zero()) throw std::logic_error("poly_rem_div: division is not exact");
    return make_poly(p, std::move(q));
}

PolyModP poly_gcd(PolyModP a, PolyModP b) {
    check_same_field(a, b);
    while (!b.is_zero()) {
        PolyModP r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : poly_monic(a);
}

PolyModP poly_derivative(const PolyModP& f) {
    PolyModP r{f.p, {}};
    if (f.degree() < 1) return r;
    r.c.resize(f.c.size() - 1);
    for (std::size_t i = 1; i < f.c.size(); ++i)
        r.c[i - 1] = mul_mod(f.c[i], i % f.p, f.p);
    normalize(r);
    return r;
}

PolyModP poly_monic(const PolyModP& f) {
    if (f.is_zero()) return f;
    if (f.c.back() == 1) return f;
    PolyModP r = f;
    const std::uint64_t s = inv_mod(f.c.back(), f.p);
    for (auto& v : r.c) v = mul_mod(v, s, f.p);
    return r;
}

PolyModP poly_pow_mod(const PolyModP& base, std::uint64_t e, const PolyModP& modulus) {
    check_same_field(base, modulus);
    if (modulus.degree() < 1)
        throw std::invalid_argument("poly_pow_mod: modulus must have degree >= 1");
    PolyModP acc = make_poly(base.p, {1});
    PolyModP b = poly_rem(base, modulus);
    while (e) {
        if (e & 1) acc = poly_rem(poly_mul(acc, b), modulus);
        b = poly_rem(poly_mul(b, b), modulus);
        e >>= 1;
    }
    return acc;
}

Specialized specialize(const IntMultiPoly& f, const std::vector<std::uint64_t>& y,
                       std::uint64_t p) {
    if (static_cast<int>(y.size()) != f.var_count())
        throw std::invalid_argument("specialize: arity mismatch");
    const int d = f.x_degree();
    if (d < 0) return {PolyModP{p, {}}, false};
    std::vector<std::uint64_t> coeffs(d + 1, 0);
    for (const auto& [m, c] : f.terms()) {
        long long cm = c % static_cast<long long>(p);
        std::uint64_t term =
            static_cast<std::uint64_t>(cm < 0 ? cm + static_cast<long long>(p) : cm);
        for (int i = 0; i < f.var_count(); ++i) {
            std::uint64_t b = y[i] % p, pw = 1;
            for (int k = m.t[i]; k > 0; k >>= 1) {
                if (k & 1) pw = mul_mod(pw, b, p);
                b = mul_mod(b, b, p);
            }
            term = mul_mod(term, pw, p);
        }
        coeffs[m.x] = (coeffs[m.x] + term) % p;
    }
    const bool lead_ok = coeffs[d] != 0;
    return {make_poly(p, std::move(coeffs)), lead_ok};
}

bool is_separable(const PolyModP& F) {
    if (F.degree() < 1) return false;
    const PolyModP g = poly_gcd(F, poly_derivative(F));
    return g.degree() == 0;
}

bool has_root(const PolyModP& F) {
    if (F.is_zero()) throw std::invalid_argument("has_root: zero polynomial");
    if (F.degree() == 0) return false;
    const std::uint64_t p = F.p;
    if (p < 1000) {
        for (std::uint64_t x = 0; x < p; ++x)
            if (F.eval(x) == 0) return true;
        return false;
    }
    // gcd(X^p - X, F) collects exactly the linear factors.
    const PolyModP x = make_poly(p, {0, 1});
    const PolyModP frob = poly_pow_mod(x, p, F);
    const PolyModP g = poly_gcd(poly_sub(frob, x), F);
    return g.degree() >= 1;
}

std::vector<std::uint64_t> all_roots(const PolyModP& F, std::uint64_t seed) {
    if (F.is_zero()) throw std::invalid_argument("all_roots: zero polynomial");
    std::vector<std::uint64_t> out;
    if (F.degree() == 0) return out;
    const std::uint64_t p = F.p;
    if (p < 1000) {
        for (std::uint64_t x = 0; x < p; ++x)
            if (F.eval(x) == 0) out.push_back(x);
        return out;
    }
    const PolyModP x = make_poly(p, {0, 1});
    const PolyModP frob = poly_pow_mod(x, p, F);
    PolyModP lin = poly_gcd(poly_sub(frob, x), F);
    if (lin.degree() >= 1) split_linear(lin, seed == 0 ? 1 : seed, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::uint64_t> extract_root(const PolyModP& F, std::uint64_t seed) {
    const auto roots = all_roots(F, seed);
    if (roots.empty()) return std::nullopt;
    return roots.front();
}

std::vector<int> degree_pattern(const PolyModP& F) {
    if (!is_separable(F))
        throw std::domain_error("degree_pattern: polynomial is not separable");
    const std::uint64_t p = F.p;
    PolyModP rest = poly_monic(F);
    std::vector<int> pattern;
    PolyModP h = poly_rem(make_poly(p, {0, 1}), rest);  // X mod F
    const PolyModP x = make_poly(p, {0, 1});
    for (int k = 1; 2 * k <= rest.degree(); ++k) {
        h = poly_pow_mod(h, p, rest);
        const PolyModP g = poly_gcd(poly_sub(h, x), rest);
        if (g.degree() > 0) {
            if (g.degree() % k != 0)
                throw std::logic_error("degree_pattern: inconsistent split");
            for (int i = 0; i < g.degree() / k; ++i) pattern.push_back(k);
            rest = poly_rem_div(rest, g);
            if (rest.degree() == 0) break;
            h = poly_rem(h, rest);
        }
    }
    if (rest.degree() > 0) pattern.push_back(rest.degree());
    std::sort(pattern.begin(), pattern.end());
    return pattern;
}

std::vector<int> achievable_degrees(const std::vector<int>& pattern) {
    int total = 0;
    for (int d : pattern) {
        if (d < 1) throw std::invalid_argument("achievable_degrees: non-positive entry");
        total += d;
    }
    std::vector<char> dp(total + 1, 0);
    dp[0] = 1;
    for (int d : pattern)
        for (int s = total; s >= d; --s)
            if (dp[s - d]) dp[s] = 1;
    std::vector<int> out;
    for (int s = 0; s <= total; ++s)
        if (dp[s]) out.push_back(s);
    return out;
}

}  // namespace expsieve
