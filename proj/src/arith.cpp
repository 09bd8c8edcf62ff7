#include "expsieve/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace expsieve {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t pow_mod_u(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("pow_mod_u: zero modulus");
    if (m == 1) return 0;
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

namespace {

bool miller_rabin_once(std::uint64_t n, std::uint64_t a,
                       std::uint64_t d, int s) {
    a %= n;
    if (a == 0) return true;
    std::uint64_t x = pow_mod_u(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set decides primality for every n < 3.3 * 10^18, which
    // covers all 64-bit inputs this library ever feeds it (we reject larger
    // candidates in factorize by construction of its callers).
    for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull,
                            9780504ull, 1795265022ull}) {
        if (!miller_rabin_once(n, a, d, s)) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_range(std::uint64_t x, std::uint64_t factor) {
    if (factor < 1) throw std::invalid_argument("prime_range: factor must be >= 1");
    const unsigned __int128 hi_wide =
        static_cast<unsigned __int128>(x) * factor;
    if (hi_wide > static_cast<unsigned __int128>(
                      std::numeric_limits<std::int64_t>::max()))
        throw std::overflow_error("prime_range: upper endpoint exceeds 2^63-1");
    const std::uint64_t lo = x + 1;
    const std::uint64_t hi = static_cast<std::uint64_t>(hi_wide);
    std::vector<std::uint64_t> out;
    if (hi < lo) return out;

    // Base primes up to sqrt(hi) by a plain sieve.
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi)));
    while (root * root > hi) --root;
    while ((root + 1) * (root + 1) <= hi) ++root;
    std::vector<bool> base(root + 1, true);
    base[0] = false;
    if (root >= 1) base[1] = false;
    for (std::uint64_t i = 2; i * i <= root; ++i)
        if (base[i])
            for (std::uint64_t j = i * i; j <= root; j += i) base[j] = false;
    std::vector<std::uint64_t> base_primes;
    for (std::uint64_t i = 2; i <= root; ++i)
        if (base[i]) base_primes.push_back(i);

    const std::uint64_t block = 1u << 20;
    std::vector<bool> seg;
    for (std::uint64_t start = lo; start <= hi;) {
        const std::uint64_t stop = std::min(hi, start + block - 1);
        seg.assign(stop - start + 1, true);
        for (std::uint64_t p : base_primes) {
            std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
            for (std::uint64_t j = first; j <= stop; j += p)
                seg[j - start] = false;
        }
        for (std::uint64_t v = start; v <= stop; ++v)
            if (v >= 2 && seg[v - start]) out.push_back(v);
        if (stop == hi) break;
        start = stop + 1;
    }
    return out;
}

std::uint64_t pow_mod(std::int64_t base, std::int64_t exp, std::uint64_t p) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("pow_mod: modulus must be prime");
    std::int64_t bm = base % static_cast<std::int64_t>(p);
    std::uint64_t b = static_cast<std::uint64_t>(bm < 0 ? bm + static_cast<std::int64_t>(p) : bm);
    std::uint64_t e;
    if (exp >= 0) {
        e = static_cast<std::uint64_t>(exp);
    } else {
        if (b == 0)
            throw std::domain_error("pow_mod: negative exponent with base divisible by p");
        // a^(p-1) = 1 for p prime and p coprime to a, so exponents act mod p-1.
        const std::int64_t m = static_cast<std::int64_t>(p - 1);
        std::int64_t r = exp % m;
        if (r < 0) r += m;
        e = static_cast<std::uint64_t>(r);
    }
    return pow_mod_u(b, e, p);
}

namespace {

std::uint64_t brent_rho(std::uint64_t n, std::uint64_t seed) {
    // Deterministic: the (x0, c) trajectory is a fixed function of the seed.
    std::uint64_t x0 = seed % n;
    for (std::uint64_t c = 1 + seed % 7;; c += 1) {
        if (c >= n) c = 1;
        std::uint64_t y = (x0 + c) % n;
        if (y == 0) y = 1;
        std::uint64_t x = y;
        std::uint64_t d = 1, q = 1, ys = y;
        const std::uint64_t m = 128;
        for (std::uint64_t r = 1; d == 1; r <<= 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = (mul_mod(y, y, n) + c) % n;
            for (std::uint64_t k = 0; k < r && d == 1; k += m) {
                ys = y;
                const std::uint64_t lim = std::min(m, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = (mul_mod(y, y, n) + c) % n;
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
            }
        }
        if (d == n) {
            // Backtrack one step at a time to recover the factor.
            do {
                ys = (mul_mod(ys, ys, n) + c) % n;
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n) return d;
        x0 = (x0 + 1) % n;  // retry with shifted parameters
    }
}

void factor_rec(std::uint64_t n, std::uint64_t seed,
                std::vector<std::uint64_t>& primes) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    const std::uint64_t d = brent_rho(n, seed);
    factor_rec(d, seed, primes);
    factor_rec(n / d, seed, primes);
}

}  // namespace

FactoredInteger factorize(std::uint64_t m, std::uint64_t rho_seed) {
    if (m == 0) throw std::invalid_argument("factorize: zero input");
    FactoredInteger out;
    out.value = m;
    std::vector<std::uint64_t> primes;
    for (std::uint64_t d : {2ull, 3ull, 5ull}) {
        while (m % d == 0) {
            primes.push_back(d);
            m /= d;
        }
    }
    // Wheel-free trial division up to min(10^6, sqrt(m)).
    for (std::uint64_t d = 7; d <= 1000000 && d * d <= m; d += 2) {
        while (m % d == 0) {
            primes.push_back(d);
            m /= d;
        }
    }
    if (m > 1) {
        if (is_prime(m))
            primes.push_back(m);
        else
            factor_rec(m, rho_seed == 0 ? 1 : rho_seed, primes);
    }
    std::sort(primes.begin(), primes.end());
    for (std::uint64_t p : primes) {
        if (!out.factors.empty() && out.factors.back().first == p)
            ++out.factors.back().second;
        else
            out.factors.emplace_back(p, 1);
    }
    return out;
}

std::uint64_t multiplicative_order(std::int64_t a, std::uint64_t p,
                                   const FactoredInteger& p_minus_1) {
    if (p < 2) throw std::invalid_argument("multiplicative_order: p must be prime");
    if (p_minus_1.value != p - 1)
        throw std::invalid_argument("multiplicative_order: factorization is not of p-1");
    std::int64_t am = a % static_cast<std::int64_t>(p);
    std::uint64_t b = static_cast<std::uint64_t>(am < 0 ? am + static_cast<std::int64_t>(p) : am);
    if (b == 0) throw std::domain_error("multiplicative_order: p divides a");
    std::uint64_t e = p - 1;
    for (const auto& [q, k] : p_minus_1.factors) {
        for (int j = 0; j < k; ++j) {
            if (pow_mod_u(b, e / q, p) == 1)
                e /= q;
            else
                break;
        }
    }
    return e;
}

std::vector<std::uint32_t> totient_table(std::uint32_t limit) {
    std::vector<std::uint32_t> phi(static_cast<std::size_t>(limit) + 1);
    for (std::uint32_t i = 0; i <= limit; ++i) phi[i] = i;
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (phi[i] == i) {  // i is prime
            for (std::uint64_t j = i; j <= limit; j += i)
                phi[j] -= phi[j] / i;
        }
    }
    return phi;
}

double phi_tail_sum(std::uint64_t z, std::uint64_t limit) {
    if (z >= limit) return 0.0;
    if (limit > 200000000ull)
        throw std::invalid_argument("phi_tail_sum: limit too large for the totient sieve");
    const auto phi = totient_table(static_cast<std::uint32_t>(limit));
    long double sum = 0.0L, comp = 0.0L;
    for (std::uint64_t d = limit; d > z; --d) {
        const long double f = static_cast<long double>(phi[d]);
        const long double term = 1.0L / (f * f);
        const long double y = term - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return static_cast<double>(sum);
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

}  // namespace expsieve
