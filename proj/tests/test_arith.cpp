#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "expsieve/arith.hpp"

using namespace expsieve;

namespace {

// Independent plain Eratosthenes sieve, used as the reference for prime
// counting and membership (written without reuse of the library's sieve).
std::vector<std::uint64_t> oracle_primes_upto(std::uint64_t n) {
    std::vector<bool> is(n + 1, true);
    is[0] = false;
    if (n >= 1) is[1] = false;
    for (std::uint64_t i = 2; i * i <= n; ++i)
        if (is[i])
            for (std::uint64_t j = i * i; j <= n; j += i) is[j] = false;
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= n; ++i)
        if (is[i]) out.push_back(i);
    return out;
}

// Reference modular exponentiation by repeated multiplication (small e only).
std::uint64_t oracle_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = (r * b) % m;
    return static_cast<std::uint64_t>(r);
}

// Reference totient by trial division.
std::uint64_t oracle_phi(std::uint64_t n) {
    std::uint64_t result = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

// Reference multiplicative order by explicit iteration.
std::uint64_t oracle_order(std::uint64_t a, std::uint64_t p) {
    std::uint64_t x = a % p, k = 1;
    while (x != 1) {
        x = (x * a) % p;
        ++k;
    }
    return k;
}

bool oracle_is_prime_trial(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("mul_mod agrees with 128-bit arithmetic") {
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 2000; ++i) {
        std::uint64_t a = rng(), b = rng(), m = rng() | 1;
        unsigned __int128 want = (static_cast<unsigned __int128>(a) * b) % m;
        CHECK(mul_mod(a, b, m) == static_cast<std::uint64_t>(want));
    }
}

TEST_CASE("pow_mod_u matches repeated multiplication") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 500; ++i) {
        std::uint64_t b = rng() % 100000 + 2;
        std::uint64_t e = rng() % 50;
        std::uint64_t m = rng() % 1000003 + 2;
        CHECK(pow_mod_u(b, e, m) == oracle_pow(b % m, e, m));
    }
    CHECK(pow_mod_u(5, 0, 7) == 1);
    CHECK(pow_mod_u(5, 3, 1) == 0);
}

TEST_CASE("is_prime handles edge cases, Carmichael numbers and strong pseudoprimes") {
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK_FALSE(is_prime(561));         // Carmichael
    CHECK_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2,3,5,7
    CHECK(3215031751ull == 151ull * 751ull * 28351ull);
    CHECK(is_prime((1ull << 61) - 1));  // Mersenne prime
    CHECK_FALSE(is_prime((1ull << 59) - 1));
    const auto oracle = oracle_primes_upto(20000);
    std::size_t k = 0;
    for (std::uint64_t n = 0; n <= 20000; ++n) {
        const bool want = k < oracle.size() && oracle[k] == n;
        if (want) ++k;
        CHECK(is_prime(n) == want);
    }
}

TEST_CASE("prime_range matches an independent sieve and preserves order") {
    const auto oracle = oracle_primes_upto(200000);
    std::vector<std::uint64_t> want;
    for (auto p : oracle)
        if (p > 100000) want.push_back(p);
    const auto got = prime_range(100000);
    REQUIRE(got == want);
    // Frozen count for the doubling interval above 1e5.
    CHECK(got.size() == 8392);

    CHECK(prime_range(10, 1).empty());
    const auto small = prime_range(1);  // (1, 2]
    REQUIRE(small.size() == 1);
    CHECK(small[0] == 2);
    const auto triple = prime_range(10, 3);  // (10, 30]
    CHECK(triple == std::vector<std::uint64_t>{11, 13, 17, 19, 23, 29});
}

TEST_CASE("prime_range rejects endpoints beyond the signed 64-bit range") {
    CHECK_THROWS_AS(prime_range(1ull << 62, 4), std::overflow_error);
    CHECK_THROWS_AS(prime_range(10, 0), std::invalid_argument);
}

TEST_CASE("pow_mod reduces negative exponents through the unit group") {
    // 2 * 6 = 12 = 1 mod 11
    CHECK(pow_mod(2, -1, 11) == 6);
    // 3^2 = 2 mod 7, 2 * 4 = 1 mod 7
    CHECK(pow_mod(3, -2, 7) == 4);
    CHECK(pow_mod(-2, 2, 7) == 4);
    CHECK(pow_mod(5, 0, 13) == 1);
    CHECK_THROWS_AS(pow_mod(7, -1, 7), std::domain_error);
    CHECK_THROWS_AS(pow_mod(14, -3, 7), std::domain_error);
    // Fermat consistency: b^(e) == b^(e mod (p-1)) for many negative e.
    for (std::uint64_t p : {11ull, 101ull, 65537ull}) {
        for (std::int64_t e : {-1, -2, -17, -1000000}) {
            std::int64_t red = e % static_cast<std::int64_t>(p - 1);
            if (red < 0) red += static_cast<std::int64_t>(p - 1);
            CHECK(pow_mod(3, e, p) ==
                  pow_mod_u(3, static_cast<std::uint64_t>(red), p));
        }
    }
}

TEST_CASE("factorize recovers certified factorizations") {
    CHECK_THROWS_AS(factorize(0), std::invalid_argument);
    CHECK(factorize(1).factors.empty());

    SUBCASE("small numbers against trial division") {
        for (std::uint64_t n = 1; n <= 5000; ++n) {
            const auto f = factorize(n);
            CHECK(f.value == n);
            std::uint64_t prod = 1;
            std::uint64_t prev = 0;
            for (const auto& [p, k] : f.factors) {
                CHECK(p > prev);
                prev = p;
                CHECK(oracle_is_prime_trial(p));
                for (int i = 0; i < k; ++i) prod *= p;
            }
            CHECK(prod == n);
        }
    }

    SUBCASE("large semiprime splits") {
        const std::uint64_t p = 998244353ull, q = 1000000007ull;
        const auto f = factorize(p * q);
        REQUIRE(f.factors.size() == 2);
        CHECK(f.factors[0] == std::pair<std::uint64_t, int>{p, 1});
        CHECK(f.factors[1] == std::pair<std::uint64_t, int>{q, 1});
    }

    SUBCASE("Mersenne composite 2^59 - 1") {
        const auto f = factorize((1ull << 59) - 1);
        std::uint64_t prod = 1;
        for (const auto& [p, k] : f.factors) {
            CHECK(is_prime(p));
            for (int i = 0; i < k; ++i) prod *= p;
        }
        CHECK(prod == (1ull << 59) - 1);
        CHECK(f.factors.size() == 2);
    }

    SUBCASE("prime powers") {
        const auto f = factorize(3486784401ull);  // 3^20
        REQUIRE(f.factors.size() == 1);
        CHECK(f.factors[0] == std::pair<std::uint64_t, int>{3, 20});
    }

    SUBCASE("seed changes do not change the result") {
        const std::uint64_t n = 614889782588491410ull;  // 2*3*5*...*47 (primorial)
        const auto a = factorize(n, 1), b = factorize(n, 424242);
        CHECK(a.factors == b.factors);
    }
}

TEST_CASE("multiplicative_order matches brute force and divides p-1") {
    for (std::uint64_t p : oracle_primes_upto(500)) {
        const auto fp = factorize(p - 1);
        for (std::uint64_t a = 2; a < p; ++a) {
            const auto got = multiplicative_order(static_cast<std::int64_t>(a), p, fp);
            CHECK(got == oracle_order(a, p));
            CHECK((p - 1) % got == 0);
        }
    }
    // Negative representatives reduce mod p first: -1 has order 2 mod 11.
    CHECK(multiplicative_order(-1, 11, factorize(10)) == 2);
    CHECK_THROWS_AS(multiplicative_order(22, 11, factorize(10)), std::domain_error);
    CHECK_THROWS_AS(multiplicative_order(2, 11, factorize(12)), std::invalid_argument);

    SUBCASE("minimality witnesses on a mid-size interval") {
        const auto ps = prime_range(1000);  // (1000, 2000]
        for (std::size_t i = 0; i < ps.size(); i += 7) {
            const std::uint64_t p = ps[i];
            const auto fp = factorize(p - 1);
            for (std::int64_t a : {2, 3, 10}) {
                const std::uint64_t e = multiplicative_order(a, p, fp);
                CHECK(pow_mod(a, static_cast<std::int64_t>(e), p) == 1);
                for (const auto& [q, k] : factorize(e).factors)
                    CHECK(pow_mod(a, static_cast<std::int64_t>(e / q), p) != 1);
            }
        }
    }
}

TEST_CASE("totient_table matches trial-division phi") {
    const auto t = totient_table(3000);
    for (std::uint64_t n = 1; n <= 3000; ++n) CHECK(t[n] == oracle_phi(n));
}

TEST_CASE("phi_tail_sum: closed small case and qualitative decay") {
    // sum_{1 < d <= 10} 1/phi(d)^2 = 287/144, by hand.
    CHECK(phi_tail_sum(1, 10) == doctest::Approx(287.0 / 144.0).epsilon(1e-13));
    CHECK(phi_tail_sum(10, 10) == 0.0);
    CHECK(phi_tail_sum(11, 10) == 0.0);
    const double s10 = phi_tail_sum(10, 1000000);
    const double s100 = phi_tail_sum(100, 1000000);
    const double s1000 = phi_tail_sum(1000, 1000000);
    CHECK(s10 > s100);
    CHECK(s100 > s1000);
    // The tail behaves like C/z: z * tail stays within a narrow constant band.
    for (auto [z, s] : {std::pair<double, double>{10, s10}, {100, s100}, {1000, s1000}}) {
        CHECK(z * s < 6.0);
        CHECK(z * s > 0.5);
    }
}
