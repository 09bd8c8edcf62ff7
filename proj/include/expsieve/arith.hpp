#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace expsieve {

// A fully factored positive integer: value = prod(prime^exp) with the primes
// strictly increasing and each one certified prime.
struct FactoredInteger {
    std::uint64_t value = 1;
    std::vector<std::pair<std::uint64_t, int>> factors;
};

// (a * b) mod m without overflow.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);

// a^e mod m for any modulus m >= 1 (e >= 0).
std::uint64_t pow_mod_u(std::uint64_t a, std::uint64_t e, std::uint64_t m);

// Deterministic primality test for the full 64-bit range.
bool is_prime(std::uint64_t n);

// All primes p with x < p <= factor * x, ascending.  Throws std::overflow_error
// when factor * x does not fit in a signed 64-bit integer, and
// std::invalid_argument when factor < 1.
std::vector<std::uint64_t> prime_range(std::uint64_t x, std::uint64_t factor = 2);

// base^exp mod p for prime p.  Negative exponents are interpreted through the
// group (Z/p)^*: exp is reduced modulo p-1, which requires p to not divide
// base (std::domain_error otherwise).
std::uint64_t pow_mod(std::int64_t base, std::int64_t exp, std::uint64_t p);

// Complete factorization of m >= 1.  Trial division by small primes first,
// then Brent's cycle-finding rho with a deterministic (seed-controlled)
// parameter sequence; every reported prime is certified by is_prime.
FactoredInteger factorize(std::uint64_t m, std::uint64_t rho_seed = 1);

// Multiplicative order of a mod p given the factorization of p-1.
// Throws std::domain_error when p divides a.
std::uint64_t multiplicative_order(std::int64_t a, std::uint64_t p,
                                   const FactoredInteger& p_minus_1);

// Euler phi for every integer in [0, limit].
std::vector<std::uint32_t> totient_table(std::uint32_t limit);

// sum_{z < d <= limit} 1 / phi(d)^2, compensated summation.  Returns 0 when
// z >= limit.
double phi_tail_sum(std::uint64_t z, std::uint64_t limit);

// gcd helper on signed 64-bit values (result >= 0).
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

}  // namespace expsieve
