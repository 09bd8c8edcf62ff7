#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expsieve/multipoly.hpp"
#include "expsieve/pipeline.hpp"

namespace expsieve {

enum class SieveMode { no_root, irreducible };
const char* mode_name(SieveMode m);

struct SieveConfig {
    IntMultiPoly f;
    std::vector<long long> bases;
    std::vector<PrimeSite> sites;  // held in ascending p order
    SieveMode mode = SieveMode::no_root;
    // The exact stage refuses to lift past moduli of this many bits.
    unsigned fallback_budget_bits = 65536;
    std::uint64_t rng_seed = 1;
    // Smallest admissible auxiliary prime for the exact stage.
    std::uint64_t aux_prime_floor = 1u << 20;
};

// Validates arity/base constraints, sorts sites by p and rejects duplicates.
SieveConfig make_sieve_config(IntMultiPoly f, std::vector<long long> bases,
                              std::vector<PrimeSite> sites,
                              SieveMode mode = SieveMode::no_root);

enum class Verdict {
    no_root_certified,       // f(a^n, X) provably has no rational root
    root_found,              // an exact rational root is attached
    irreducible_certified,   // the specialization is irreducible over Q
    reducible_certified,     // certified not irreducible over Q
    inconclusive,
};
const char* verdict_name(Verdict v);

struct Certificate {
    Verdict verdict = Verdict::inconclusive;
    // Witness prime for no_root_certified; 0 means the exact stage decided.
    std::uint64_t witness_prime = 0;
    // Set when the exact (big-integer) stage participated in the verdict.
    bool via_exact = false;
    // Canonical rational root for root_found / reducible_certified-with-root.
    std::optional<mpq_class> root;
    // Primes whose factor-degree patterns jointly certify irreducibility.
    std::vector<std::uint64_t> pattern_witnesses;
    unsigned sites_consulted = 0;
    std::vector<std::uint64_t> skipped_sites;       // leading coefficient vanished
    std::vector<std::uint64_t> nonseparable_sites;  // pattern stage only
    std::string note;
};

// a^n mod p through the unit group of the site (n may be negative).
std::uint64_t residue_of_power(long long base, long long n, const PrimeSite& site);

// Outcome of the pure mod-p stage of the no-root sieve; a function of the
// residues of n modulo the p_i - 1 only.
struct ModStageOutcome {
    std::optional<std::uint64_t> witness;  // first site with a rootless image
    unsigned consulted = 0;
    std::vector<std::uint64_t> skipped;
};
ModStageOutcome mod_p_no_root_stage(const SieveConfig& cfg,
                                    const std::vector<long long>& n);

/// Decides whether f(a^n, X) has a rational root: mod-p certificates first,
// exact arithmetic as the fallback.  Never lies; returns inconclusive only
// when the fallback budget is exhausted.
Certificate no_root_status(const SieveConfig& cfg, const std::vector<long long>& n);

// Decides irreducibility over Q via intersecting achievable factor degrees
// across sites, with the exact stage closing the {1, d-1} ambiguity.
Certificate irreducible_status(const SieveConfig& cfg, const std::vector<long long>& n);

// Dispatch on cfg.mode.
Certificate certificate_for(const SieveConfig& cfg, const std::vector<long long>& n);

// Dense integer coefficients (ascending) of the primitive integer polynomial
// proportional to f(a^n, X); negative n clears denominators.  May be zero
// (empty) or constant.
std::vector<mpz_class> exact_specialization(const IntMultiPoly& f,
                                            const std::vector<long long>& bases,
                                            const std::vector<long long>& n);

struct ExactRootResult {
    enum class Kind { root, none, budget_exceeded } kind = Kind::none;
    mpq_class root;             // canonical: smallest height, positive preferred
    std::uint64_t aux_prime = 0;
    unsigned lifted_bits = 0;
};

// Exact rational-root decision for a nonconstant integer polynomial through
// an auxiliary prime, quadratic Hensel lifting and rational reconstruction,
// with big-integer verification of any candidate.
ExactRootResult exact_rational_root(const std::vector<mpz_class>& poly,
                                    unsigned budget_bits = 65536,
                                    std::uint64_t rng_seed = 1,
                                    std::uint64_t aux_prime_floor = 1u << 20);

struct OracleVerdict {
    bool has_rational_root = false;
    std::optional<mpq_class> root;          // canonical choice when present
    int true_degree = -1;                   // degree after exact specialization
    std::optional<bool> irreducible;        // engaged only for degree <= 3
};

/// Independent slow path: rational-root-theorem divisor enumeration on the
// exact specialization.  Requires |n_i| <= 12 and refuses inputs whose
// extreme coefficients do not fit the divisor scan.
OracleVerdict brute_oracle(const IntMultiPoly& f, const std::vector<long long>& bases,
                           const std::vector<long long>& n);

struct DensityRow {
    long long box = 0;           // N
    std::uint64_t total = 0;     // (2N+1)^r
    std::uint64_t favorable = 0;
    std::uint64_t fallbacks = 0;     // points where the exact stage engaged
    std::uint64_t inconclusive = 0;
    std::uint64_t skips = 0;         // per-site skip events across points
};

struct DensityReport {
    SieveMode mode = SieveMode::no_root;
    std::vector<DensityRow> rows;  // one per requested N, ascending
};

struct SweepOptions {
    unsigned threads = 0;      // 0: hardware concurrency
    std::uint64_t sample = 0;  // 0: exhaustive; else per-row sample count
    std::uint64_t seed = 1;    // sampling RNG seed
};

// Walks the boxes [-N, N]^r for each N in the grid and classifies every point
// (or a uniform sample when opts.sample > 0).
DensityReport density_sweep(const SieveConfig& cfg, const std::vector<long long>& grid,
                            const SweepOptions& opts = {});

}  // namespace expsieve
