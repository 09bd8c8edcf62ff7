#include "expsieve/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include "expsieve/arith.hpp"
#include "expsieve/polymod.hpp"
#include "internal.hpp"

namespace expsieve {

const char* mode_name(SieveMode m) {
    return m == SieveMode::no_root ? "no_root" : "irreducible";
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::no_root_certified: return "no_root_certified";
        case Verdict::root_found: return "root_found";
        case Verdict::irreducible_certified: return "irreducible_certified";
        case Verdict::reducible_certified: return "reducible_certified";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

SieveConfig make_sieve_config(IntMultiPoly f, std::vector<long long> bases,
                              std::vector<PrimeSite> sites, SieveMode mode) {
    SieveConfig cfg;
    if (f.x_degree() < 1)
        throw std::invalid_argument("sieve config: polynomial must have X-degree >= 1");
    if (static_cast<int>(bases.size()) != f.var_count())
        throw std::invalid_argument("sieve config: one base per parameter variable");
    for (long long a : bases)
        if (a == 0 || a == 1 || a == -1)
            throw std::invalid_argument("base entries must lie outside {0, 1, -1}");
    std::sort(sites.begin(), sites.end(),
              [](const PrimeSite& a, const PrimeSite& b) { return a.p < b.p; });
    for (std::size_t i = 0; i < sites.size(); ++i) {
        if (i && sites[i].p == sites[i - 1].p)
            throw std::invalid_argument("sieve config: duplicate site prime");
        if (sites[i].orders.size() != bases.size())
            throw std::invalid_argument("sieve config: site arity mismatch");
    }
    cfg.f = std::move(f);
    cfg.bases = std::move(bases);
    cfg.sites = std::move(sites);
    cfg.mode = mode;
    return cfg;
}

std::uint64_t residue_of_power(long long base, long long n, const PrimeSite& site) {
    return pow_mod(base, n, site.p);
}

namespace {

std::vector<std::uint64_t> residues_at(const SieveConfig& cfg,
                                       const std::vector<long long>& n,
                                       const PrimeSite& site) {
    std::vector<std::uint64_t> y(cfg.bases.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = residue_of_power(cfg.bases[i], n[i], site);
    return y;
}

void check_point(const SieveConfig& cfg, const std::vector<long long>& n) {
    if (n.size() != cfg.bases.size())
        throw std::invalid_argument("exponent point arity mismatch");
}

// Upper estimate of the coefficient size (bits) of the exact specialization.
double specialization_bits(const SieveConfig& cfg, const std::vector<long long>& n) {
    double worst = 0;
    for (const auto& [m, c] : cfg.f.terms()) {
        double bits = 64;
        for (std::size_t i = 0; i < n.size(); ++i) {
            const double lg = std::log2(std::abs(static_cast<double>(cfg.bases[i])));
            bits += lg * static_cast<double>(m.t[i]) *
                    static_cast<double>(n[i] < 0 ? -n[i] : n[i]);
        }
        worst = std::max(worst, bits);
    }
    // Denominator clearing can roughly double the magnitude.
    return 2 * worst;
}

Certificate exact_no_root_stage(const SieveConfig& cfg, const std::vector<long long>& n,
                                Certificate cert) {
    if (specialization_bits(cfg, n) > static_cast<double>(cfg.fallback_budget_bits)) {
        cert.verdict = Verdict::inconclusive;
        cert.note = "exact stage skipped: specialization exceeds the bit budget";
        return cert;
    }
    const auto g = exact_specialization(cfg.f, cfg.bases, n);
    cert.via_exact = true;
    if (g.empty()) {
        cert.verdict = Verdict::root_found;
        cert.root = mpq_class(0);
        cert.note = "specialization vanishes identically";
        return cert;
    }
    if (g.size() == 1) {
        cert.verdict = Verdict::no_root_certified;
        cert.note = "specialization is a nonzero constant";
        return cert;
    }
    const auto res = exact_rational_root(g, cfg.fallback_budget_bits, cfg.rng_seed,
                                         cfg.aux_prime_floor);
    switch (res.kind) {
        case ExactRootResult::Kind::root:
            cert.verdict = Verdict::root_found;
            cert.root = res.root;
            break;
        case ExactRootResult::Kind::none:
            cert.verdict = Verdict::no_root_certified;
            break;
        case ExactRootResult::Kind::budget_exceeded:
            cert.verdict = Verdict::inconclusive;
            cert.note = "exact stage abandoned: reconstruction modulus over budget";
            break;
    }
    return cert;
}

}  // namespace

ModStageOutcome mod_p_no_root_stage(const SieveConfig& cfg,
                                    const std::vector<long long>& n) {
    check_point(cfg, n);
    ModStageOutcome out;
    for (const auto& site : cfg.sites) {
        ++out.consulted;
        const auto sp = specialize(cfg.f, residues_at(cfg, n, site), site.p);
        if (!sp.lead_ok) {
            out.skipped.push_back(site.p);
            continue;
        }
        if (!has_root(sp.F)) {
            out.witness = site.p;
            return out;
        }
    }
    return out;
}

Certificate no_root_status(const SieveConfig& cfg, const std::vector<long long>& n) {
    check_point(cfg, n);
    Certificate cert;
    const auto stage = mod_p_no_root_stage(cfg, n);
    cert.sites_consulted = stage.consulted;
    cert.skipped_sites = stage.skipped;
    if (stage.witness) {
        cert.verdict = Verdict::no_root_certified;
        cert.witness_prime = *stage.witness;
        return cert;
    }
    return exact_no_root_stage(cfg, n, std::move(cert));
}

Certificate irreducible_status(const SieveConfig& cfg, const std::vector<long long>& n) {
    check_point(cfg, n);
    Certificate cert;
    const int d = cfg.f.x_degree();

    std::vector<char> surviving(d + 1, 1);  // achievable factor degrees so far
    auto is_decided = [&]() {
        for (int s = 1; s < d; ++s)
            if (surviving[s]) return false;
        return true;
    };

    for (const auto& site : cfg.sites) {
        ++cert.sites_consulted;
        const auto sp = specialize(cfg.f, residues_at(cfg, n, site), site.p);
        if (!sp.lead_ok) {
            cert.skipped_sites.push_back(site.p);
            continue;
        }
        if (!is_separable(sp.F)) {
            cert.nonseparable_sites.push_back(site.p);
            continue;
        }
        const auto achievable = achievable_degrees(degree_pattern(sp.F));
        std::vector<char> keep(d + 1, 0);
        for (int s : achievable)
            if (s <= d && surviving[s]) keep[s] = 1;
        surviving = std::move(keep);
        cert.pattern_witnesses.push_back(site.p);
        if (is_decided()) {
            cert.verdict = Verdict::irreducible_certified;
            return cert;
        }
    }

    // Exact stage: decide rational roots, then close the {1, d-1} ambiguity.
    if (specialization_bits(cfg, n) > static_cast<double>(cfg.fallback_budget_bits)) {
        cert.verdict = Verdict::inconclusive;
        cert.note = "exact stage skipped: specialization exceeds the bit budget";
        return cert;
    }
    const auto g = exact_specialization(cfg.f, cfg.bases, n);
    cert.via_exact = true;
    const int dg = static_cast<int>(g.size()) - 1;
    if (dg < 0) {
        cert.verdict = Verdict::reducible_certified;
        cert.root = mpq_class(0);
        cert.note = "specialization vanishes identically";
        return cert;
    }
    if (dg == 0) {
        cert.verdict = Verdict::reducible_certified;
        cert.note = "specialization is constant";
        return cert;
    }
    if (dg == 1) {
        cert.verdict = Verdict::irreducible_certified;
        cert.note = "specialization is linear";
        return cert;
    }

    const auto res = exact_rational_root(g, cfg.fallback_budget_bits, cfg.rng_seed,
                                         cfg.aux_prime_floor);
    if (res.kind == ExactRootResult::Kind::budget_exceeded) {
        cert.verdict = Verdict::inconclusive;
        cert.note = "exact stage abandoned: reconstruction modulus over budget";
        return cert;
    }
    if (res.kind == ExactRootResult::Kind::root) {
        cert.verdict = Verdict::reducible_certified;
        cert.root = res.root;
        return cert;
    }

    // No rational root: no factor of degree 1, hence none of degree dg-1.
    if (dg < d) {
        // Degenerate drop in degree: no pattern data applies (every site
        // skipped), so only small degrees are decidable.
        if (dg <= 3) {
            cert.verdict = Verdict::irreducible_certified;
            cert.note = "degenerate specialization decided by rational roots";
            return cert;
        }
        cert.verdict = Verdict::inconclusive;
        cert.note = "degenerate specialization of degree " + std::to_string(dg) +
                    "; no factor-degree certificates apply";
        return cert;
    }

    surviving[1] = 0;
    if (d - 1 >= 0) surviving[d - 1] = 0;
    bool middle = false;
    for (int s = 2; s <= d - 2; ++s)
        if (surviving[s]) middle = true;
    if (!middle) {
        cert.verdict = Verdict::irreducible_certified;
        return cert;
    }
    std::string alive;
    for (int s = 2; s <= d - 2; ++s)
        if (surviving[s]) alive += (alive.empty() ? "" : ",") + std::to_string(s);
    cert.verdict = Verdict::inconclusive;
    cert.note = "no rational root, but factor degrees {" + alive + "} remain possible";
    return cert;
}

Certificate certificate_for(const SieveConfig& cfg, const std::vector<long long>& n) {
    return cfg.mode == SieveMode::no_root ? no_root_status(cfg, n)
                                          : irreducible_status(cfg, n);
}

namespace {

struct Buckets {
    std::vector<std::uint64_t> favorable, fallbacks, inconclusive, skips, total;
    explicit Buckets(std::size_t n)
        : favorable(n, 0), fallbacks(n, 0), inconclusive(n, 0), skips(n, 0), total(n, 0) {}
    void merge(const Buckets& o) {
        for (std::size_t i = 0; i < favorable.size(); ++i) {
            favorable[i] += o.favorable[i];
            fallbacks[i] += o.fallbacks[i];
            inconclusive[i] += o.inconclusive[i];
            skips[i] += o.skips[i];
            total[i] += o.total[i];
        }
    }
};

void tally(const SieveConfig& cfg, const std::vector<long long>& point,
           std::size_t bucket, Buckets& b) {
    const Certificate cert = certificate_for(cfg, point);
    const bool favorable =
        (cfg.mode == SieveMode::no_root && cert.verdict == Verdict::no_root_certified) ||
        (cfg.mode == SieveMode::irreducible &&
         cert.verdict == Verdict::irreducible_certified);
    b.total[bucket] += 1;
    if (favorable) b.favorable[bucket] += 1;
    if (cert.via_exact) b.fallbacks[bucket] += 1;
    if (cert.verdict == Verdict::inconclusive) b.inconclusive[bucket] += 1;
    b.skips[bucket] += cert.skipped_sites.size() + cert.nonseparable_sites.size();
}

}  // namespace

DensityReport density_sweep(const SieveConfig& cfg, const std::vector<long long>& grid,
                            const SweepOptions& opts) {
    if (grid.empty()) throw std::invalid_argument("density_sweep: empty grid");
    std::vector<long long> rows = grid;
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    if (rows.front() < 0) throw std::invalid_argument("density_sweep: negative box");
    const int r = cfg.f.var_count();
    if (r < 1) throw std::invalid_argument("density_sweep: no parameter variables");
    const long long nmax = rows.back();

    unsigned threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;

    DensityReport report;
    report.mode = cfg.mode;

    if (opts.sample == 0) {
        const long long side = 2 * nmax + 1;
        unsigned __int128 tot = 1;
        for (int i = 0; i < r; ++i) {
            tot *= static_cast<unsigned __int128>(side);
            if (tot > 100000000ull)
                throw std::invalid_argument("density_sweep: box too large to enumerate");
        }
        const std::uint64_t total = static_cast<std::uint64_t>(tot);

        // One bucket per max-norm shell; rows are prefix sums over shells.
        Buckets buckets(static_cast<std::size_t>(nmax) + 1);
        auto worker = [&](std::uint64_t lo, std::uint64_t hi, Buckets& out) {
            std::vector<long long> point(r);
            for (std::uint64_t idx = lo; idx < hi; ++idx) {
                std::uint64_t rem = idx;
                long long shell = 0;
                for (int i = r - 1; i >= 0; --i) {
                    const long long coord =
                        static_cast<long long>(rem % static_cast<std::uint64_t>(side)) - nmax;
                    rem /= static_cast<std::uint64_t>(side);
                    point[i] = coord;
                    shell = std::max(shell, coord < 0 ? -coord : coord);
                }
                tally(cfg, point, static_cast<std::size_t>(shell), out);
            }
        };
        if (threads == 1 || total < 256) {
            worker(0, total, buckets);
        } else {
            std::vector<Buckets> parts(threads, Buckets(buckets.favorable.size()));
            std::vector<std::thread> pool;
            const std::uint64_t chunk = (total + threads - 1) / threads;
            for (unsigned t = 0; t < threads; ++t) {
                const std::uint64_t lo = t * chunk;
                const std::uint64_t hi = std::min<std::uint64_t>(total, lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back(worker, lo, hi, std::ref(parts[t]));
            }
            for (auto& th : pool) th.join();
            for (const auto& part : parts) buckets.merge(part);
        }

        DensityRow acc;
        std::size_t shell = 0;
        for (long long N : rows) {
            for (; shell <= static_cast<std::size_t>(N); ++shell) {
                acc.favorable += buckets.favorable[shell];
                acc.fallbacks += buckets.fallbacks[shell];
                acc.inconclusive += buckets.inconclusive[shell];
                acc.skips += buckets.skips[shell];
                acc.total += buckets.total[shell];
            }
            DensityRow row = acc;
            row.box = N;
            report.rows.push_back(row);
        }
        return report;
    }

    // Sampling mode: independent uniform draws from each requested box.
    for (long long N : rows) {
        Buckets bucket(1);
        const std::uint64_t side = static_cast<std::uint64_t>(2 * N + 1);
        auto worker = [&](std::uint64_t draws, std::uint64_t stream, Buckets& out) {
            std::mt19937_64 rng(opts.seed * 0x9e3779b97f4a7c15ull +
                                static_cast<std::uint64_t>(N) * 1000003ull + stream);
            std::vector<long long> point(r);
            for (std::uint64_t k = 0; k < draws; ++k) {
                for (int i = 0; i < r; ++i)
                    point[i] = static_cast<long long>(rng() % side) - N;
                tally(cfg, point, 0, out);
            }
        };
        if (threads == 1 || opts.sample < 256) {
            worker(opts.sample, 0, bucket);
        } else {
            std::vector<Buckets> parts(threads, Buckets(1));
            std::vector<std::thread> pool;
            const std::uint64_t chunk = (opts.sample + threads - 1) / threads;
            std::uint64_t left = opts.sample;
            for (unsigned t = 0; t < threads && left > 0; ++t) {
                const std::uint64_t take = std::min(chunk, left);
                left -= take;
                pool.emplace_back(worker, take, static_cast<std::uint64_t>(t),
                                  std::ref(parts[t]));
            }
            for (auto& th : pool) th.join();
            for (const auto& part : parts) bucket.merge(part);
        }
        DensityRow row;
        row.box = N;
        row.total = bucket.total[0];
        row.favorable = bucket.favorable[0];
        row.fallbacks = bucket.fallbacks[0];
        row.inconclusive = bucket.inconclusive[0];
        row.skips = bucket.skips[0];
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace expsieve
