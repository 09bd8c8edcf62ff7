#include "expsieve/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "expsieve/arith.hpp"
#include "expsieve/polymod.hpp"

namespace expsieve {

namespace {

LemmaValue make_value(std::string label, double measured, double bound) {
    LemmaValue v;
    v.label = std::move(label);
    v.measured = measured;
    v.bound = bound;
    v.slack = bound - measured;
    v.pass = measured <= bound;
    return v;
}

void finish(LemmaCheckResult& res) {
    res.pass = std::all_of(res.values.begin(), res.values.end(),
                           [](const LemmaValue& v) { return v.pass; });
}

// Memoized per-site "failure" predicate over residue tuples: the site fails
// when the leading coefficient vanishes or the specialization has a root.
class SiteFailCache {
public:
    SiteFailCache(const IntMultiPoly& f, std::uint64_t p) : f_(&f), p_(p) {}

    bool fails(const std::vector<std::uint64_t>& y) {
        std::uint64_t key = 0;
        bool keyed = y.size() <= 2;
        if (keyed)
            for (std::uint64_t v : y) key = key * p_ + v;
        if (keyed) {
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        const auto sp = specialize(*f_, y, p_);
        const bool fail = !sp.lead_ok || has_root(sp.F);
        if (keyed) memo_.emplace(key, fail);
        return fail;
    }

private:
    const IntMultiPoly* f_;
    std::uint64_t p_;
    std::unordered_map<std::uint64_t, bool> memo_;
};

std::uint64_t positive_mod(long long a, std::uint64_t p) {
    long long r = a % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    return static_cast<std::uint64_t>(r);
}

}  // namespace

LemmaCheckResult one_prime_check(const IntMultiPoly& f, std::uint64_t p,
                                 double c_tol) {
    if (!is_prime(p)) throw std::invalid_argument("one_prime_check: p must be prime");
    if (c_tol <= 0) throw std::invalid_argument("one_prime_check: c_tol must be positive");
    const int r = f.var_count();
    const int d = f.x_degree();
    if (d < 1) throw std::invalid_argument("one_prime_check: X-degree must be >= 1");
    if (r < 1 || r > 2)
        throw std::invalid_argument("one_prime_check: supports 1 or 2 parameters");
    if ((r == 1 && p > 10000) || (r == 2 && p > 2000))
        throw std::invalid_argument("one_prime_check: prime too large for exhaustive scan");

    std::uint64_t total = 1;
    for (int i = 0; i < r; ++i) total *= (p - 1);
    std::uint64_t hit = 0;
    std::vector<std::uint64_t> y(r, 1);
    while (true) {
        const auto sp = specialize(f, y, p);
        if (sp.lead_ok && has_root(sp.F)) ++hit;
        int i = r - 1;
        while (i >= 0 && ++y[i] == p) {
            y[i] = 1;
            --i;
        }
        if (i < 0) break;
    }

    LemmaCheckResult res;
    res.check_id = "one_prime";
    res.params = "p=" + std::to_string(p) + " d=" + std::to_string(d) +
                 " r=" + std::to_string(r) + " c=" + std::to_string(c_tol);
    const double measured = static_cast<double>(hit) / static_cast<double>(total);
    const double bound = 1.0 - 1.0 / d + c_tol / std::sqrt(static_cast<double>(p));
    res.values.push_back(make_value("root_fraction", measured, bound));
    finish(res);
    return res;
}

LemmaCheckResult many_primes_check(const IntMultiPoly& f,
                                   const std::vector<long long>& bases,
                                   const std::vector<PrimeSite>& sites, double c_tol,
                                   std::uint64_t max_enum, std::uint64_t samples,
                                   std::uint64_t seed) {
    const int r = f.var_count();
    const int d = f.x_degree();
    if (d < 1) throw std::invalid_argument("many_primes_check: X-degree must be >= 1");
    if (static_cast<int>(bases.size()) != r)
        throw std::invalid_argument("many_primes_check: one base per parameter");
    if (sites.empty()) throw std::invalid_argument("many_primes_check: no sites");
    if (c_tol <= 0 || samples == 0)
        throw std::invalid_argument("many_primes_check: bad tolerance or sample count");
    for (const auto& s : sites) {
        if (!is_prime(s.p)) throw std::invalid_argument("many_primes_check: bad site prime");
        for (long long a : bases)
            if (positive_mod(a, s.p) == 0)
                throw std::invalid_argument("many_primes_check: site prime divides a base");
    }

    const std::size_t t = sites.size();
    std::uint64_t pmin = sites.front().p;
    for (const auto& s : sites) pmin = std::min(pmin, s.p);

    // Common period of all exponent orbits, saturating well below overflow.
    const std::uint64_t kSat = 1ull << 62;
    std::uint64_t period = 1;
    bool saturated = false;
    for (const auto& s : sites) {
        const std::uint64_t q = (s.p - 1) / gcd_u64(period, s.p - 1);
        if (period > kSat / q) {
            saturated = true;
            break;
        }
        period *= q;
    }

    const bool exhaustive = (r == 1) && !saturated && period <= max_enum;
    std::vector<SiteFailCache> caches;
    caches.reserve(t);
    for (const auto& s : sites) caches.emplace_back(f, s.p);

    std::uint64_t joint = 0, total = 0;
    std::vector<std::uint64_t> marginal(t, 0);

    if (exhaustive) {
        std::vector<std::uint64_t> residue(t, 1), base_res(t);
        for (std::size_t i = 0; i < t; ++i)
            base_res[i] = positive_mod(bases[0], sites[i].p);
        std::vector<std::uint64_t> y(1);
        for (std::uint64_t n = 0; n < period; ++n) {
            bool all_fail = true;
            for (std::size_t i = 0; i < t; ++i) {
                y[0] = residue[i];
                const bool fail = caches[i].fails(y);
                marginal[i] += fail;
                all_fail = all_fail && fail;
            }
            joint += all_fail;
            for (std::size_t i = 0; i < t; ++i)
                residue[i] = mul_mod(residue[i], base_res[i], sites[i].p);
        }
        total = period;
    } else {
        std::mt19937_64 rng(seed);
        const std::uint64_t span = saturated ? kSat : period;
        std::uniform_int_distribution<std::uint64_t> dist(0, span - 1);
        std::vector<long long> n(r);
        std::vector<std::uint64_t> y(r);
        for (std::uint64_t k = 0; k < samples; ++k) {
            for (int j = 0; j < r; ++j) n[j] = static_cast<long long>(dist(rng));
            bool all_fail = true;
            for (std::size_t i = 0; i < t; ++i) {
                for (int j = 0; j < r; ++j)
                    y[j] = pow_mod(bases[j], n[j], sites[i].p);
                const bool fail = caches[i].fails(y);
                marginal[i] += fail;
                all_fail = all_fail && fail;
            }
            joint += all_fail;
        }
        total = samples;
    }

    double product = 1.0;
    for (std::size_t i = 0; i < t; ++i)
        product *= static_cast<double>(marginal[i]) / static_cast<double>(total);
    const double joint_frac = static_cast<double>(joint) / static_cast<double>(total);
    const double eps = c_tol / std::sqrt(static_cast<double>(pmin));

    LemmaCheckResult res;
    res.check_id = "many_primes";
    res.params = "t=" + std::to_string(t) + " d=" + std::to_string(d) +
                 " r=" + std::to_string(r) +
                 " mode=" + (exhaustive ? "exhaustive" : "sampled") +
                 " points=" + std::to_string(total);
    res.values.push_back(make_value(
        "joint_fail", joint_frac, std::pow(1.0 - 1.0 / d, static_cast<double>(t)) + eps));
    res.values.push_back(
        make_value("independence_gap", std::abs(joint_frac - product), eps));
    finish(res);
    return res;
}

LemmaCheckResult vanishing_lead_check(const IntMultiPoly& f,
                                      const std::vector<long long>& bases,
                                      std::uint64_t p, long long N, double c_tol) {
    const int r = f.var_count();
    const int d = f.x_degree();
    if (d < 1) throw std::invalid_argument("vanishing_lead_check: X-degree must be >= 1");
    if (static_cast<int>(bases.size()) != r || r < 1)
        throw std::invalid_argument("vanishing_lead_check: one base per parameter");
    if (!is_prime(p)) throw std::invalid_argument("vanishing_lead_check: p must be prime");
    if (N < 1) throw std::invalid_argument("vanishing_lead_check: N must be >= 1");
    if (c_tol <= 0) throw std::invalid_argument("vanishing_lead_check: c_tol must be positive");
    for (long long a : bases)
        if (positive_mod(a, p) == 0)
            throw std::invalid_argument("vanishing_lead_check: p divides a base");

    unsigned __int128 box = 1;
    const long long side = 2 * N + 1;
    for (int i = 0; i < r; ++i) {
        box *= static_cast<unsigned __int128>(side);
        if (box > 100000000ull)
            throw std::invalid_argument("vanishing_lead_check: box too large");
    }
    const std::uint64_t total = static_cast<std::uint64_t>(box);

    // Total degree of the leading coefficient and the smallest orbit size.
    int lead_deg = 0;
    for (const auto& [texp, c] : f.x_coefficient(d)) {
        int s = 0;
        for (int e : texp) s += e;
        lead_deg = std::max(lead_deg, s);
    }
    const FactoredInteger pm1 = factorize(p - 1);
    std::uint64_t min_order = p - 1;
    for (long long a : bases)
        min_order = std::min(min_order, multiplicative_order(a, p, pm1));

    std::uint64_t vanished = 0;
    std::unordered_map<std::uint64_t, bool> memo;
    std::vector<long long> n(r, -N);
    std::vector<std::uint64_t> y(r);
    while (true) {
        for (int j = 0; j < r; ++j) y[j] = pow_mod(bases[j], n[j], p);
        bool vanish;
        if (r <= 2) {
            std::uint64_t key = 0;
            for (std::uint64_t v : y) key = key * p + v;
            auto it = memo.find(key);
            if (it == memo.end()) {
                vanish = !specialize(f, y, p).lead_ok;
                memo.emplace(key, vanish);
            } else {
                vanish = it->second;
            }
        } else {
            vanish = !specialize(f, y, p).lead_ok;
        }
        vanished += vanish;
        int i = r - 1;
        while (i >= 0 && ++n[i] > N) {
            n[i] = -N;
            --i;
        }
        if (i < 0) break;
    }

    LemmaCheckResult res;
    res.check_id = "vanishing_lead";
    res.params = "p=" + std::to_string(p) + " N=" + std::to_string(N) +
                 " r=" + std::to_string(r) + " lead_deg=" + std::to_string(lead_deg) +
                 " min_order=" + std::to_string(min_order);
    const double measured = static_cast<double>(vanished) / static_cast<double>(total);
    const double bound =
        c_tol * (static_cast<double>(lead_deg) / static_cast<double>(min_order) +
                 static_cast<double>(r) * static_cast<double>(p) /
                     static_cast<double>(side));
    res.values.push_back(make_value("vanishing_fraction", measured, bound));
    finish(res);
    return res;
}

LemmaCheckResult phi_tail_check(const std::vector<std::uint64_t>& z_grid,
                                std::uint64_t limit) {
    if (z_grid.empty()) throw std::invalid_argument("phi_tail_check: empty grid");
    std::vector<std::uint64_t> zs = z_grid;
    std::sort(zs.begin(), zs.end());
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
    for (std::uint64_t z : zs) {
        if (z < 1) throw std::invalid_argument("phi_tail_check: z must be >= 1");
        if (z >= limit)
            throw std::invalid_argument("phi_tail_check: limit must exceed every z");
    }

    std::vector<double> scaled;
    scaled.reserve(zs.size());
    for (std::uint64_t z : zs)
        scaled.push_back(static_cast<double>(z) * phi_tail_sum(z, limit));

    double log_sum = 0;
    for (double v : scaled) log_sum += std::log(v);
    const double geomean = std::exp(log_sum / static_cast<double>(scaled.size()));

    LemmaCheckResult res;
    res.check_id = "phi_tail";
    res.params = "limit=" + std::to_string(limit);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        LemmaValue v;
        v.label = "z=" + std::to_string(zs[i]);
        v.measured = scaled[i];
        v.bound = 4.0 * geomean;
        v.slack = std::min(v.bound - v.measured, v.measured - geomean / 4.0);
        v.pass = v.slack >= 0;
        res.values.push_back(v);
    }
    finish(res);
    return res;
}

}  // namespace expsieve
