#include "expsieve/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace expsieve {

const char* reject_reason_name(RejectReason r) {
    switch (r) {
        case RejectReason::divides_base: return "divides_base";
        case RejectReason::leading_coeff_vanishes: return "leading_coeff_vanishes";
        case RejectReason::discriminant_vanishes: return "discriminant_vanishes";
        case RejectReason::order_too_small: return "order_too_small";
    }
    return "unknown";
}

SiteQualifier::SiteQualifier(IntMultiPoly f, std::vector<long long> bases)
    : f_(std::move(f)), bases_(std::move(bases)) {
    if (static_cast<int>(bases_.size()) != f_.var_count())
        throw std::invalid_argument("qualifier: one base per parameter variable required");
    for (long long a : bases_)
        if (a == 0 || a == 1 || a == -1)
            throw std::invalid_argument("base entries must lie outside {0, 1, -1}");
    if (f_.x_degree() < 1)
        throw std::invalid_argument("qualifier: polynomial must have X-degree >= 1");
    disc_ = discriminant_in_x(f_);
    for (const auto& [e, c] : f_.leading_coefficient())
        lead_[e] = mpz_class(static_cast<long>(c));
}

std::variant<PrimeSite, Rejection> SiteQualifier::qualify(std::uint64_t p,
                                                          std::uint64_t ell) const {
    if (p < 2 || !is_prime(p))
        throw std::invalid_argument("qualify: p must be prime");
    if (ell < 1) throw std::invalid_argument("qualify: ell must be >= 1");
    for (std::size_t i = 0; i < bases_.size(); ++i) {
        const long long rem = bases_[i] % static_cast<long long>(p);
        if (rem == 0)
            return Rejection{RejectReason::divides_base,
                             "p divides a" + std::to_string(i + 1) + " = " +
                                 std::to_string(bases_[i])};
    }
    if (tpoly_vanishes_mod_p(lead_, p))
        return Rejection{RejectReason::leading_coeff_vanishes,
                         "leading coefficient is the zero polynomial mod p"};
    if (tpoly_vanishes_mod_p(disc_, p))
        return Rejection{RejectReason::discriminant_vanishes,
                         disc_.empty() ? "discriminant is identically zero"
                                       : "discriminant is the zero polynomial mod p"};
    PrimeSite site;
    site.p = p;
    site.p_minus_1 = factorize(p - 1);
    for (std::size_t i = 0; i < bases_.size(); ++i) {
        const std::uint64_t ord =
            multiplicative_order(bases_[i], p, site.p_minus_1);
        const std::uint64_t index = (p - 1) / ord;
        if (index > ell)
            return Rejection{RejectReason::order_too_small,
                             "ord(a" + std::to_string(i + 1) + ") = " +
                                 std::to_string(ord) + " < (p-1)/" +
                                 std::to_string(ell)};
        site.orders.push_back(ord);
        site.indices.push_back(index);
    }
    return site;
}

std::variant<PrimeSite, Rejection> qualify_prime(const IntMultiPoly& f,
                                                 const std::vector<long long>& bases,
                                                 std::uint64_t p, std::uint64_t ell) {
    return SiteQualifier(f, bases).qualify(p, ell);
}

SiteSelection select_sites(const IntMultiPoly& f, const std::vector<long long>& bases,
                           std::uint64_t ell, std::uint64_t x, std::size_t count) {
    const SiteQualifier q(f, bases);
    SiteSelection sel;
    for (std::uint64_t p : prime_range(x)) {
        if (sel.sites.size() >= count) break;
        ++sel.tested;
        auto res = q.qualify(p, ell);
        if (auto* site = std::get_if<PrimeSite>(&res))
            sel.sites.push_back(std::move(*site));
        else
            ++sel.rejected[std::get<Rejection>(res).reason];
    }
    sel.satisfied = sel.sites.size() >= count;
    if (!sel.satisfied)
        sel.diagnostic = "interval (" + std::to_string(x) + ", " +
                         std::to_string(2 * x) + "] exhausted: found " +
                         std::to_string(sel.sites.size()) + " of " +
                         std::to_string(count) + " sites";
    return sel;
}

std::vector<std::pair<std::uint64_t, double>> d_ell_curve(
    long long a, const std::vector<std::uint64_t>& ells, std::uint64_t limit) {
    if (a == 0 || a == 1 || a == -1)
        throw std::invalid_argument("d_ell_curve: base must lie outside {0, 1, -1}");
    if (limit < 2) throw std::invalid_argument("d_ell_curve: empty prime range");
    std::uint64_t considered = 0;
    std::map<std::uint64_t, std::uint64_t> qualified;  // ell -> count
    for (std::uint64_t ell : ells) qualified[ell] = 0;
    for (std::uint64_t p : prime_range(1, limit)) {
        if (a % static_cast<long long>(p) == 0) continue;
        ++considered;
        const auto fp = factorize(p - 1);
        const std::uint64_t ord = multiplicative_order(a, p, fp);
        const std::uint64_t index = (p - 1) / ord;
        for (std::uint64_t ell : ells)
            if (index <= ell) ++qualified[ell];
    }
    std::vector<std::pair<std::uint64_t, double>> out;
    for (std::uint64_t ell : ells)
        out.emplace_back(ell, considered == 0
                                  ? 0.0
                                  : static_cast<double>(qualified[ell]) /
                                        static_cast<double>(considered));
    return out;
}

double d_ell_estimate(long long a, std::uint64_t ell, std::uint64_t limit) {
    return d_ell_curve(a, {ell}, limit).front().second;
}

CliqueResult clique_extract(const std::vector<std::uint64_t>& primes, std::uint64_t z) {
    CliqueResult out;
    out.z = z;
    const std::size_t n = primes.size();
    if (n == 0) {
        out.meets_bound = true;
        return out;
    }
    std::vector<std::uint64_t> sorted = primes;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const std::size_t m = sorted.size();

    std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
    std::uint64_t edges = 0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (std::gcd(sorted[i] - 1, sorted[j] - 1) <= z) {
                adj[i][j] = adj[j][i] = 1;
                ++edges;
            }
        }
    }
    out.edge_density = 2.0 * static_cast<double>(edges) /
                       (static_cast<double>(m) * static_cast<double>(m));
    out.lower_bound = static_cast<std::uint64_t>(
        std::ceil(1.0 / (1.0 - out.edge_density) - 1e-12));
    if (out.lower_bound == 0) out.lower_bound = 1;

    // Max-degree descent: take a vertex of maximum degree in the current
    // induced subgraph, then restrict to its neighborhood.
    std::vector<std::size_t> alive(m);
    std::iota(alive.begin(), alive.end(), 0);
    while (!alive.empty()) {
        std::size_t best = alive[0];
        std::size_t best_deg = 0;
        for (std::size_t v : alive) {
            std::size_t deg = 0;
            for (std::size_t w : alive)
                if (adj[v][w]) ++deg;
            if (deg > best_deg || (deg == best_deg && sorted[v] < sorted[best])) {
                best = v;
                best_deg = deg;
            }
        }
        out.primes.push_back(sorted[best]);
        std::vector<std::size_t> next;
        for (std::size_t w : alive)
            if (adj[best][w]) next.push_back(w);
        alive = std::move(next);
    }
    std::sort(out.primes.begin(), out.primes.end());
    out.meets_bound = out.primes.size() >= out.lower_bound;
    return out;
}

CliqueResult clique_extract(const std::vector<PrimeSite>& sites, std::uint64_t z) {
    std::vector<std::uint64_t> ps;
    ps.reserve(sites.size());
    for (const auto& s : sites) ps.push_back(s.p);
    return clique_extract(ps, z);
}

GcdPairStats gcd_pair_stats(const std::vector<std::uint64_t>& primes,
                            const std::vector<std::uint64_t>& z_grid) {
    GcdPairStats out;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        for (std::size_t j = i + 1; j < primes.size(); ++j) {
            ++out.histogram[std::gcd(primes[i] - 1, primes[j] - 1)];
            ++out.pair_count;
        }
    }
    for (std::uint64_t z : z_grid) {
        std::uint64_t le = 0;
        for (const auto& [g, cnt] : out.histogram)
            if (g <= z) le += cnt;
        out.fraction_at_most.emplace_back(
            z, out.pair_count == 0
                   ? 0.0
                   : static_cast<double>(le) / static_cast<double>(out.pair_count));
    }
    return out;
}

GcdPairStats gcd_pair_stats(const std::vector<PrimeSite>& sites,
                            const std::vector<std::uint64_t>& z_grid) {
    std::vector<std::uint64_t> ps;
    ps.reserve(sites.size());
    for (const auto& s : sites) ps.push_back(s.p);
    return gcd_pair_stats(ps, z_grid);
}

namespace {

// Largest x with x^e <= n (e >= 1).
std::uint64_t integer_root(std::uint64_t n, unsigned e) {
    if (e == 1) return n;
    std::uint64_t x = static_cast<std::uint64_t>(
        std::pow(static_cast<double>(n), 1.0 / static_cast<double>(e)));
    auto pw = [&](std::uint64_t v) -> unsigned __int128 {
        unsigned __int128 acc = 1;
        for (unsigned i = 0; i < e; ++i) {
            acc *= v;
            if (acc > static_cast<unsigned __int128>(1) << 100) return acc;
        }
        return acc;
    };
    while (x > 0 && pw(x) > n) --x;
    while (pw(x + 1) <= n) ++x;
    return x;
}

}  // namespace

Schedule schedule_parameters(std::uint64_t box, double c) {
    if (box < 4) throw std::invalid_argument("schedule_parameters: box too small");
    if (c <= 0) throw std::invalid_argument("schedule_parameters: c must be positive");
    Schedule s;
    s.box = box;
    s.c = c;

    const double loglog = std::log(std::log(static_cast<double>(box)));
    s.sites = loglog > 1.0
                  ? std::max<std::uint64_t>(
                        1, static_cast<std::uint64_t>(std::floor(std::sqrt(loglog))))
                  : 1;

    // Half the 2t-th root keeps (2x)^t below sqrt(N).
    const std::uint64_t root = integer_root(box, static_cast<unsigned>(2 * s.sites));
    s.x = std::max<std::uint64_t>(2, root / 2);

    const double logx = std::log(static_cast<double>(s.x));
    s.z = std::max<std::uint64_t>(
        static_cast<std::uint64_t>(std::ceil(c * static_cast<double>(s.sites))),
        static_cast<std::uint64_t>(std::floor(logx)));

    const double t = static_cast<double>(s.sites);
    const double x = static_cast<double>(s.x);
    const double N = static_cast<double>(box);
    auto add_check = [&](const std::string& name, double lhs, double rhs) {
        s.checks.push_back({name, lhs, rhs, lhs <= rhs + 1e-12});
    };
    add_check("c*t <= z", c * t, static_cast<double>(s.z));
    add_check("z <= log(x)", static_cast<double>(s.z), logx);
    add_check("t*x <= sqrt(N)", t * x, std::sqrt(N));
    add_check("(2x)^t <= sqrt(N)", std::pow(2.0 * x, t), std::sqrt(N));
    s.ok = std::all_of(s.checks.begin(), s.checks.end(),
                       [](const ScheduleCheck& ck) { return ck.ok; });
    return s;
}

}  // namespace expsieve
