#include "expsieve/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "expsieve/arith.hpp"
#include "expsieve/lemmas.hpp"
#include "expsieve/multipoly.hpp"
#include "expsieve/parse.hpp"
#include "expsieve/pipeline.hpp"
#include "expsieve/sieve.hpp"

namespace expsieve {

namespace {

using nlohmann::ordered_json;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string join(const std::vector<std::uint64_t>& v) {
    if (v.empty()) return "-";
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

// Writes either to stdout or to --out.
class Sink {
public:
    void open(const std::string& path) {
        if (path.empty()) return;
        file_.open(path, std::ios::binary);
        if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void emit_json(Sink& sink, const ordered_json& j) { sink.out() << j.dump(2) << '\n'; }

struct SieveArgs {
    std::string poly;
    std::vector<long long> bases;
    std::string mode = "no_root";
    std::uint64_t ell = 8;
    std::uint64_t x = 1000;
    std::uint64_t count = 8;
    std::uint64_t seed = 1;
    std::uint64_t budget = 65536;
    std::string out;
    bool json = false;
};

void add_site_options(CLI::App* cmd, SieveArgs& a, bool with_mode) {
    cmd->add_option("--poly", a.poly, "polynomial in X and t1..tk")->required();
    cmd->add_option("--base", a.bases, "base per parameter (comma separated)")
        ->delimiter(',');
    if (with_mode)
        cmd->add_option("--mode", a.mode, "no_root or irreducible")
            ->check(CLI::IsMember({"no_root", "irreducible"}));
    cmd->add_option("--ell", a.ell, "order-index ceiling for site qualification");
    cmd->add_option("--x", a.x, "prime search interval anchor: primes from (x, 2x]");
    cmd->add_option("--t", a.count, "number of sites to qualify");
    cmd->add_option("--seed", a.seed, "deterministic RNG seed");
    cmd->add_option("--budget", a.budget, "exact-stage bit budget");
    cmd->add_option("--out", a.out, "write output to this file instead of stdout");
    cmd->add_flag("--json", a.json, "emit JSON instead of text/CSV");
}

SieveConfig build_config(const SieveArgs& a, SiteSelection* selection_out) {
    const IntMultiPoly f = parse_poly(a.poly);
    SiteSelection sel = select_sites(f, a.bases, a.ell, a.x, a.count);
    if (selection_out) *selection_out = sel;
    SieveConfig cfg = make_sieve_config(
        f, a.bases, sel.sites,
        a.mode == "no_root" ? SieveMode::no_root : SieveMode::irreducible);
    cfg.fallback_budget_bits = a.budget;
    cfg.rng_seed = a.seed;
    return cfg;
}

int cmd_density(const SieveArgs& a, const std::vector<long long>& grid,
                unsigned threads, std::uint64_t sample) {
    SieveConfig cfg = build_config(a, nullptr);
    SweepOptions opts;
    opts.threads = threads;
    opts.sample = sample;
    opts.seed = a.seed;
    const DensityReport rep = density_sweep(cfg, grid, opts);
    Sink sink;
    sink.open(a.out);
    if (a.json) {
        ordered_json rows = ordered_json::array();
        for (const auto& r : rep.rows)
            rows.push_back({{"N", r.box},
                            {"total", r.total},
                            {"favorable", r.favorable},
                            {"fallbacks", r.fallbacks},
                            {"inconclusive", r.inconclusive},
                            {"skips", r.skips}});
        emit_json(sink, {{"mode", mode_name(rep.mode)}, {"rows", rows}});
    } else {
        sink.out() << "mode,N,total,favorable,density_num,density_den,fallbacks,"
                      "inconclusive,skips\n";
        for (const auto& r : rep.rows)
            sink.out() << mode_name(rep.mode) << ',' << r.box << ',' << r.total << ','
                       << r.favorable << ',' << r.favorable << ',' << r.total << ','
                       << r.fallbacks << ',' << r.inconclusive << ',' << r.skips
                       << '\n';
    }
    return 0;
}

int cmd_sieve(const SieveArgs& a, const std::vector<long long>& n) {
    SieveConfig cfg = build_config(a, nullptr);
    const Certificate cert = certificate_for(cfg, n);
    Sink sink;
    sink.open(a.out);
    const std::string root =
        cert.root ? cert.root->get_str() : std::string("-");
    if (a.json) {
        ordered_json j{{"verdict", verdict_name(cert.verdict)},
                       {"witness_prime", cert.witness_prime},
                       {"via_exact", cert.via_exact},
                       {"sites_consulted", cert.sites_consulted},
                       {"pattern_witnesses", cert.pattern_witnesses},
                       {"skipped_sites", cert.skipped_sites},
                       {"nonseparable_sites", cert.nonseparable_sites},
                       {"note", cert.note}};
        if (cert.root)
            j["root"] = root;
        else
            j["root"] = nullptr;
        emit_json(sink, j);
    } else {
        sink.out() << "verdict: " << verdict_name(cert.verdict) << '\n'
                   << "witness_prime: " << cert.witness_prime << '\n'
                   << "root: " << root << '\n'
                   << "via_exact: " << (cert.via_exact ? "true" : "false") << '\n'
                   << "sites_consulted: " << cert.sites_consulted << '\n'
                   << "pattern_witnesses: " << join(cert.pattern_witnesses) << '\n'
                   << "skipped_sites: " << join(cert.skipped_sites) << '\n'
                   << "nonseparable_sites: " << join(cert.nonseparable_sites) << '\n'
                   << "note: " << (cert.note.empty() ? "-" : cert.note) << '\n';
    }
    return cert.verdict == Verdict::inconclusive ? 1 : 0;
}

int cmd_primes(const SieveArgs& a) {
    const IntMultiPoly f = parse_poly(a.poly);
    const SiteSelection sel = select_sites(f, a.bases, a.ell, a.x, a.count);
    Sink sink;
    sink.open(a.out);
    const int r = f.var_count();
    if (a.json) {
        ordered_json sites = ordered_json::array();
        for (const auto& s : sel.sites)
            sites.push_back(
                {{"p", s.p}, {"orders", s.orders}, {"indices", s.indices}});
        ordered_json rejected = ordered_json::object();
        for (const auto& [reason, count] : sel.rejected)
            rejected[reject_reason_name(reason)] = count;
        emit_json(sink, {{"sites", sites},
                         {"tested", sel.tested},
                         {"satisfied", sel.satisfied},
                         {"diagnostic", sel.diagnostic},
                         {"rejected", rejected}});
    } else {
        std::string header = "p";
        for (int i = 1; i <= r; ++i) header += ",ord_" + std::to_string(i);
        for (int i = 1; i <= r; ++i) header += ",m_" + std::to_string(i);
        sink.out() << header << '\n';
        for (const auto& s : sel.sites) {
            sink.out() << s.p;
            for (auto o : s.orders) sink.out() << ',' << o;
            for (auto m : s.indices) sink.out() << ',' << m;
            sink.out() << '\n';
        }
    }
    if (!sel.satisfied) {
        std::cerr << "warning: " << sel.diagnostic << '\n';
        return 1;
    }
    return 0;
}

int cmd_orders(long long base, const std::vector<std::uint64_t>& ells,
               std::uint64_t limit, const std::string& out, bool json) {
    const auto rows = d_ell_curve(base, ells, limit);
    Sink sink;
    sink.open(out);
    if (json) {
        ordered_json jrows = ordered_json::array();
        for (const auto& [ell, frac] : rows)
            jrows.push_back({{"ell", ell}, {"fraction", frac}});
        emit_json(sink, {{"base", base}, {"limit", limit}, {"rows", jrows}});
    } else {
        sink.out() << "ell,fraction\n";
        for (const auto& [ell, frac] : rows)
            sink.out() << ell << ',' << fmt(frac) << '\n';
    }
    return 0;
}

int cmd_clique(const SieveArgs& a, std::uint64_t z) {
    const IntMultiPoly f = parse_poly(a.poly);
    const SiteSelection sel = select_sites(f, a.bases, a.ell, a.x, a.count);
    const CliqueResult res = clique_extract(sel.sites, z);
    Sink sink;
    sink.open(a.out);
    if (a.json) {
        std::vector<std::uint64_t> candidates;
        for (const auto& s : sel.sites) candidates.push_back(s.p);
        emit_json(sink, {{"candidates", candidates},
                         {"z", res.z},
                         {"clique", res.primes},
                         {"size", res.primes.size()},
                         {"edge_density", res.edge_density},
                         {"lower_bound", res.lower_bound},
                         {"meets_bound", res.meets_bound}});
    } else {
        sink.out() << "candidates: " << sel.sites.size() << '\n'
                   << "z: " << res.z << '\n'
                   << "clique: " << join(res.primes) << '\n'
                   << "size: " << res.primes.size() << '\n'
                   << "edge_density: " << fmt(res.edge_density) << '\n'
                   << "lower_bound: " << res.lower_bound << '\n'
                   << "meets_bound: " << (res.meets_bound ? "true" : "false") << '\n';
    }
    return res.meets_bound ? 0 : 1;
}

int cmd_gcdstats(const SieveArgs& a, const std::vector<std::uint64_t>& z_grid) {
    const IntMultiPoly f = parse_poly(a.poly);
    const SiteSelection sel = select_sites(f, a.bases, a.ell, a.x, a.count);
    const GcdPairStats stats = gcd_pair_stats(sel.sites, z_grid);
    Sink sink;
    sink.open(a.out);
    if (a.json) {
        ordered_json hist = ordered_json::array();
        for (const auto& [value, count] : stats.histogram)
            hist.push_back({{"value", value}, {"count", count}});
        ordered_json fr = ordered_json::array();
        for (const auto& [z, frac] : stats.fraction_at_most)
            fr.push_back({{"z", z}, {"fraction", frac}});
        emit_json(sink, {{"pair_count", stats.pair_count},
                         {"histogram", hist},
                         {"fraction_at_most", fr}});
    } else {
        sink.out() << "value,count\n";
        for (const auto& [value, count] : stats.histogram)
            sink.out() << value << ',' << count << '\n';
    }
    return 0;
}

int cmd_schedule(std::uint64_t box, double c, const std::string& out, bool json) {
    const Schedule s = schedule_parameters(box, c);
    Sink sink;
    sink.open(out);
    if (json) {
        ordered_json checks = ordered_json::array();
        for (const auto& ch : s.checks)
            checks.push_back(
                {{"name", ch.name}, {"lhs", ch.lhs}, {"rhs", ch.rhs}, {"ok", ch.ok}});
        emit_json(sink, {{"box", s.box},
                         {"sites", s.sites},
                         {"x", s.x},
                         {"z", s.z},
                         {"c", s.c},
                         {"checks", checks},
                         {"ok", s.ok}});
    } else {
        sink.out() << "box: " << s.box << '\n'
                   << "sites: " << s.sites << '\n'
                   << "x: " << s.x << '\n'
                   << "z: " << s.z << '\n'
                   << "c: " << fmt(s.c) << '\n';
        for (const auto& ch : s.checks)
            sink.out() << "check " << ch.name << ": " << fmt(ch.lhs) << " <= "
                       << fmt(ch.rhs) << (ch.ok ? " ok" : " VIOLATED") << '\n';
        sink.out() << "ok: " << (s.ok ? "true" : "false") << '\n';
    }
    return s.ok ? 0 : 1;
}

struct LemmaArgs {
    std::string check;
    std::string poly;
    std::vector<long long> bases;
    std::uint64_t x = 101;
    long long N = 100;
    std::uint64_t ell = 8;
    std::uint64_t count = 3;
    std::vector<std::uint64_t> z{10, 100, 1000};
    std::uint64_t limit = 1000000;
    std::uint64_t samples = 200000;
    std::uint64_t seed = 1;
    double ctol = 0.0;  // 0: per-check default
    std::string out;
    bool json = false;
};

int cmd_lemmas(const LemmaArgs& a) {
    std::vector<LemmaCheckResult> results;
    const bool all = a.check == "all";

    auto need_poly = [&]() -> IntMultiPoly {
        if (a.poly.empty())
            throw std::invalid_argument("this check requires --poly");
        return parse_poly(a.poly);
    };

    if (all || a.check == "one_prime") {
        const IntMultiPoly f = need_poly();
        results.push_back(one_prime_check(f, a.x, a.ctol > 0 ? a.ctol : 3.0));
    }
    if (all || a.check == "many_primes") {
        const IntMultiPoly f = need_poly();
        const SiteSelection sel = select_sites(f, a.bases, a.ell, a.x, a.count);
        if (sel.sites.empty())
            throw std::invalid_argument("no qualified sites in (x, 2x] for many_primes");
        results.push_back(many_primes_check(f, a.bases, sel.sites,
                                            a.ctol > 0 ? a.ctol : 5.0, 10000000,
                                            a.samples, a.seed));
    }
    if (all || a.check == "vanishing_lead") {
        const IntMultiPoly f = need_poly();
        results.push_back(
            vanishing_lead_check(f, a.bases, a.x, a.N, a.ctol > 0 ? a.ctol : 10.0));
    }
    if (all || a.check == "phi_tail") {
        results.push_back(phi_tail_check(a.z, a.limit));
    }

    Sink sink;
    sink.open(a.out);
    bool pass = true;
    for (const auto& res : results) pass = pass && res.pass;
    if (a.json) {
        ordered_json checks = ordered_json::array();
        for (const auto& res : results) {
            ordered_json values = ordered_json::array();
            for (const auto& v : res.values)
                values.push_back({{"label", v.label},
                                  {"measured", v.measured},
                                  {"bound", v.bound},
                                  {"slack", v.slack},
                                  {"pass", v.pass}});
            checks.push_back({{"check_id", res.check_id},
                              {"params", res.params},
                              {"values", values},
                              {"pass", res.pass}});
        }
        emit_json(sink, {{"checks", checks}, {"pass", pass}});
    } else {
        sink.out() << "lemma_id,params,measured,bound,slack,pass\n";
        for (const auto& res : results)
            for (const auto& v : res.values)
                sink.out() << res.check_id << ':' << v.label << ',' << res.params
                           << ',' << fmt(v.measured) << ',' << fmt(v.bound) << ','
                           << fmt(v.slack) << ',' << (v.pass ? "true" : "false")
                           << '\n';
    }
    return pass ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"certify rational roots and irreducibility of exponential "
                 "specializations f(a^n, X) by sieving over prime sites"};
    app.require_subcommand(1);

    SieveArgs density_args;
    std::vector<long long> density_grid;
    unsigned density_threads = 0;
    std::uint64_t density_sample = 0;
    auto* density = app.add_subcommand(
        "density", "classify every exponent point of nested boxes [-N, N]^r");
    add_site_options(density, density_args, true);
    density->add_option("--N", density_grid, "box radii (comma separated)")
        ->required()
        ->delimiter(',');
    density->add_option("--threads", density_threads, "worker threads (0: all cores)");
    density->add_option("--sample", density_sample,
                        "sample this many points per box instead of enumerating");

    SieveArgs sieve_args;
    std::vector<long long> sieve_point;
    auto* sieve = app.add_subcommand(
        "sieve", "certify one specialization f(a^n, X) at an exponent vector");
    add_site_options(sieve, sieve_args, true);
    sieve->add_option("--N", sieve_point,
                      "exponent vector n (comma separated; empty when the "
                      "polynomial has no parameters)")
        ->delimiter(',');

    SieveArgs primes_args;
    auto* primes = app.add_subcommand(
        "primes", "list qualified prime sites with base orders and indices");
    add_site_options(primes, primes_args, false);

    long long orders_base = 0;
    std::vector<std::uint64_t> orders_ells{1, 2, 4, 8, 16, 32, 64};
    std::uint64_t orders_limit = 100000;
    std::string orders_out;
    bool orders_json = false;
    auto* orders = app.add_subcommand(
        "orders", "fraction of primes whose base index (p-1)/ord is at most ell");
    orders->add_option("--base", orders_base, "the base a")->required();
    orders->add_option("--ell", orders_ells, "index thresholds (comma separated)")
        ->delimiter(',');
    orders->add_option("--x", orders_limit, "scan primes up to this limit");
    orders->add_option("--out", orders_out, "write output to this file");
    orders->add_flag("--json", orders_json, "emit JSON");

    SieveArgs clique_args;
    clique_args.count = 64;
    std::uint64_t clique_z = 8;
    auto* clique = app.add_subcommand(
        "clique", "extract a pairwise-compatible set of sites: gcd(p-1, q-1) <= z");
    add_site_options(clique, clique_args, false);
    clique->add_option("--z", clique_z, "pairwise gcd ceiling")->required();

    SieveArgs gcd_args;
    gcd_args.count = 64;
    std::vector<std::uint64_t> gcd_grid{1, 2, 4, 8, 16, 32, 64};
    auto* gcdstats = app.add_subcommand(
        "gcdstats", "histogram of gcd(p-1, q-1) over qualified site pairs");
    add_site_options(gcdstats, gcd_args, false);
    gcdstats->add_option("--z", gcd_grid, "report fractions at these ceilings")
        ->delimiter(',');

    LemmaArgs lemma_args;
    auto* lemmas = app.add_subcommand(
        "lemmas", "empirically verify the quantitative bounds behind the sieve");
    lemmas->add_option("--check", lemma_args.check, "which bound to measure")
        ->required()
        ->check(CLI::IsMember(
            {"one_prime", "many_primes", "vanishing_lead", "phi_tail", "all"}));
    lemmas->add_option("--poly", lemma_args.poly, "polynomial in X and t1..tk");
    lemmas->add_option("--base", lemma_args.bases, "base per parameter")
        ->delimiter(',');
    lemmas->add_option("--x", lemma_args.x,
                       "prime p for per-prime checks; interval anchor otherwise");
    lemmas->add_option("--N", lemma_args.N, "box radius for vanishing_lead");
    lemmas->add_option("--ell", lemma_args.ell, "site qualification threshold");
    lemmas->add_option("--t", lemma_args.count, "sites for many_primes");
    lemmas->add_option("--z", lemma_args.z, "z grid for phi_tail")->delimiter(',');
    lemmas->add_option("--limit", lemma_args.limit, "summation limit for phi_tail");
    lemmas->add_option("--samples", lemma_args.samples,
                       "sample count for many_primes");
    lemmas->add_option("--seed", lemma_args.seed, "sampling seed");
    lemmas->add_option("--ctol", lemma_args.ctol,
                       "tolerance constant (0: per-check default)");
    lemmas->add_option("--out", lemma_args.out, "write output to this file");
    lemmas->add_flag("--json", lemma_args.json, "emit JSON");

    std::uint64_t schedule_box = 0;
    double schedule_c = 1.0;
    std::string schedule_out;
    bool schedule_json = false;
    auto* schedule = app.add_subcommand(
        "schedule", "derive sieve parameters (t, x, z) from a box size");
    schedule->add_option("--N", schedule_box, "box size N")->required();
    schedule->add_option("--ctol", schedule_c, "constant c in c*t <= z");
    schedule->add_option("--out", schedule_out, "write output to this file");
    schedule->add_flag("--json", schedule_json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(density))
            return cmd_density(density_args, density_grid, density_threads,
                               density_sample);
        if (app.got_subcommand(sieve)) return cmd_sieve(sieve_args, sieve_point);
        if (app.got_subcommand(primes)) return cmd_primes(primes_args);
        if (app.got_subcommand(orders))
            return cmd_orders(orders_base, orders_ells, orders_limit, orders_out,
                              orders_json);
        if (app.got_subcommand(clique)) return cmd_clique(clique_args, clique_z);
        if (app.got_subcommand(gcdstats)) return cmd_gcdstats(gcd_args, gcd_grid);
        if (app.got_subcommand(lemmas)) return cmd_lemmas(lemma_args);
        if (app.got_subcommand(schedule))
            return cmd_schedule(schedule_box, schedule_c, schedule_out,
                                schedule_json);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace expsieve
