#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "expsieve/arith.hpp"
#include "expsieve/lemmas.hpp"
#include "expsieve/multipoly.hpp"
#include "expsieve/parse.hpp"
#include "expsieve/pipeline.hpp"
#include "expsieve/sieve.hpp"

namespace py = pybind11;
using namespace expsieve;

namespace {

py::object root_to_py(const std::optional<mpq_class>& r) {
    if (!r) return py::none();
    return py::str(r->get_str());
}

py::dict site_to_dict(const PrimeSite& s) {
    py::dict d;
    d["p"] = s.p;
    d["orders"] = s.orders;
    d["indices"] = s.indices;
    return d;
}

py::dict cert_to_dict(const Certificate& c) {
    py::dict d;
    d["verdict"] = verdict_name(c.verdict);
    d["witness_prime"] = c.witness_prime;
    d["via_exact"] = c.via_exact;
    d["root"] = root_to_py(c.root);
    d["pattern_witnesses"] = c.pattern_witnesses;
    d["sites_consulted"] = c.sites_consulted;
    d["skipped_sites"] = c.skipped_sites;
    d["nonseparable_sites"] = c.nonseparable_sites;
    d["note"] = c.note;
    return d;
}

py::dict lemma_to_dict(const LemmaCheckResult& r) {
    py::dict d;
    d["check_id"] = r.check_id;
    d["params"] = r.params;
    d["pass"] = r.pass;
    py::list values;
    for (const auto& v : r.values) {
        py::dict vd;
        vd["label"] = v.label;
        vd["measured"] = v.measured;
        vd["bound"] = v.bound;
        vd["slack"] = v.slack;
        vd["pass"] = v.pass;
        values.append(vd);
    }
    d["values"] = values;
    return d;
}

SieveMode mode_from(const std::string& mode) {
    if (mode == "no_root") return SieveMode::no_root;
    if (mode == "irreducible") return SieveMode::irreducible;
    throw std::invalid_argument("mode must be 'no_root' or 'irreducible'");
}

SieveConfig config_from(const std::string& poly, const std::vector<long long>& bases,
                        const std::string& mode, std::uint64_t ell, std::uint64_t x,
                        std::size_t count, std::uint64_t budget, std::uint64_t seed) {
    const IntMultiPoly f = parse_poly(poly);
    const SiteSelection sel = select_sites(f, bases, ell, x, count);
    SieveConfig cfg = make_sieve_config(f, bases, sel.sites, mode_from(mode));
    cfg.fallback_budget_bits = budget;
    cfg.rng_seed = seed;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "certified rational-root and irreducibility sieving for "
              "exponential specializations f(a^n, X)";

    py::class_<IntMultiPoly>(m, "Poly")
        .def("__str__", [](const IntMultiPoly& f) { return to_string(f); })
        .def("__repr__",
             [](const IntMultiPoly& f) { return "Poly('" + to_string(f) + "')"; })
        .def_property_readonly("x_degree", &IntMultiPoly::x_degree)
        .def_property_readonly("var_count", &IntMultiPoly::var_count);

    py::class_<SieveConfig>(m, "SieveConfig")
        .def_property_readonly(
            "sites",
            [](const SieveConfig& cfg) {
                py::list out;
                for (const auto& s : cfg.sites) out.append(site_to_dict(s));
                return out;
            })
        .def_property_readonly(
            "mode", [](const SieveConfig& cfg) { return mode_name(cfg.mode); });

    m.def("parse_poly", &parse_poly, py::arg("text"),
          "parse a polynomial in X and t1..tk");

    m.def("prime_range", &prime_range, py::arg("x"), py::arg("factor") = 2,
          "primes in (x, factor*x], ascending");
    m.def(
        "factorize",
        [](std::uint64_t v) { return factorize(v).factors; }, py::arg("v"),
        "prime factorization as (prime, exponent) pairs");
    m.def(
        "multiplicative_order",
        [](long long a, std::uint64_t p) {
            return multiplicative_order(a, p, factorize(p - 1));
        },
        py::arg("a"), py::arg("p"), "order of a in the units mod p");
    m.def("phi_tail_sum", &phi_tail_sum, py::arg("z"), py::arg("limit"),
          "sum of 1/phi(m)^2 over z < m <= limit");

    m.def(
        "qualify_prime",
        [](const std::string& poly, const std::vector<long long>& bases,
           std::uint64_t p, std::uint64_t ell) -> py::dict {
            const auto res = qualify_prime(parse_poly(poly), bases, p, ell);
            if (const auto* site = std::get_if<PrimeSite>(&res)) {
                py::dict d = site_to_dict(*site);
                d["qualified"] = true;
                return d;
            }
            const auto& rej = std::get<Rejection>(res);
            py::dict d;
            d["qualified"] = false;
            d["reason"] = reject_reason_name(rej.reason);
            d["detail"] = rej.detail;
            return d;
        },
        py::arg("poly"), py::arg("bases"), py::arg("p"), py::arg("ell"));

    m.def(
        "select_sites",
        [](const std::string& poly, const std::vector<long long>& bases,
           std::uint64_t ell, std::uint64_t x, std::size_t count) {
            const SiteSelection sel =
                select_sites(parse_poly(poly), bases, ell, x, count);
            py::dict d;
            py::list sites;
            for (const auto& s : sel.sites) sites.append(site_to_dict(s));
            d["sites"] = sites;
            d["tested"] = sel.tested;
            d["satisfied"] = sel.satisfied;
            d["diagnostic"] = sel.diagnostic;
            return d;
        },
        py::arg("poly"), py::arg("bases"), py::arg("ell") = 8, py::arg("x") = 1000,
        py::arg("count") = 8);

    m.def("d_ell_curve", &d_ell_curve, py::arg("a"), py::arg("ells"),
          py::arg("limit"),
          "fraction of primes with base index at most ell, per threshold");

    m.def(
        "clique_extract",
        [](const std::vector<std::uint64_t>& primes, std::uint64_t z) {
            const CliqueResult res = clique_extract(primes, z);
            py::dict d;
            d["clique"] = res.primes;
            d["z"] = res.z;
            d["edge_density"] = res.edge_density;
            d["lower_bound"] = res.lower_bound;
            d["meets_bound"] = res.meets_bound;
            return d;
        },
        py::arg("primes"), py::arg("z"),
        "greedy clique in the gcd(p-1, q-1) <= z compatibility graph");

    m.def(
        "schedule_parameters",
        [](std::uint64_t box, double c) {
            const Schedule s = schedule_parameters(box, c);
            py::dict d;
            d["box"] = s.box;
            d["sites"] = s.sites;
            d["x"] = s.x;
            d["z"] = s.z;
            d["c"] = s.c;
            py::list checks;
            for (const auto& ch : s.checks) {
                py::dict cd;
                cd["name"] = ch.name;
                cd["lhs"] = ch.lhs;
                cd["rhs"] = ch.rhs;
                cd["ok"] = ch.ok;
                checks.append(cd);
            }
            d["checks"] = checks;
            d["ok"] = s.ok;
            return d;
        },
        py::arg("box"), py::arg("c") = 1.0);

    m.def("make_config", &config_from, py::arg("poly"), py::arg("bases"),
          py::arg("mode") = "no_root", py::arg("ell") = 8, py::arg("x") = 1000,
          py::arg("t") = 8, py::arg("budget") = 65536, py::arg("seed") = 1,
          "qualify sites and assemble a sieve configuration");

    m.def(
        "certify",
        [](const SieveConfig& cfg, const std::vector<long long>& n) {
            return cert_to_dict(certificate_for(cfg, n));
        },
        py::arg("config"), py::arg("n"),
        "certificate for f(a^n, X) in the configured mode");

    m.def(
        "density_sweep",
        [](const SieveConfig& cfg, const std::vector<long long>& grid,
           unsigned threads, std::uint64_t sample, std::uint64_t seed) {
            SweepOptions opts;
            opts.threads = threads;
            opts.sample = sample;
            opts.seed = seed;
            const DensityReport rep = density_sweep(cfg, grid, opts);
            py::list rows;
            for (const auto& r : rep.rows) {
                py::dict d;
                d["N"] = r.box;
                d["total"] = r.total;
                d["favorable"] = r.favorable;
                d["fallbacks"] = r.fallbacks;
                d["inconclusive"] = r.inconclusive;
                d["skips"] = r.skips;
                rows.append(d);
            }
            return rows;
        },
        py::arg("config"), py::arg("grid"), py::arg("threads") = 0,
        py::arg("sample") = 0, py::arg("seed") = 1,
        "classify every point of the boxes [-N, N]^r");

    m.def(
        "brute_oracle",
        [](const std::string& poly, const std::vector<long long>& bases,
           const std::vector<long long>& n) {
            const auto v = brute_oracle(parse_poly(poly), bases, n);
            py::dict d;
            d["has_rational_root"] = v.has_rational_root;
            d["root"] = root_to_py(v.root);
            d["true_degree"] = v.true_degree;
            d["irreducible"] =
                v.irreducible ? py::cast(*v.irreducible) : py::none();
            return d;
        },
        py::arg("poly"), py::arg("bases"), py::arg("n"),
        "slow divisor-scan reference for |n_i| <= 12");

    m.def(
        "one_prime_check",
        [](const std::string& poly, std::uint64_t p, double c_tol) {
            return lemma_to_dict(one_prime_check(parse_poly(poly), p, c_tol));
        },
        py::arg("poly"), py::arg("p"), py::arg("c_tol") = 3.0);

    m.def(
        "many_primes_check",
        [](const std::string& poly, const std::vector<long long>& bases,
           std::uint64_t ell, std::uint64_t x, std::size_t count, double c_tol,
           std::uint64_t samples, std::uint64_t seed) {
            const IntMultiPoly f = parse_poly(poly);
            const SiteSelection sel = select_sites(f, bases, ell, x, count);
            return lemma_to_dict(many_primes_check(f, bases, sel.sites, c_tol,
                                                   10000000, samples, seed));
        },
        py::arg("poly"), py::arg("bases"), py::arg("ell") = 8, py::arg("x") = 1000,
        py::arg("t") = 3, py::arg("c_tol") = 5.0, py::arg("samples") = 200000,
        py::arg("seed") = 1);

    m.def(
        "vanishing_lead_check",
        [](const std::string& poly, const std::vector<long long>& bases,
           std::uint64_t p, long long N, double c_tol) {
            return lemma_to_dict(
                vanishing_lead_check(parse_poly(poly), bases, p, N, c_tol));
        },
        py::arg("poly"), py::arg("bases"), py::arg("p"), py::arg("N"),
        py::arg("c_tol") = 10.0);

    m.def(
        "phi_tail_check",
        [](const std::vector<std::uint64_t>& z_grid, std::uint64_t limit) {
            return lemma_to_dict(phi_tail_check(z_grid, limit));
        },
        py::arg("z_grid"), py::arg("limit"));
}
