#include "expsieve/multipoly.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace expsieve {

namespace {

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("polynomial coefficient overflow");
    return r;
}

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("polynomial coefficient overflow");
    return r;
}

}  // namespace

IntMultiPoly::IntMultiPoly(int r, std::map<Monomial, long long> terms)
    : r_(r), terms_(std::move(terms)) {
    if (r < 0) throw std::invalid_argument("variable count must be >= 0");
    for (auto it = terms_.begin(); it != terms_.end();) {
        const auto& [m, c] = *it;
        if (static_cast<int>(m.t.size()) != r)
            throw std::invalid_argument("monomial arity mismatch");
        if (m.x < 0) throw std::invalid_argument("negative X exponent");
        for (int e : m.t)
            if (e < 0) throw std::invalid_argument("negative t exponent");
        if (c == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

int IntMultiPoly::x_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.x);
    return d;
}

std::map<TExp, long long> IntMultiPoly::x_coefficient(int j) const {
    std::map<TExp, long long> out;
    for (const auto& [m, c] : terms_)
        if (m.x == j) out[m.t] = c;
    return out;
}

std::map<TExp, long long> IntMultiPoly::leading_coefficient() const {
    return x_coefficient(x_degree());
}

int IntMultiPoly::t_degree(int i) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.t[i]);
    return d;
}

IntMultiPoly IntMultiPoly::x_derivative() const {
    std::map<Monomial, long long> out;
    for (const auto& [m, c] : terms_) {
        if (m.x == 0) continue;
        Monomial n{m.t, m.x - 1};
        out[n] = checked_mul(c, m.x);
    }
    return IntMultiPoly(r_, std::move(out));
}

IntMultiPoly IntMultiPoly::substitute_powers(const std::vector<int>& mults) const {
    if (static_cast<int>(mults.size()) != r_)
        throw std::invalid_argument("substitute_powers: arity mismatch");
    for (int m : mults)
        if (m < 1) throw std::invalid_argument("substitute_powers: multiplier must be >= 1");
    std::map<Monomial, long long> out;
    for (const auto& [m, c] : terms_) {
        Monomial n = m;
        for (int i = 0; i < r_; ++i) n.t[i] = checked_mul(n.t[i], mults[i]);
        out[n] = c;
    }
    return IntMultiPoly(r_, std::move(out));
}

IntMultiPoly poly_add(const IntMultiPoly& a, const IntMultiPoly& b) {
    if (a.var_count() != b.var_count())
        throw std::invalid_argument("poly_add: arity mismatch");
    std::map<Monomial, long long> out = a.terms();
    for (const auto& [m, c] : b.terms()) {
        auto [it, fresh] = out.emplace(m, c);
        if (!fresh) it->second = checked_add(it->second, c);
    }
    return IntMultiPoly(a.var_count(), std::move(out));
}

IntMultiPoly poly_neg(const IntMultiPoly& a) {
    std::map<Monomial, long long> out;
    for (const auto& [m, c] : a.terms()) out[m] = checked_mul(c, -1);
    return IntMultiPoly(a.var_count(), std::move(out));
}

IntMultiPoly poly_sub(const IntMultiPoly& a, const IntMultiPoly& b) {
    return poly_add(a, poly_neg(b));
}

IntMultiPoly poly_mul(const IntMultiPoly& a, const IntMultiPoly& b) {
    if (a.var_count() != b.var_count())
        throw std::invalid_argument("poly_mul: arity mismatch");
    const int r = a.var_count();
    std::map<Monomial, long long> out;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            Monomial m;
            m.t.resize(r);
            for (int i = 0; i < r; ++i) m.t[i] = checked_add(ma.t[i], mb.t[i]);
            m.x = static_cast<int>(checked_add(ma.x, mb.x));
            const long long c = checked_mul(ca, cb);
            auto [it, fresh] = out.emplace(m, c);
            if (!fresh) it->second = checked_add(it->second, c);
        }
    }
    return IntMultiPoly(r, std::move(out));
}

IntMultiPoly poly_pow(const IntMultiPoly& a, int e) {
    if (e < 0) throw std::invalid_argument("poly_pow: negative exponent");
    IntMultiPoly acc = poly_const(a.var_count(), 1);
    for (int i = 0; i < e; ++i) acc = poly_mul(acc, a);
    return acc;
}

IntMultiPoly poly_const(int r, long long c) {
    std::map<Monomial, long long> t;
    if (c != 0) t[Monomial{TExp(r, 0), 0}] = c;
    return IntMultiPoly(r, std::move(t));
}

IntMultiPoly poly_var_t(int r, int i) {
    if (i < 1 || i > r) throw std::invalid_argument("poly_var_t: index out of range");
    Monomial m{TExp(r, 0), 0};
    m.t[i - 1] = 1;
    return IntMultiPoly(r, {{m, 1}});
}

IntMultiPoly poly_var_x(int r) {
    return IntMultiPoly(r, {{Monomial{TExp(r, 0), 1}, 1}});
}

IntMultiPoly with_var_count(const IntMultiPoly& a, int r) {
    if (r < a.var_count())
        throw std::invalid_argument("with_var_count: cannot shrink arity");
    std::map<Monomial, long long> out;
    for (const auto& [m, c] : a.terms()) {
        Monomial n = m;
        n.t.resize(r, 0);
        out[std::move(n)] = c;
    }
    return IntMultiPoly(r, std::move(out));
}

bool is_constant_tpoly(const std::map<TExp, long long>& g) {
    for (const auto& [e, c] : g)
        for (int v : e)
            if (v != 0) return false;
    return true;
}

bool tpoly_vanishes_mod_p(const TPolyZ& g, std::uint64_t p) {
    for (const auto& [e, c] : g)
        if (mpz_fdiv_ui(c.get_mpz_t(), p) != 0) return false;
    return true;
}

std::uint64_t tpoly_eval_mod_p(const TPolyZ& g, const std::vector<std::uint64_t>& y,
                               std::uint64_t p) {
    unsigned __int128 acc = 0;
    for (const auto& [e, c] : g) {
        if (e.size() != y.size())
            throw std::invalid_argument("tpoly_eval_mod_p: arity mismatch");
        std::uint64_t term = mpz_fdiv_ui(c.get_mpz_t(), p);
        for (std::size_t i = 0; i < e.size(); ++i) {
            std::uint64_t b = y[i] % p, pw = 1;
            for (int k = e[i]; k > 0; k >>= 1) {
                if (k & 1)
                    pw = static_cast<std::uint64_t>(
                        (static_cast<unsigned __int128>(pw) * b) % p);
                b = static_cast<std::uint64_t>(
                    (static_cast<unsigned __int128>(b) * b) % p);
            }
            term = static_cast<std::uint64_t>(
                (static_cast<unsigned __int128>(term) * pw) % p);
        }
        acc = (acc + term) % p;
    }
    return static_cast<std::uint64_t>(acc);
}

namespace {

// Exact sparse polynomials over Q in the t variables, used only while
// interpolating the resultant.
using TPolyQ = std::map<TExp, mpq_class>;

// Fraction-free Gaussian elimination (Bareiss); exact integer determinant.
mpz_class bareiss_det(std::vector<std::vector<mpz_class>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t pivot = k + 1;
            while (pivot < n && m[pivot][k] == 0) ++pivot;
            if (pivot == n) return 0;
            std::swap(m[k], m[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : mpz_class(-m[n - 1][n - 1]);
}

// Resultant of (f, f_X) at the formal degrees (d, d-1), evaluated at one
// integer point of the parameter space.
mpz_class resultant_at_point(const std::vector<std::map<TExp, long long>>& f_coeffs,
                             const std::vector<std::vector<mpz_class>>& powers,
                             const std::vector<int>& strides,
                             const std::vector<int>& point) {
    const int d = static_cast<int>(f_coeffs.size()) - 1;
    std::vector<mpz_class> a(d + 1), b(d);  // f and f_X, ascending
    for (int j = 0; j <= d; ++j) {
        mpz_class v = 0;
        for (const auto& [e, c] : f_coeffs[j]) {
            mpz_class term = static_cast<long>(c);
            for (std::size_t i = 0; i < e.size(); ++i)
                term *= powers[i][static_cast<std::size_t>(point[i]) * strides[i] + e[i]];
            v += term;
        }
        a[j] = v;
    }
    for (int j = 1; j <= d; ++j) b[j - 1] = a[j] * j;

    const int n = 2 * d - 1;
    std::vector<std::vector<mpz_class>> syl(n, std::vector<mpz_class>(n, mpz_class(0)));
    // d-1 rows of f (degree d), d rows of f_X (degree d-1), descending layout.
    for (int row = 0; row < d - 1; ++row)
        for (int j = 0; j <= d; ++j) syl[row][row + j] = a[d - j];
    for (int row = 0; row < d; ++row)
        for (int j = 0; j <= d - 1; ++j) syl[d - 1 + row][row + j] = b[d - 1 - j];
    return bareiss_det(std::move(syl));
}

std::vector<mpq_class> lagrange_basis(int k, int npoints) {
    // L_k(u) over nodes u = 0..npoints-1, ascending coefficients.
    std::vector<mpq_class> poly{1};
    for (int j = 0; j < npoints; ++j) {
        if (j == k) continue;
        // multiply by (u - j) / (k - j)
        std::vector<mpq_class> next(poly.size() + 1, mpq_class(0));
        const mpq_class denom(k - j);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i] * mpq_class(-j);
            next[i + 1] += poly[i];
        }
        for (auto& c : next) c /= denom;
        poly = std::move(next);
    }
    return poly;
}

// Exact division in Z[t] by lexicographic leading terms.
TPolyZ tpoly_divide_exact(TPolyZ num, const TPolyZ& den) {
    if (den.empty()) throw std::invalid_argument("division by the zero polynomial");
    const auto& [lt_exp, lt_coeff] = *den.rbegin();
    TPolyZ q;
    while (!num.empty()) {
        auto [n_exp, n_coeff] = *num.rbegin();
        TExp diff(n_exp.size());
        for (std::size_t i = 0; i < n_exp.size(); ++i) {
            diff[i] = n_exp[i] - lt_exp[i];
            if (diff[i] < 0)
                throw std::logic_error("tpoly_divide_exact: not divisible");
        }
        if (!mpz_divisible_p(n_coeff.get_mpz_t(), lt_coeff.get_mpz_t()))
            throw std::logic_error("tpoly_divide_exact: coefficient not divisible");
        mpz_class qc = n_coeff / lt_coeff;
        q[diff] = qc;
        for (const auto& [e, c] : den) {
            TExp shifted(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) shifted[i] = e[i] + diff[i];
            auto it = num.find(shifted);
            mpz_class nv = (it == num.end() ? mpz_class(0) : it->second) - qc * c;
            if (nv == 0) {
                if (it != num.end()) num.erase(it);
            } else {
                num[shifted] = nv;
            }
        }
    }
    return q;
}

}  // namespace

TPolyZ discriminant_in_x(const IntMultiPoly& f) {
    const int d = f.x_degree();
    const int r = f.var_count();
    if (d < 1) throw std::invalid_argument("discriminant_in_x: deg_X must be >= 1");
    if (d == 1) return {{TExp(r, 0), mpz_class(1)}};

    std::vector<std::map<TExp, long long>> f_coeffs(d + 1);
    for (int j = 0; j <= d; ++j) f_coeffs[j] = f.x_coefficient(j);

    // Per-variable degree bound of the Sylvester determinant.
    std::vector<int> bound(r);
    unsigned long long grid = 1;
    for (int i = 0; i < r; ++i) {
        bound[i] = (2 * d - 1) * f.t_degree(i);
        grid *= static_cast<unsigned long long>(bound[i]) + 1;
        if (grid > 1000000ull)
            throw std::invalid_argument("discriminant_in_x: interpolation grid too large");
    }

    // powers[i] holds v^e for v in 0..bound[i], e in 0..t_degree(i), flattened
    // as v * (deg_i + 1) + e.
    std::vector<std::vector<mpz_class>> powers(r);
    std::vector<int> strides(r);
    for (int i = 0; i < r; ++i) {
        const int deg_i = f.t_degree(i);
        strides[i] = deg_i + 1;
        powers[i].resize(static_cast<std::size_t>(bound[i] + 1) * (deg_i + 1));
        for (int v = 0; v <= bound[i]; ++v) {
            mpz_class pw = 1;
            for (int e = 0; e <= deg_i; ++e) {
                powers[i][static_cast<std::size_t>(v) * (deg_i + 1) + e] = pw;
                pw *= v;
            }
        }
    }

    // Evaluate the resultant on the full grid (row-major, axis 0 slowest).
    std::vector<mpz_class> values(grid);
    std::vector<int> point(r, 0);
    for (unsigned long long idx = 0; idx < grid; ++idx) {
        values[idx] = resultant_at_point(f_coeffs, powers, strides, point);
        for (int axis = r - 1; axis >= 0; --axis) {
            if (++point[axis] <= bound[axis]) break;
            point[axis] = 0;
        }
    }

    // Interpolate one axis at a time, innermost (contiguous) axis first.
    std::vector<TPolyQ> cur(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] != 0) cur[i][TExp(r, 0)] = mpq_class(values[i]);
    for (int axis = r - 1; axis >= 0; --axis) {
        const int stride = bound[axis] + 1;
        std::vector<std::vector<mpq_class>> basis(stride);
        for (int k = 0; k < stride; ++k) basis[k] = lagrange_basis(k, stride);
        std::vector<TPolyQ> next(cur.size() / stride);
        for (std::size_t g = 0; g < next.size(); ++g) {
            TPolyQ acc;
            for (int k = 0; k < stride; ++k) {
                for (const auto& [e, c] : cur[g * stride + k]) {
                    for (std::size_t pw = 0; pw < basis[k].size(); ++pw) {
                        if (basis[k][pw] == 0) continue;
                        TExp ne = e;
                        ne[axis] = static_cast<int>(pw);
                        acc[ne] += c * basis[k][pw];
                    }
                }
            }
            for (auto it = acc.begin(); it != acc.end();)
                it = (it->second == 0) ? acc.erase(it) : std::next(it);
            next[g] = std::move(acc);
        }
        cur = std::move(next);
    }

    TPolyZ res;
    for (const auto& [e, c] : cur[0]) {
        if (c.get_den() != 1)
            throw std::logic_error("discriminant_in_x: interpolation not integral");
        res[e] = c.get_num();
    }

    // disc = (-1)^(d(d-1)/2) * Res / lc.
    if ((static_cast<long long>(d) * (d - 1) / 2) % 2 == 1)
        for (auto& [e, c] : res) c = -c;
    TPolyZ lead;
    for (const auto& [e, c] : f.leading_coefficient())
        lead[e] = mpz_class(static_cast<long>(c));
    return tpoly_divide_exact(std::move(res), lead);
}

}  // namespace expsieve
