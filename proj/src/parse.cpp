#include "expsieve/parse.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace expsieve {

namespace {

class Parser {
  public:
    explicit Parser(const std::string& text) : s_(text) {}

    IntMultiPoly run() {
        max_t_ = 0;
        IntMultiPoly e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

    int max_t() const { return max_t_; }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;
    int max_t_ = 0;

    // All subexpressions are built over a generous arity and trimmed by the
    // caller once the true variable count is known.
    static constexpr int kMaxVars = 16;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    long long integer() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected an integer");
        long long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            const int digit = s_[pos_] - '0';
            if (__builtin_mul_overflow(v, 10ll, &v) ||
                __builtin_add_overflow(v, static_cast<long long>(digit), &v))
                throw std::overflow_error("integer literal overflow");
            ++pos_;
        }
        return v;
    }

    IntMultiPoly expr() {
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        IntMultiPoly acc = term();
        if (neg) acc = poly_neg(acc);
        for (;;) {
            if (eat('+'))
                acc = poly_add(acc, term());
            else if (eat('-'))
                acc = poly_sub(acc, term());
            else
                break;
        }
        return acc;
    }

    IntMultiPoly term() {
        IntMultiPoly acc = factor();
        for (;;) {
            skip_ws();
            if (eat('*'))
                acc = poly_mul(acc, factor());
            else
                break;
        }
        return acc;
    }

    IntMultiPoly factor() {
        IntMultiPoly base = primary();
        if (eat('^')) {
            const long long e = integer();
            if (e > 512) fail("exponent too large");
            base = poly_pow(base, static_cast<int>(e));
        }
        return base;
    }

    IntMultiPoly primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            IntMultiPoly inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == 'X') {
            ++pos_;
            return poly_var_x(kMaxVars);
        }
        if (c == 't') {
            ++pos_;
            const long long idx = integer();
            if (idx < 1 || idx > kMaxVars) fail("t index out of range (1..16)");
            max_t_ = std::max(max_t_, static_cast<int>(idx));
            return poly_var_t(kMaxVars, static_cast<int>(idx));
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return poly_const(kMaxVars, integer());
        fail("expected a number, variable, or '('");
    }
};

IntMultiPoly trim_arity(const IntMultiPoly& wide, int r) {
    std::map<Monomial, long long> out;
    for (const auto& [m, c] : wide.terms()) {
        for (std::size_t i = r; i < m.t.size(); ++i)
            if (m.t[i] != 0)
                throw std::logic_error("trim_arity: live variable beyond arity");
        Monomial n{TExp(m.t.begin(), m.t.begin() + r), m.x};
        out[std::move(n)] = c;
    }
    return IntMultiPoly(r, std::move(out));
}

void append_tpart(std::string& out, const TExp& t) {
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] == 0) continue;
        out += "t" + std::to_string(i + 1);
        if (t[i] > 1) out += "^" + std::to_string(t[i]);
        out += "*";
    }
    if (!out.empty() && out.back() == '*') out.pop_back();
}

}  // namespace

IntMultiPoly parse_poly(const std::string& text) {
    Parser p(text);
    IntMultiPoly wide = p.run();
    IntMultiPoly f = trim_arity(wide, p.max_t());
    if (f.x_degree() < 1)
        throw ParseError("polynomial must have degree >= 1 in X", text.size());
    return f;
}

std::string to_string(const IntMultiPoly& f) {
    if (f.is_zero()) return "0";
    // Order: X-degree descending, then t exponents descending lexicographically.
    std::vector<std::pair<Monomial, long long>> terms(f.terms().begin(), f.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        if (a.first.x != b.first.x) return a.first.x > b.first.x;
        return a.first.t > b.first.t;
    });
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms) {
        const long long mag = c < 0 ? -c : c;
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
        }
        std::string vars;
        append_tpart(vars, m.t);
        if (m.x >= 1) {
            if (!vars.empty()) vars += "*";
            vars += "X";
            if (m.x > 1) vars += "^" + std::to_string(m.x);
        }
        if (vars.empty()) {
            out += std::to_string(mag);
        } else {
            if (mag != 1) out += std::to_string(mag) + "*";
            out += vars;
        }
    }
    return out;
}

}  // namespace expsieve
