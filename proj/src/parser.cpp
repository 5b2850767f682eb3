#include "sshg/parser.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "sshg/errors.hpp"

namespace sshg::sym {

namespace {

// --- parsing -----------------------------------------------------------------

class Parser {
  public:
    explicit Parser(const std::string& text) : s_(text) {}

    Expr run() {
        Expr e = expr();
        skip_ws();
        if (pos_ != s_.size()) throw SyntaxError("trailing input", pos_);
        return e;
    }

  private:
    // expr := term (('+'|'-') term)*
    Expr expr() {
        Expr e = term();
        for (;;) {
            skip_ws();
            if (accept('+')) {
                e += term();
            } else if (accept('-')) {
                e -= term();
            } else {
                return e;
            }
        }
    }

    // term := factor (('*'|'/') factor)*
    Expr term() {
        Expr e = factor();
        for (;;) {
            skip_ws();
            if (accept('*')) {
                e *= factor();
            } else if (accept('/')) {
                e *= invert(factor());
            } else {
                return e;
            }
        }
    }

    // factor := ('-'|'+')* primary ('^' signed-integer)?
    Expr factor() {
        skip_ws();
        if (accept('-')) return -factor();
        if (accept('+')) return factor();
        Expr e = primary();
        skip_ws();
        if (accept('^')) {
            long n = signed_integer();
            e = power(e, n);
        }
        return e;
    }

    Expr primary() {
        skip_ws();
        if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return Expr::rational(unsigned_integer());
        }
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    Expr identifier() {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        std::string name = s_.substr(start, pos_ - start);

        if (name == "I") return Expr::imaginary_unit();
        if (name == "m") return Expr::half_powers(0, 2, 0, 0);
        if (name == "s1") return Expr::half_powers(0, 0, 2, 0);
        if (name == "s2") return Expr::half_powers(0, 0, 0, 2);

        if (name == "dt" || name == "dx") {
            expect('(');
            Expr arg = expr();
            expect(')');
            return total_derivative(arg, name == "dt" ? Dir::t : Dir::x);
        }
        if (name == "exp" || name == "cosh" || name == "sinh") {
            expect('(');
            Expr arg = expr();
            expect(')');
            LinearForm form = as_linear_form(arg, start);
            if (name == "exp") return Expr::exponential(form);
            if (name == "cosh") return Expr::cosh_of(form);
            return Expr::sinh_of(form);
        }
        if (name == "sqrt") {
            expect('(');
            Expr arg = expr();
            expect(')');
            return square_root(arg, start);
        }

        if (auto f = field_by_name(name)) {
            expect('[');
            long r = unsigned_integer();
            expect(']');
            if (r > 2) throw SyntaxError("region out of range", pos_);
            return Expr::jet(JetAtom(*f, static_cast<std::uint8_t>(r), 0, 0));
        }
        throw UnknownSymbol(name);
    }

    static std::optional<Field> field_by_name(const std::string& n) {
        for (Field f : {Field::phi, Field::varphi, Field::psi, Field::psibar, Field::chi,
                        Field::chibar, Field::f, Field::g})
            if (n == field_name(f)) return f;
        return std::nullopt;
    }

    // The argument of exp/cosh/sinh must be a rational combination of bare
    // even fields.
    LinearForm as_linear_form(const Expr& e, std::size_t at) {
        LinearForm form;
        for (const auto& mono : e.terms()) {
            if (!mono.word.empty() || !mono.exp.empty() || mono.jets.size() != 1 ||
                mono.jets[0].order() != 0 || !mono.half.trivial() || !mono.coeff.is_real())
                throw SyntaxError("exponential argument must be a linear form in even fields", at);
            form.add(mono.jets[0].base, mono.coeff.re);
        }
        return form;
    }

    // sqrt of a product of a rational and the four radicand symbols.
    Expr square_root(const Expr& e, std::size_t at) {
        if (e.size() != 1) throw SyntaxError("sqrt argument must be a single product", at);
        const Monomial& m = e.terms()[0];
        if (!m.jets.empty() || !m.word.empty() || !m.exp.empty() || !m.coeff.is_real())
            throw SyntaxError("sqrt argument must be constant", at);
        if (m.half.m % 2 || m.half.s1 % 2 || m.half.s2 % 2 || m.half.two % 2)
            throw SyntaxError("sqrt of a quarter-integer power", at);
        Rational q = m.coeff.re;
        if (q.is_zero()) return Expr::zero();
        Gaussian unit(1);
        if (q.is_negative()) {
            q = -q;
            unit = Gaussian::I();
        }
        // factor powers of two out of num/den
        std::int64_t num = q.num(), den = q.den();
        int twos = 0;
        while (num % 2 == 0) {
            num /= 2;
            ++twos;
        }
        while (den % 2 == 0) {
            den /= 2;
            --twos;
        }
        auto isqrt = [at](std::int64_t v) {
            std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
            while (r * r > v) --r;
            while ((r + 1) * (r + 1) <= v) ++r;
            if (r * r != v) throw SyntaxError("sqrt of a non-square rational", at);
            return r;
        };
        Rational root(isqrt(num), isqrt(den));
        Monomial out(unit * Gaussian(root));
        out.half.two = static_cast<std::int16_t>(twos + m.half.two / 2);
        out.half.m = static_cast<std::int16_t>(m.half.m / 2);
        out.half.s1 = static_cast<std::int16_t>(m.half.s1 / 2);
        out.half.s2 = static_cast<std::int16_t>(m.half.s2 / 2);
        return Expr::from_terms({out});
    }

    Expr power(const Expr& e, long n) {
        if (n == 0) return Expr::one();
        if (n > 0) {
            Expr r = e;
            for (long i = 1; i < n; ++i) r *= e;
            return r;
        }
        Expr inv = invert(e);
        Expr r = inv;
        for (long i = 1; i < -n; ++i) r *= inv;
        return r;
    }

    Expr invert(const Expr& e) {
        if (e.size() != 1) throw SyntaxError("division by a non-invertible expression", pos_);
        const Monomial& m = e.terms()[0];
        if (!m.jets.empty() || !m.word.empty())
            throw SyntaxError("division by a non-invertible expression", pos_);
        Monomial inv(Gaussian(1) / m.coeff);
        inv.exp = -m.exp;
        inv.half.two = static_cast<std::int16_t>(-m.half.two);
        inv.half.m = static_cast<std::int16_t>(-m.half.m);
        inv.half.s1 = static_cast<std::int16_t>(-m.half.s1);
        inv.half.s2 = static_cast<std::int16_t>(-m.half.s2);
        return Expr::from_terms({inv});
    }

    long unsigned_integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw SyntaxError("expected integer", pos_);
        return std::strtol(s_.substr(start, pos_ - start).c_str(), nullptr, 10);
    }

    long signed_integer() {
        skip_ws();
        bool neg = accept('-');
        long v = unsigned_integer();
        return neg ? -v : v;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

// --- printing ----------------------------------------------------------------

void print_rational(std::ostream& os, const Rational& r) { os << r.str(); }

// Prints the Gaussian magnitude as a leading factor; the sign has already
// been folded out by the caller.
void print_gaussian(std::ostream& os, const Gaussian& g, bool& need_star) {
    if (g.is_real()) {
        if (!g.re.is_one()) {
            print_rational(os, g.re);
            need_star = true;
        }
        return;
    }
    if (g.re.is_zero()) {
        if (!g.im.is_one()) {
            print_rational(os, g.im);
            os << "*";
        }
        os << "I";
        need_star = true;
        return;
    }
    os << "(" << g.re.str();
    if (!g.im.is_negative()) os << "+";
    os << g.im.str() << "*I)";
    need_star = true;
}

void star(std::ostream& os, bool& need_star) {
    if (need_star) os << "*";
    need_star = true;
}

void print_half_symbol(std::ostream& os, const char* sym, int halves, bool& need_star) {
    if (halves == 0) return;
    int whole = (halves >= 0) ? halves / 2 : -((-halves + 1) / 2);  // floor
    int rem = halves - 2 * whole;                                   // 0 or 1
    if (whole != 0) {
        star(os, need_star);
        os << sym;
        if (whole != 1) os << "^" << whole;
    }
    if (rem != 0) {
        star(os, need_star);
        os << "sqrt(" << sym << ")";
    }
}

void print_form(std::ostream& os, const LinearForm& form) {
    bool first = true;
    for (const auto& [atom, c] : form.items()) {
        Rational mag = c;
        if (c.is_negative()) {
            os << "-";
            mag = -c;
        } else if (!first) {
            os << "+";
        }
        if (!mag.is_one()) os << mag.str() << "*";
        os << atom.str();
        first = false;
    }
}

void print_jet(std::ostream& os, const JetAtom& j) {
    for (int i = 0; i < j.dt; ++i) os << "dt(";
    for (int i = 0; i < j.dx; ++i) os << "dx(";
    os << j.base.str();
    for (int i = 0; i < j.order(); ++i) os << ")";
}

void print_jet_run(std::ostream& os, const std::vector<JetAtom>& jets, bool& need_star) {
    std::size_t i = 0;
    while (i < jets.size()) {
        std::size_t j = i;
        while (j < jets.size() && jets[j] == jets[i]) ++j;
        star(os, need_star);
        print_jet(os, jets[i]);
        if (j - i > 1) os << "^" << (j - i);
        i = j;
    }
}

void print_monomial(std::ostream& os, const Monomial& m) {
    bool need_star = false;
    std::ostringstream head;
    print_gaussian(head, m.coeff, need_star);
    std::string head_s = head.str();
    os << head_s;
    print_half_symbol(os, "2", m.half.two, need_star);
    print_half_symbol(os, "m", m.half.m, need_star);
    print_half_symbol(os, "s1", m.half.s1, need_star);
    print_half_symbol(os, "s2", m.half.s2, need_star);
    if (!m.exp.empty()) {
        star(os, need_star);
        os << "exp(";
        print_form(os, m.exp);
        os << ")";
    }
    print_jet_run(os, m.jets, need_star);
    print_jet_run(os, m.word, need_star);
    if (!need_star && head_s.empty()) os << "1";
}

// Sign used only to choose between " + " and " - " separators.
bool prints_negative(const Gaussian& g) {
    if (!g.re.is_zero()) return g.re.is_negative();
    return g.im.is_negative();
}

}  // namespace

Expr parse(const std::string& text) { return Parser(text).run(); }

std::string print(const Expr& e) {
    if (e.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& m : e.terms()) {
        Monomial t = m;
        if (first) {
            first = false;
        } else if (prints_negative(m.coeff)) {
            os << " - ";
            t.coeff = -t.coeff;
        } else {
            os << " + ";
        }
        print_monomial(os, t);
    }
    return os.str();
}

}  // namespace sshg::sym
