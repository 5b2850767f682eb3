#include "sshg/expr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sshg::sym {

// --- LinearForm ------------------------------------------------------------

LinearForm::LinearForm(std::initializer_list<std::pair<FieldAtom, Rational>> items) {
    for (const auto& [a, c] : items) add(a, c);
}

void LinearForm::add(FieldAtom a, const Rational& c) {
    if (!is_even_field(a.name)) throw std::invalid_argument("odd field inside exponential form");
    if (c.is_zero()) return;
    auto it = std::lower_bound(items_.begin(), items_.end(), a,
                               [](const auto& p, FieldAtom key) { return p.first < key; });
    if (it != items_.end() && it->first == a) {
        it->second += c;
        if (it->second.is_zero()) items_.erase(it);
    } else {
        items_.insert(it, {a, c});
    }
}

Rational LinearForm::coefficient(FieldAtom a) const {
    for (const auto& [atom, c] : items_)
        if (atom == a) return c;
    return Rational(0);
}

LinearForm LinearForm::operator+(const LinearForm& o) const {
    LinearForm r = *this;
    for (const auto& [a, c] : o.items_) r.add(a, c);
    return r;
}

LinearForm LinearForm::operator-() const { return scaled(Rational(-1)); }

LinearForm LinearForm::scaled(const Rational& c) const {
    LinearForm r;
    if (c.is_zero()) return r;
    r.items_ = items_;
    for (auto& [a, coef] : r.items_) coef *= c;
    return r;
}

bool operator<(const LinearForm& a, const LinearForm& b) {
    const auto &x = a.items_, &y = b.items_;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i].first != y[i].first) return x[i].first < y[i].first;
        if (x[i].second != y[i].second) {
            const Rational &p = x[i].second, &q = y[i].second;
            return p < q;
        }
    }
    return x.size() < y.size();
}

// --- Monomial key ----------------------------------------------------------

namespace {

int cmp_jets(const std::vector<JetAtom>& a, const std::vector<JetAtom>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

int cmp_forms(const LinearForm& a, const LinearForm& b) {
    if (a == b) return 0;
    return a < b ? -1 : 1;
}

int cmp_half(const HalfPow& a, const HalfPow& b) {
    if (a == b) return 0;
    return a < b ? -1 : 1;
}

}  // namespace

int cmp_key(const Monomial& a, const Monomial& b) {
    if (int c = cmp_jets(a.word, b.word)) return c;
    if (int c = cmp_jets(a.jets, b.jets)) return c;
    if (int c = cmp_forms(a.exp, b.exp)) return c;
    return cmp_half(a.half, b.half);
}

// --- canonicalization ------------------------------------------------------

namespace {

// Folds integer powers of 2 out of the half-power slot into the Gaussian.
void normalize_two(Monomial& m) {
    int h = m.half.two;
    int q = (h >= 0) ? h / 2 : -((-h + 1) / 2);  // floor(h/2)
    int r = h - 2 * q;                           // 0 or 1
    if (q > 0)
        for (int i = 0; i < q; ++i) m.coeff *= Gaussian(2);
    else
        for (int i = 0; i < -q; ++i) m.coeff *= Gaussian(Rational(1, 2));
    m.half.two = static_cast<std::int16_t>(r);
}

// Sorts a word in place, tracking the permutation sign; returns false if a
// generator repeats (nilpotency).
bool sort_word(std::vector<JetAtom>& w, int& sign) {
    // insertion sort counting transpositions; words are short
    for (std::size_t i = 1; i < w.size(); ++i) {
        JetAtom key = w[i];
        std::size_t j = i;
        while (j > 0 && key < w[j - 1]) {
            w[j] = w[j - 1];
            --j;
            sign = -sign;
        }
        w[j] = key;
    }
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == w[i - 1]) return false;
    return true;
}

}  // namespace

Expr canonicalize(std::vector<Monomial> raw) {
    std::vector<Monomial> out;
    out.reserve(raw.size());
    for (auto& m : raw) {
        if (m.coeff.is_zero()) continue;
        normalize_two(m);
        std::sort(m.jets.begin(), m.jets.end());
        int sign = 1;
        if (!sort_word(m.word, sign)) continue;
        if (sign < 0) m.coeff = -m.coeff;
        out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        return cmp_key(a, b) < 0;
    });
    std::vector<Monomial> merged;
    merged.reserve(out.size());
    for (auto& m : out) {
        if (!merged.empty() && cmp_key(merged.back(), m) == 0) {
            merged.back().coeff += m.coeff;
            if (merged.back().coeff.is_zero()) merged.pop_back();
        } else {
            merged.push_back(std::move(m));
        }
    }
    Expr e;
    e.terms_ = std::move(merged);
    return e;
}

// --- constructors ----------------------------------------------------------

Expr Expr::one() { return constant(Gaussian(1)); }

Expr Expr::constant(Gaussian c) {
    if (c.is_zero()) return Expr();
    Monomial m(c);
    return canonicalize({m});
}

Expr Expr::rational(std::int64_t n, std::int64_t d) { return constant(Gaussian(Rational(n, d))); }

Expr Expr::imaginary_unit() { return constant(Gaussian::I()); }

Expr Expr::half_powers(int two_halves, int m_halves, int s1_halves, int s2_halves) {
    Monomial m(Gaussian(1));
    m.half.two = static_cast<std::int16_t>(two_halves);
    m.half.m = static_cast<std::int16_t>(m_halves);
    m.half.s1 = static_cast<std::int16_t>(s1_halves);
    m.half.s2 = static_cast<std::int16_t>(s2_halves);
    return canonicalize({m});
}

Expr Expr::jet(JetAtom a) {
    Monomial m(Gaussian(1));
    if (a.even())
        m.jets.push_back(a);
    else
        m.word.push_back(a);
    return canonicalize({m});
}

Expr Expr::jet(Field n, std::uint8_t region, std::uint8_t dt, std::uint8_t dx) {
    return jet(JetAtom(n, region, dt, dx));
}

Expr Expr::exponential(const LinearForm& form) {
    Monomial m(Gaussian(1));
    m.exp = form;
    return canonicalize({m});
}

Expr Expr::cosh_of(const LinearForm& form) {
    Monomial a(Gaussian(Rational(1, 2)));
    a.exp = form;
    Monomial b(Gaussian(Rational(1, 2)));
    b.exp = -form;
    return canonicalize({a, b});
}

Expr Expr::sinh_of(const LinearForm& form) {
    Monomial a(Gaussian(Rational(1, 2)));
    a.exp = form;
    Monomial b(Gaussian(Rational(-1, 2)));
    b.exp = -form;
    return canonicalize({a, b});
}

Expr Expr::from_terms(std::vector<Monomial> terms) { return canonicalize(std::move(terms)); }

std::optional<int> Expr::parity() const {
    if (terms_.empty()) return std::nullopt;
    int p = terms_.front().parity();
    for (const auto& m : terms_)
        if (m.parity() != p) return std::nullopt;
    return p;
}

// --- addition / multiplication ---------------------------------------------

Expr operator+(const Expr& a, const Expr& b) {
    // merge of two canonical term lists
    std::vector<Monomial> out;
    out.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
        int c = cmp_key(a.terms_[i], b.terms_[j]);
        if (c < 0) {
            out.push_back(a.terms_[i++]);
        } else if (c > 0) {
            out.push_back(b.terms_[j++]);
        } else {
            Monomial m = a.terms_[i++];
            m.coeff += b.terms_[j++].coeff;
            if (!m.coeff.is_zero()) out.push_back(std::move(m));
        }
    }
    for (; i < a.terms_.size(); ++i) out.push_back(a.terms_[i]);
    for (; j < b.terms_.size(); ++j) out.push_back(b.terms_[j]);
    Expr e;
    e.terms_ = std::move(out);
    return e;
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr Expr::operator-() const {
    Expr e = *this;
    for (auto& m : e.terms_) m.coeff = -m.coeff;
    return e;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (cmp_key(a.terms_[i], b.terms_[i]) != 0) return false;
        if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
    }
    return true;
}

namespace {

// Merges two canonical words; accumulates the Koszul sign of interleaving;
// returns false on a repeated generator.
bool merge_words(const std::vector<JetAtom>& a, const std::vector<JetAtom>& b,
                 std::vector<JetAtom>& out, int& sign) {
    out.clear();
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] moves left past (a.size()-i) generators of a
            if ((a.size() - i) & 1) sign = -sign;
            out.push_back(b[j++]);
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back(b[j]);
    return true;
}

void merge_jets(const std::vector<JetAtom>& a, const std::vector<JetAtom>& b,
                std::vector<JetAtom>& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
}

HalfPow add_half(const HalfPow& a, const HalfPow& b) {
    HalfPow h;
    h.two = static_cast<std::int16_t>(a.two + b.two);
    h.m = static_cast<std::int16_t>(a.m + b.m);
    h.s1 = static_cast<std::int16_t>(a.s1 + b.s1);
    h.s2 = static_cast<std::int16_t>(a.s2 + b.s2);
    return h;
}

bool mul_mono(const Monomial& a, const Monomial& b, Monomial& out) {
    int sign = 1;
    if (!merge_words(a.word, b.word, out.word, sign)) return false;
    out.coeff = a.coeff * b.coeff;
    if (sign < 0) out.coeff = -out.coeff;
    out.half = add_half(a.half, b.half);
    out.exp = a.exp + b.exp;
    merge_jets(a.jets, b.jets, out.jets);
    return true;
}

constexpr std::size_t kParallelProductThreshold = 4096;

}  // namespace

Expr mul_serial(const Expr& a, const Expr& b) {
    std::vector<Monomial> out;
    out.reserve(a.terms().size() * b.terms().size());
    Monomial prod;
    for (const auto& ma : a.terms())
        for (const auto& mb : b.terms()) {
            if (mul_mono(ma, mb, prod)) out.push_back(prod);
        }
    return canonicalize(std::move(out));
}

Expr mul_parallel(const Expr& a, const Expr& b) {
#ifdef _OPENMP
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    const int nthreads = omp_get_max_threads();
    if (nthreads <= 1 || ta.size() * tb.size() < kParallelProductThreshold)
        return mul_serial(a, b);

    std::vector<Expr> partial(static_cast<std::size_t>(nthreads));
#pragma omp parallel num_threads(nthreads)
    {
        const int tid = omp_get_thread_num();
        const int nt = omp_get_num_threads();
        std::vector<Monomial> out;
        Monomial prod;
        for (std::size_t i = static_cast<std::size_t>(tid); i < ta.size();
             i += static_cast<std::size_t>(nt))
            for (const auto& mb : tb) {
                if (mul_mono(ta[i], mb, prod)) out.push_back(prod);
            }
        partial[static_cast<std::size_t>(tid)] = canonicalize(std::move(out));
    }
    // fixed merge order; exact arithmetic makes the result independent of it
    Expr acc;
    for (const auto& p : partial) acc += p;
    return acc;
#else
    return mul_serial(a, b);
#endif
}

Expr operator*(const Expr& a, const Expr& b) { return mul_parallel(a, b); }

Expr scale(const Expr& e, const Gaussian& c) {
    if (c.is_zero()) return Expr::zero();
    Expr r = e;
    std::vector<Monomial> terms(r.terms().begin(), r.terms().end());
    for (auto& m : terms) m.coeff *= c;
    return canonicalize(std::move(terms));
}

// --- derivatives ------------------------------------------------------------

Expr grassmann_derive(const Expr& e, JetAtom gen, Side side) {
    if (gen.even()) throw std::invalid_argument("grassmann_derive needs an odd generator");
    std::vector<Monomial> out;
    for (const auto& m : e.terms()) {
        auto it = std::find(m.word.begin(), m.word.end(), gen);
        if (it == m.word.end()) continue;
        auto pos = static_cast<std::size_t>(it - m.word.begin());
        std::size_t hops = (side == Side::left) ? pos : m.word.size() - 1 - pos;
        Monomial d = m;
        d.word.erase(d.word.begin() + static_cast<std::ptrdiff_t>(pos));
        if (hops & 1) d.coeff = -d.coeff;
        out.push_back(std::move(d));
    }
    return canonicalize(std::move(out));
}

Expr boson_derive(const Expr& e, FieldAtom b) {
    if (!b.even()) throw std::invalid_argument("boson_derive needs an even field");
    const JetAtom bare(b, 0, 0);
    std::vector<Monomial> out;
    for (const auto& m : e.terms()) {
        Rational c = m.exp.coefficient(b);
        if (!c.is_zero()) {
            Monomial d = m;
            d.coeff = d.coeff * Gaussian(c);
            out.push_back(std::move(d));
        }
        // bare 0-jet polynomial factors of the same field
        auto cnt = std::count(m.jets.begin(), m.jets.end(), bare);
        if (cnt > 0) {
            Monomial d = m;
            d.coeff = d.coeff * Gaussian(static_cast<std::int64_t>(cnt));
            auto it = std::find(d.jets.begin(), d.jets.end(), bare);
            d.jets.erase(it);
            out.push_back(std::move(d));
        }
    }
    return canonicalize(std::move(out));
}

Expr jet_derive(const Expr& e, JetAtom j) {
    if (!j.even()) throw std::invalid_argument("jet_derive needs an even jet");
    if (j.order() == 0) return boson_derive(e, j.base);
    std::vector<Monomial> out;
    for (const auto& m : e.terms()) {
        auto cnt = std::count(m.jets.begin(), m.jets.end(), j);
        if (cnt == 0) continue;
        Monomial d = m;
        d.coeff = d.coeff * Gaussian(static_cast<std::int64_t>(cnt));
        auto it = std::find(d.jets.begin(), d.jets.end(), j);
        d.jets.erase(it);
        out.push_back(std::move(d));
    }
    return canonicalize(std::move(out));
}

Expr derive(const Expr& e, JetAtom j, Side side) {
    return j.even() ? jet_derive(e, j) : grassmann_derive(e, j, side);
}

namespace {

JetAtom raise(JetAtom a, Dir d) {
    if (d == Dir::t)
        ++a.dt;
    else
        ++a.dx;
    return a;
}

}  // namespace

Expr total_derivative(const Expr& e, Dir d) {
    std::vector<Monomial> out;
    for (const auto& m : e.terms()) {
        // chain rule through the exponential form
        for (const auto& [atom, c] : m.exp.items()) {
            Monomial t = m;
            t.coeff = t.coeff * Gaussian(c);
            t.jets.push_back(raise(JetAtom(atom, 0, 0), d));
            out.push_back(std::move(t));
        }
        // Leibniz over commuting jets
        for (std::size_t i = 0; i < m.jets.size(); ++i) {
            Monomial t = m;
            t.jets[i] = raise(t.jets[i], d);
            out.push_back(std::move(t));
        }
        // Leibniz over the word; the total derivative is an even derivation,
        // so no Koszul signs beyond re-sorting (done by canonicalize)
        for (std::size_t i = 0; i < m.word.size(); ++i) {
            Monomial t = m;
            t.word[i] = raise(t.word[i], d);
            out.push_back(std::move(t));
        }
    }
    return canonicalize(std::move(out));
}

Expr total_derivative(const Expr& e, Dir d, int times) {
    Expr r = e;
    for (int i = 0; i < times; ++i) r = total_derivative(r, d);
    return r;
}

// --- structural maps --------------------------------------------------------

Expr map_atoms(const Expr& e, const std::function<MappedAtom(JetAtom)>& fn, bool swap_sigmas) {
    std::vector<Monomial> out;
    out.reserve(e.size());
    for (const auto& m : e.terms()) {
        Monomial t(m.coeff);
        t.half = m.half;
        if (swap_sigmas) std::swap(t.half.s1, t.half.s2);
        bool dead = false;
        for (const auto& [atom, c] : m.exp.items()) {
            MappedAtom ma = fn(JetAtom(atom, 0, 0));
            if (ma.atom.order() != 0 || !ma.atom.even())
                throw std::logic_error("exponential entry must map to a bare even field");
            t.exp.add(ma.atom.base, ma.sign < 0 ? -c : c);
        }
        for (const auto& j : m.jets) {
            MappedAtom ma = fn(j);
            if (ma.sign < 0) t.coeff = -t.coeff;
            if (!ma.atom.even()) {
                dead = true;  // even atom mapped to odd: unsupported
                break;
            }
            t.jets.push_back(ma.atom);
        }
        if (dead) throw std::logic_error("even jet mapped to odd generator");
        for (const auto& w : m.word) {
            MappedAtom ma = fn(w);
            if (ma.sign < 0) t.coeff = -t.coeff;
            if (ma.atom.even()) throw std::logic_error("odd generator mapped to even jet");
            t.word.push_back(ma.atom);
        }
        out.push_back(std::move(t));
    }
    return canonicalize(std::move(out));
}

Expr flip_even_signs(const Expr& e) {
    std::vector<Monomial> out;
    out.reserve(e.size());
    for (const auto& m : e.terms()) {
        Monomial t = m;
        t.exp = -m.exp;
        out.push_back(std::move(t));
    }
    return canonicalize(std::move(out));
}

// --- numeric evaluation -----------------------------------------------------

double eval_real(const Expr& e, const EvalContext& ctx) {
    double total = 0.0;
    for (const auto& m : e.terms()) {
        if (!m.word.empty()) throw std::domain_error("cannot evaluate odd generators numerically");
        if (!m.coeff.is_real()) throw std::domain_error("imaginary coefficient in numeric evaluation");
        double v = m.coeff.re.to_double();
        v *= std::pow(2.0, 0.5 * m.half.two);
        v *= std::pow(ctx.m, 0.5 * m.half.m);
        v *= std::pow(ctx.s1, 0.5 * m.half.s1);
        v *= std::pow(ctx.s2, 0.5 * m.half.s2);
        double arg = 0.0;
        for (const auto& [atom, c] : m.exp.items())
            arg += c.to_double() * ctx.jet_value(JetAtom(atom, 0, 0));
        v *= std::exp(arg);
        for (const auto& j : m.jets) v *= ctx.jet_value(j);
        total += v;
    }
    return total;
}

}  // namespace sshg::sym
