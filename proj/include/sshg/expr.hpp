#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "sshg/atoms.hpp"
#include "sshg/rational.hpp"

namespace sshg::sym {

// Half-integer exponents of the four radicands that occur in the theory:
// 2, m, sigma_1, sigma_2. Exponents are stored in half-units; the power of
// 2 is normalised into the Gaussian coefficient so that `two` is 0 or 1
// (a bare sqrt(2) at most).
struct HalfPow {
    std::int16_t two = 0;  // 0 or 1 after normalisation
    std::int16_t m = 0;
    std::int16_t s1 = 0;
    std::int16_t s2 = 0;

    bool trivial() const { return two == 0 && m == 0 && s1 == 0 && s2 == 0; }
    friend bool operator==(const HalfPow& a, const HalfPow& b) {
        return a.two == b.two && a.m == b.m && a.s1 == b.s1 && a.s2 == b.s2;
    }
    friend auto operator<=>(const HalfPow& a, const HalfPow& b) = default;
};

// Linear form sum(c_i * field_i) over undifferentiated even fields; the
// exponent of an exponential atom. Kept sorted with nonzero coefficients.
class LinearForm {
  public:
    LinearForm() = default;
    LinearForm(std::initializer_list<std::pair<FieldAtom, Rational>> items);

    void add(FieldAtom a, const Rational& c);
    Rational coefficient(FieldAtom a) const;
    bool empty() const { return items_.empty(); }
    const std::vector<std::pair<FieldAtom, Rational>>& items() const { return items_; }

    LinearForm operator+(const LinearForm& o) const;
    LinearForm operator-() const;
    LinearForm scaled(const Rational& c) const;

    friend bool operator==(const LinearForm& a, const LinearForm& b) { return a.items_ == b.items_; }
    friend bool operator<(const LinearForm& a, const LinearForm& b);

  private:
    std::vector<std::pair<FieldAtom, Rational>> items_;
};

// One canonical monomial:  coeff * halfpow * exp(form) * jets * word.
//  - jets: commuting factors (even fields, any derivative order; bare even
//    fields appear here only in defect kinetic terms).
//  - word: strictly increasing product of odd generators. A repeated
//    generator annihilates the monomial.
struct Monomial {
    Gaussian coeff;
    HalfPow half;
    LinearForm exp;
    std::vector<JetAtom> jets;
    std::vector<JetAtom> word;

    Monomial() : coeff(1) {}
    explicit Monomial(Gaussian c) : coeff(c) {}

    int parity() const { return static_cast<int>(word.size()) & 1; }  // 0 even, 1 odd

    // Key = everything except the Gaussian coefficient.
    friend int cmp_key(const Monomial& a, const Monomial& b);
};

// Canonical Grassmann-graded exponential polynomial. Immutable value type:
// all operations return fresh expressions, nothing is shared or mutated, so
// expressions are safe to use from any number of threads.
class Expr {
  public:
    Expr() = default;

    static Expr zero() { return Expr(); }
    static Expr one();
    static Expr constant(Gaussian c);
    static Expr rational(std::int64_t n, std::int64_t d = 1);
    static Expr imaginary_unit();

    // sqrt(2)^t2 * m^(hm/2) * s1^(h1/2) * s2^(h2/2), exponents in half-units.
    static Expr half_powers(int two_halves, int m_halves, int s1_halves, int s2_halves);

    static Expr jet(JetAtom a);
    static Expr jet(Field n, std::uint8_t region, std::uint8_t dt = 0, std::uint8_t dx = 0);
    static Expr exponential(const LinearForm& form);
    static Expr cosh_of(const LinearForm& form);
    static Expr sinh_of(const LinearForm& form);

    static Expr from_terms(std::vector<Monomial> terms);

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::vector<Monomial>& terms() const { return terms_; }

    // Parity of a homogeneous expression; nullopt if mixed or zero.
    std::optional<int> parity() const;

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    Expr operator-() const;
    friend Expr operator*(const Expr& a, const Expr& b);
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }

    friend bool operator==(const Expr& a, const Expr& b);
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  private:
    friend Expr canonicalize(std::vector<Monomial> raw);
    std::vector<Monomial> terms_;  // sorted by key, unique keys, nonzero coeffs
};

// --- core algebra ---------------------------------------------------------

// Sorts/merges a raw term list into canonical form (idempotent).
Expr canonicalize(std::vector<Monomial> raw);

Expr mul_serial(const Expr& a, const Expr& b);
Expr mul_parallel(const Expr& a, const Expr& b);  // OpenMP over term blocks

Expr scale(const Expr& e, const Gaussian& c);

enum class Side { left, right };

// Graded derivative with respect to an odd generator.
Expr grassmann_derive(const Expr& e, JetAtom gen, Side side);

// d/d(field) acting on the exponential forms and on bare 0-jet factors of
// the same field; derivative jets of the field are independent coordinates
// and are not touched.
Expr boson_derive(const Expr& e, FieldAtom b);

// Polynomial derivative with respect to a single even jet coordinate.
Expr jet_derive(const Expr& e, JetAtom j);

// Derivative with respect to any jet coordinate under the given convention;
// dispatches between jet_derive and grassmann_derive.
Expr derive(const Expr& e, JetAtom j, Side side);

// Total derivative (jet prolongation).
Expr total_derivative(const Expr& e, Dir d);
Expr total_derivative(const Expr& e, Dir d, int times);

// --- structural maps ------------------------------------------------------

struct MappedAtom {
    int sign = 1;  // +1 or -1
    JetAtom atom;
};

// Applies an atom relabelling to every jet, word letter and exponential
// entry, then renormalises (Koszul signs from re-sorting words included).
// `swap_sigmas` exchanges the sigma_1/sigma_2 half-power slots.
Expr map_atoms(const Expr& e, const std::function<MappedAtom(JetAtom)>& fn,
               bool swap_sigmas = false);

// exp(X) -> exp(-X) on every term (parity flip of all even fields).
Expr flip_even_signs(const Expr& e);

// --- numeric evaluation ---------------------------------------------------

struct EvalContext {
    double m = 1.0;
    double s1 = 1.0;
    double s2 = 1.0;
    // Value of any jet coordinate appearing in the expression (including
    // bare even fields). Odd generators are not evaluable.
    std::function<double(JetAtom)> jet_value;
};

// Evaluates an even, fermion-free expression to a real number. Throws if
// the expression has odd content or a nonzero imaginary part.
double eval_real(const Expr& e, const EvalContext& ctx);

}  // namespace sshg::sym
