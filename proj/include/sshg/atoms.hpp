#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sshg::sym {

// Field names of the N=2 super sinh-Gordon theory. phi/varphi are the two
// bosons, psi/psibar/chi/chibar the bulk fermions, f/g the auxiliary
// fermions bound to a defect. The enum order doubles as the global
// generator order (psi < psibar < chi < chibar < f < g), which fixes the
// canonical ordering of Grassmann words.
enum class Field : std::uint8_t {
    phi = 0,
    varphi = 1,
    psi = 2,
    psibar = 3,
    chi = 4,
    chibar = 5,
    f = 6,
    g = 7,
};

inline bool is_even_field(Field f) { return f == Field::phi || f == Field::varphi; }
inline bool is_odd_field(Field f) { return !is_even_field(f); }

inline const char* field_name(Field f) {
    switch (f) {
        case Field::phi: return "phi";
        case Field::varphi: return "varphi";
        case Field::psi: return "psi";
        case Field::psibar: return "psibar";
        case Field::chi: return "chi";
        case Field::chibar: return "chibar";
        case Field::f: return "f";
        case Field::g: return "g";
    }
    return "?";
}

// A field symbol with its region tag. Regions 1 and 2 are the two bulk
// half-lines, region 0 the middle/defect-bound fields (also used as the
// tag for single-theory bulk checks). The auxiliary fermions f, g exist
// only with tags 1, 2.
struct FieldAtom {
    Field name = Field::phi;
    std::uint8_t region = 0;

    FieldAtom() = default;
    FieldAtom(Field n, std::uint8_t r) : name(n), region(r) {
        if (r > 2) throw std::invalid_argument("field region must be 0, 1 or 2");
        if ((n == Field::f || n == Field::g) && r == 0)
            throw std::invalid_argument("auxiliary fermions carry region 1 or 2");
    }

    bool even() const { return is_even_field(name); }

    std::uint16_t key() const {
        return static_cast<std::uint16_t>((static_cast<unsigned>(name) << 8) | region);
    }
    friend bool operator==(const FieldAtom& a, const FieldAtom& b) { return a.key() == b.key(); }
    friend bool operator!=(const FieldAtom& a, const FieldAtom& b) { return !(a == b); }
    friend bool operator<(const FieldAtom& a, const FieldAtom& b) { return a.key() < b.key(); }

    std::string str() const { return std::string(field_name(name)) + "[" + std::to_string(region) + "]"; }
};

// A jet coordinate: field plus derivative multi-index. The two derivative
// slots are (d/dt, d/dx) everywhere except the Backlund checks, which reuse
// the same machinery with the slots read as the light-cone pair (d+, d-).
struct JetAtom {
    FieldAtom base;
    std::uint8_t dt = 0;
    std::uint8_t dx = 0;

    JetAtom() = default;
    JetAtom(FieldAtom b, std::uint8_t t, std::uint8_t x) : base(b), dt(t), dx(x) {}
    JetAtom(Field n, std::uint8_t r, std::uint8_t t = 0, std::uint8_t x = 0)
        : base(n, r), dt(t), dx(x) {}

    bool even() const { return base.even(); }
    int order() const { return dt + dx; }

    // Total order (name, region, dt, dx); a single integer compare.
    std::uint32_t key() const {
        return (static_cast<std::uint32_t>(base.key()) << 16) |
               (static_cast<std::uint32_t>(dt) << 8) | dx;
    }
    friend bool operator==(const JetAtom& a, const JetAtom& b) { return a.key() == b.key(); }
    friend bool operator!=(const JetAtom& a, const JetAtom& b) { return !(a == b); }
    friend bool operator<(const JetAtom& a, const JetAtom& b) { return a.key() < b.key(); }
};

enum class Dir { t, x };

}  // namespace sshg::sym
