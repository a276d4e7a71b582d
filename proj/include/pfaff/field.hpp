#pragma once

#include "pfaff/mpoly.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pfaff {

class FieldElement;

enum class FieldKind { rationals, prime, binary, function };

// One of the supported exact coefficient fields: Q, F_p (p prime <= 97), F_{2^k}
// (k <= 4), or a rational function field F_p(s) / F_p(s,t).
class Field {
public:
    Field() = default; // null field; unusable until assigned

    static Field rationals();
    static Field prime(std::int64_t p);
    static Field binary(int k);
    static Field function_field(std::int64_t p, std::vector<std::string> vars);

    bool null() const { return info_ == nullptr; }
    FieldKind kind() const;
    std::int64_t characteristic() const;
    std::int64_t p() const;     // prime/function fields
    int k() const;              // binary fields
    const std::vector<std::string>& vars() const; // function fields

    bool operator==(const Field& o) const;
    bool operator!=(const Field& o) const { return !(*this == o); }

    std::string describe() const; // human-readable, e.g. "F_2(s,t)"
    std::string token() const;    // machine form, e.g. "Fpt:2:s,t"
    static std::optional<Field> from_token(std::string_view tok);

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement integer(std::int64_t n) const;
    FieldElement from_rational(const mpq_class& q) const; // rationals only
    FieldElement variable(int index) const;  // function fields
    FieldElement generator() const;          // binary fields with k > 1

    // Parses the canonical element grammar; throws parse_error.
    FieldElement parse(std::string_view text) const;

    // Uniformish random element; polynomial_only suppresses denominators and
    // keeps rationals integral.
    FieldElement sample(std::mt19937_64& rng, bool polynomial_only = false) const;

    // Number of elements when finite and small enough to enumerate, else 0.
    std::uint64_t enumerable_size() const;
    std::vector<FieldElement> enumerate() const;

    // Basis of the field over its subfield of squares (characteristic 2 only).
    std::vector<FieldElement> f2_basis() const;

private:
    struct Info {
        FieldKind kind;
        std::int64_t p = 0;
        int k = 0;
        std::vector<std::string> vars;
        std::uint16_t modulus_bits = 0;   // binary: irreducible polynomial bits
        std::int64_t least_nonsquare = 0; // odd prime fields
    };
    std::shared_ptr<const Info> info_;

    explicit Field(Info info);
    const Info& inf() const;
    friend class FieldElement;
};

// A value in a specific Field. Carries its field; mixing fields throws.
class FieldElement {
public:
    FieldElement() = default; // null element; throws on use

    const Field& field() const { return field_; }
    bool null() const { return field_.null(); }

    bool is_zero() const;
    bool is_one() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
    FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement inverse() const; // throws field_error on zero
    FieldElement pow(std::int64_t n) const;

    // Canonical square root when the element is a square: nonnegative over Q,
    // least residue over F_p, the unique root in characteristic 2, and the
    // positively-normalized root over function fields.
    std::optional<FieldElement> sqrt() const;
    std::optional<FieldElement> fourth_root() const; // sqrt of sqrt

    bool is_square() const { return is_zero() || sqrt().has_value(); }

    // Canonical representative of the square class of a nonzero element.
    FieldElement square_class() const;

    // Coordinates over the squares subfield F^2 w.r.t. Field::f2_basis(), i.e.
    // the unique c_b in F^2 with x = sum c_b * b (characteristic 2 only).
    std::vector<FieldElement> f2_coordinates() const;
    // The square roots of those coordinates, handy for F-linear algebra.
    std::vector<FieldElement> f2_coordinate_roots() const;

    // Underlying rational value (rationals only).
    mpq_class rational_value() const;

    std::string str() const; // canonical literal, reparseable by Field::parse

    friend std::ostream& operator<<(std::ostream& os, const FieldElement& x) {
        return os << x.str();
    }

private:
    Field field_;
    std::variant<std::monostate, mpq_class, std::int64_t, std::uint8_t, RatFunc> v_;

    FieldElement(Field f, mpq_class q);
    FieldElement(Field f, std::int64_t r);
    FieldElement(Field f, std::uint8_t b);
    FieldElement(Field f, RatFunc r);

    void require_usable() const;
    void require_same(const FieldElement& o) const;

    friend class Field;
};

} // namespace pfaff
