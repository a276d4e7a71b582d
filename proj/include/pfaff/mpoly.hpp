#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pfaff {

struct SquareDecomposition;

// Sparse polynomial in at most two variables over a prime field F_p (p <= 97).
// Terms are kept sorted in descending lexicographic order on (e0, e1) with all
// coefficients reduced to [1, p).
class MPoly {
public:
    struct Term {
        std::array<int, 2> e; // exponents of the two variables
        std::int64_t c;       // coefficient in [1, p)
    };

    explicit MPoly(std::int64_t p);
    static MPoly constant(std::int64_t p, std::int64_t c);
    static MPoly variable(std::int64_t p, int index); // index 0 or 1

    std::int64_t modulus() const { return p_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::int64_t constant_value() const; // requires is_constant()

    int degree(int var) const;   // -1 for the zero polynomial
    int total_degree() const;    // -1 for the zero polynomial

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly scaled(std::int64_t c) const;
    MPoly pow(int n) const;
    bool operator==(const MPoly& o) const;
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    // Exact division; nullopt when the divisor does not divide exactly.
    std::optional<MPoly> divide_exact(const MPoly& d) const;

    MPoly derivative(int var) const;

    // Coefficient of the highest (e0, e1) term.
    std::int64_t leading_coefficient() const; // requires nonzero
    MPoly monic() const;                      // requires nonzero

    // gcd of two polynomials, normalized monic; gcd(0, 0) = 0.
    static MPoly gcd(const MPoly& a, const MPoly& b);

    // For f with every exponent divisible by p and every coefficient a p-th power
    // (automatic over F_p), the unique h with h^p = f.
    MPoly pth_root() const;

    // f = c * s * r^2 with s, r monic and s squarefree; c a constant in [1, p).
    SquareDecomposition decompose_square() const; // requires nonzero

    std::int64_t evaluate(std::int64_t x0, std::int64_t x1) const;

    std::string str(const std::vector<std::string>& names) const;

private:
    std::int64_t p_;
    std::vector<Term> terms_;

    void normalize();
    static bool term_less(const Term& a, const Term& b);
};

// Result of MPoly::decompose_square: f = c * s * r^2, s squarefree.
struct SquareDecomposition {
    std::int64_t c;
    MPoly s;
    MPoly r;
};

// Fraction num/den of MPoly with den monic, gcd(num, den) = 1, den nonzero.
struct RatFunc {
    MPoly num;
    MPoly den;

    static RatFunc make(MPoly n, MPoly d); // reduces and normalizes

    bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }
};

} // namespace pfaff
