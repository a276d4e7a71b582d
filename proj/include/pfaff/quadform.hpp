#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfaff/field.hpp"
#include "pfaff/linalg.hpp"

namespace pfaff {

enum class Ternary { yes, no, unknown };

enum class Singularity { nonsingular, totally_singular, unknown };

// Diagonal quadratic form <a1,...,an>_q over an exact field.
struct DiagForm {
    Field field;
    std::vector<FieldElement> coeffs;
    Singularity singularity = Singularity::unknown;

    static DiagForm make(const Field& F, std::vector<FieldElement> coeffs);
    std::size_t dim() const { return coeffs.size(); }
    FieldElement evaluate(const Vec& x) const;
    FieldElement polar(const Vec& x, const Vec& y) const;
    DiagForm scaled(const FieldElement& c) const;
    DiagForm orthogonal_sum(const DiagForm& o) const;
    std::string str() const;
};

enum class IsotropyStatus { isotropic, anisotropic, unknown };

struct IsotropyVerdict {
    IsotropyStatus status = IsotropyStatus::unknown;
    std::optional<Vec> witness; // nonzero vector with Q = 0 when available
};

// Decides whether the form has a nontrivial zero. Decisive over finite fields,
// the rationals and every characteristic-2 field in the tower; over other
// function fields a bounded seeded search may leave the status unknown.
IsotropyVerdict isotropy(const DiagForm& f, std::uint64_t seed = 1);

// Decides isometry of two diagonal forms over the same field. Decisive except
// over characteristic-not-2 function fields, where a coefficient matching up to
// squares is attempted before giving up.
Ternary isometric(const DiagForm& f, const DiagForm& g);

struct RepresentationVerdict {
    Ternary verdict = Ternary::unknown;
    std::optional<Vec> witness; // vector with Q(witness) = c when verdict is yes
};

// Does the form represent the value c nontrivially?
RepresentationVerdict represents(const DiagForm& f, const FieldElement& c, std::uint64_t seed = 1);

// Bilinear Pfister form <<a1>> or <<a1,a2>>, diagonalized as <1,a1> or <1,a1,a2,a1a2>.
struct BilinearPfisterForm {
    Field field;
    std::vector<FieldElement> slots;

    static BilinearPfisterForm make(const Field& F, std::vector<FieldElement> slots);
    std::vector<FieldElement> pure_part() const;     // slots and their product
    std::vector<FieldElement> full_diagonal() const; // 1, slots, product
    std::string str() const;
};

// Isotropy of the underlying diagonal form; characteristic 2 only, decisive.
bool pfister_isotropic(const BilinearPfisterForm& f);

// Isometry of bilinear Pfister forms over a characteristic-2 field, decided by
// comparing the squares-spans of the pure parts; decisive.
bool pfister_isometric(const BilinearPfisterForm& f, const BilinearPfisterForm& g);

// Rewrites an isotropic <<a,b>> with ab != 0 into the isometric <<a, b + l^2/a>>.
BilinearPfisterForm pfister_replace(const BilinearPfisterForm& f, const FieldElement& lambda);

// Hilbert symbol of two nonzero rationals at a place; place 0 is the real one.
int hilbert_symbol(const FieldElement& a, const FieldElement& b, std::int64_t place);

// Product over i < j of hilbert symbols of the coefficients at a place.
int hasse_invariant(const DiagForm& f, std::int64_t place);

// Counts of positive and negative coefficients of a rational form.
std::pair<int, int> signature(const DiagForm& f);

// The real place and every prime where any listed rational can be a non-unit.
std::vector<std::int64_t> relevant_places(const std::vector<FieldElement>& coeffs);

// Matrix whose columns are the squares-coordinate roots of the coefficients.
Mat f2_root_matrix(const Field& F, const std::vector<FieldElement>& coeffs);

// Equality of the F^2-spans of two coefficient lists (characteristic 2).
bool f2_spans_equal(const Field& F, const std::vector<FieldElement>& a,
                    const std::vector<FieldElement>& b);

// Membership of c in the F^2-span of the coefficients, with combining roots.
std::optional<Vec> f2_span_solve(const Field& F, const std::vector<FieldElement>& coeffs,
                                 const FieldElement& c);

std::string ternary_str(Ternary t);

} // namespace pfaff
