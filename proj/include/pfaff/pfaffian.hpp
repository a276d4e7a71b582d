// Pfaffian form, pfaffian adjoint, and derived invariants of orthogonal
// involutions on biquaternion algebras.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfaff/csalg.hpp"
#include "pfaff/quadform.hpp"

namespace pfaff {

// Pfaffian data of an orthogonal involution: six invertible alternating basis
// elements, the values and polar form of the quadratic map q with
// q(x)^2 = d * nrd(x), and the matrix of the adjoint p with
// x * p(x) = p(x) * x = q(x) * 1 and p^2 = d.  The global sign of q is
// anchored at the first basis element through the canonical square root;
// every other value is forced by linearity.
struct PfaffianPackage {
    StructureAlgebra algebra;
    Involution sigma;
    FieldElement d;            // discriminant representative; q^2 = d * nrd
    bool decomposable = false; // whether d is a square

    std::vector<Vec> alt_basis;         // invertible alternating elements
    std::vector<FieldElement> q_values; // q on the basis
    Mat polar_matrix;                   // polar form on the basis
    Mat p_matrix;                       // adjoint in alternating coordinates
    std::size_t anchor_index = 0;
    FieldElement anchor_root; // the chosen value of q at the anchor element

    bool split_done = false;   // set by split_plus_minus
    std::vector<Vec> alt_plus; // orthogonal triple (u, v, uv)
    std::vector<Vec> alt_minus;
    std::vector<FieldElement> q_plus_diag, q_minus_diag;

    std::vector<Vec> generator_pair; // cached by pfister_invariant

    const Field& field() const { return algebra.field; }
    // Coordinates over alt_basis; throws when x is outside the span.
    Vec alt_coordinates(const Vec& x) const;
    FieldElement q(const Vec& x) const;
    FieldElement polar(const Vec& x, const Vec& y) const;
    Vec p(const Vec& x) const;

    DiagForm q_plus_form() const;  // requires split_done
    DiagForm q_minus_form() const; // requires split_done
    std::vector<Vec> quaternion_plus_basis() const;  // 1, u, v, uv
    std::vector<Vec> quaternion_minus_basis() const; // 1, u, v, uv
};

// Builds the package.  d must be a nonzero multiple of the discriminant of
// sigma by a square; the canonical square root of d * nrd at the anchor fixes
// the sign.  Values on the rest of the basis come from pointwise roots in
// characteristic 2 and from quartic norm expansions along the anchor
// otherwise (over F_3 the expansions run in F_3(T) and come back down).
PfaffianPackage compute_pfaffian(const StructureAlgebra& A, const Involution& sigma,
                                 const FieldElement& d, std::uint64_t seed = 0);
// Same, choosing d as the discriminant square-class representative, 1 when
// the class is trivial.
PfaffianPackage compute_pfaffian(const StructureAlgebra& A, const Involution& sigma,
                                 std::uint64_t seed = 0);

// Splits the alternating space into the +1 and -1 spaces of p (the same space
// twice in characteristic 2), builds an orthogonal triple (u, v, uv) in each,
// and diagonalizes q there.  Requires d = 1.  Idempotent.
void split_plus_minus(PfaffianPackage& pkg, std::uint64_t seed = 0);

// Bilinear form <<u^2, v^2>> built from a pair (u, v) of commuting invertible
// alternating elements of the plus space with uv again in the plus space.
// Characteristic 2 with d = 1 only; caches the pair in the package.
BilinearPfisterForm pfister_invariant(PfaffianPackage& pkg, std::uint64_t seed = 0);

// Commuting invertible alternating plus-space elements (u, v) with the
// prescribed squares and uv in the plus space, when the direct search finds
// them; characteristic 2 with d = 1 only.
std::optional<std::pair<Vec, Vec>> alternating_generator_pair(PfaffianPackage& pkg,
                                                              const FieldElement& alpha,
                                                              const FieldElement& beta);

// Structure constants of the unital subalgebra spanned by the given
// independent elements, the first of which must be the unit; entry (i, j)
// holds the coordinates of basis[i] * basis[j] over the given basis.
std::vector<std::vector<Vec>> subalgebra_table(const StructureAlgebra& A,
                                               const std::vector<Vec>& basis);

struct MetabolicCertificate {
    Ternary verdict = Ternary::unknown;
    // metabolic / a quaternion part splits / represents 1 or -1 / isotropic.
    std::array<Ternary, 4> criteria{Ternary::unknown, Ternary::unknown, Ternary::unknown,
                                    Ternary::unknown};
    std::optional<Vec> unit_witness;         // alternating u with u^2 = 1
    std::optional<Vec> idempotent_witness;   // e with sigma(e) = 1 - e, char != 2
    std::optional<Vec> isotropy_witness;     // nonzero x in a split space, q(x) = 0
    std::optional<Vec> zero_divisor_witness; // nonzero x with x * sigma(x) = 0
    std::string evidence;
};

// Decides metabolicity through the equivalent split / representation /
// isotropy criteria, which must agree; a nontrivial discriminant decides
// immediately.  Witnesses are verified before they are returned.  Over
// fields with at most nine elements an exhaustive unit scan cross-checks
// the verdict unless exhaustive_scan is false.
MetabolicCertificate is_metabolic(PfaffianPackage& pkg, bool exhaustive_scan = true);

struct CompareResult {
    Ternary verdict = Ternary::unknown;
    std::string evidence;
};

// Decides (A, sigma) ~= (A', sigma') for packages with d = 1 over one field:
// algebra isomorphism evidence combined with the restricted-form comparison
// (invariant bilinear forms in characteristic 2).
CompareResult compare_involutions(PfaffianPackage& a, PfaffianPackage& b,
                                  std::uint64_t seed = 0);

// Is (A, sigma) isomorphic to the 4x4 matrix algebra with the transpose?
// Throws when an isometry subtest is inconclusive.
bool transpose_type_test(PfaffianPackage& pkg);

// Ramified places of a rational algebra, from its symbol factor metadata or
// split matrix model; empty optional when neither certifies the class.
std::optional<std::vector<std::int64_t>> rational_ramification(const StructureAlgebra& A);

} // namespace pfaff
