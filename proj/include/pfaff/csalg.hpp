// Quaternion and biquaternion algebras with involution, by structure constants.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfaff/field.hpp"
#include "pfaff/linalg.hpp"
#include "pfaff/poly.hpp"

namespace pfaff {

// Associative unital algebra on a fixed basis with e_0 = 1; elements are
// coordinate vectors.  When the algebra is built inside a matrix algebra the
// basis images are kept, giving a cheap reduced characteristic polynomial.
struct StructureAlgebra {
    Field field;
    std::size_t dimension = 0;
    std::vector<std::vector<Vec>> table; // table[i][j] = coordinates of e_i * e_j
    std::vector<std::string> basis_names;
    std::string label;
    std::vector<Mat> split_matrices; // empty when no matrix model is recorded
    // Symbol slots of the quaternion factors the algebra was built from, when
    // known; matrix factors contribute nothing.  Used for Brauer class checks.
    std::vector<std::pair<FieldElement, FieldElement>> symbol_factors;

    // Validates unit position, associativity on basis triples, and the matrix
    // model when present.
    static StructureAlgebra make(const Field& F, std::vector<std::vector<Vec>> table,
                                 std::vector<std::string> basis_names, std::string label,
                                 std::vector<Mat> split_matrices = {});

    std::size_t degree() const; // 2 for dimension 4, 4 for dimension 16
    Vec zero_element() const;
    Vec unit() const;
    Vec basis_element(std::size_t i) const;
    Vec scalar(const FieldElement& c) const;
    Vec mul(const Vec& x, const Vec& y) const;
    Mat left_rep(const Vec& x) const;
    Mat right_rep(const Vec& x) const;
    bool has_split_model() const { return !split_matrices.empty(); }
    Mat split_image(const Vec& x) const;
    // The scalar c with x = c*1, when x is in the base field.
    std::optional<FieldElement> central_scalar(const Vec& x) const;
    std::string element_str(const Vec& x) const;
    Vec parse_element(std::string_view text) const;
};

enum class InvolutionType { orthogonal, symplectic };

std::string involution_type_str(InvolutionType t);

// F-linear antiautomorphism of order 2, stored by its action on the basis
// (column j holds the image of e_j).
struct Involution {
    Mat action;
    std::string label;
    InvolutionType type = InvolutionType::orthogonal;

    // Validates the order, the antiautomorphism law on basis pairs, and
    // computes the type from the symmetric / alternating element counts.
    static Involution make(const StructureAlgebra& A, Mat action, std::string label);
    Vec apply(const Vec& x) const { return mat_vec(action, x); }
};

// Quaternion algebra (a,b) in characteristic not 2 (i^2 = a, j^2 = b,
// ji = -ij) or [a,b) in characteristic 2 (u^2 + u = a, v^2 = b, vu = (u+1)v),
// paired with its conjugation involution.
std::pair<StructureAlgebra, Involution> symbol_quaternion(const Field& F, const FieldElement& a,
                                                          const FieldElement& b);

// 2x2 matrix algebra with the involution fixing the diagonal and swapping the
// off-diagonal units with weights alpha, 1/alpha.
std::pair<StructureAlgebra, Involution> matrix_quaternion(const Field& F, const FieldElement& alpha);

// Involution x -> s * gamma(x) * s^(-1); s must be invertible with
// gamma(s) = +-s so the result has order 2.
Involution twisted_conjugation(const StructureAlgebra& Q, const Involution& gamma, const Vec& s);

// 4x4 matrix algebra with x -> D^(-1) x^T D for D = diag(d), or plain
// transpose when all weights are 1.
std::pair<StructureAlgebra, Involution> matrix_biquaternion_adjoint(const Field& F,
                                                                    const std::vector<FieldElement>& d);
std::pair<StructureAlgebra, Involution> matrix_biquaternion_transpose(const Field& F);

// Tensor product with the product involution; basis g_(i,j) = a_i (x) b_j at
// index i*dim(B) + j.
std::pair<StructureAlgebra, Involution> tensor_with_involutions(const StructureAlgebra& A,
                                                                const Involution& sA,
                                                                const StructureAlgebra& B,
                                                                const Involution& sB);

// Construction description used by the command-line driver.
struct FactorSpec {
    enum class Alg { symbol, matrix } alg = Alg::symbol;
    std::string a, b;     // symbol slots, parsed in the base field
    std::string alpha;    // matrix off-diagonal weight
    enum class Inv { conjugation, twisted, weighted_transpose } inv = Inv::conjugation;
    std::string s;        // twisting element, parsed in the factor algebra
};

struct ConstructionSpec {
    enum class Kind { factor, tensor, m4_transpose, m4_adjoint } kind = Kind::factor;
    std::vector<FactorSpec> factors;
    std::vector<std::string> adjoint_diag;
};

std::pair<StructureAlgebra, Involution> build_algebra(const Field& F, const ConstructionSpec& spec);

// Reduced characteristic polynomial (monic, degree = degree(A), leading term
// first): the full characteristic polynomial of left multiplication is its
// degree(A)-th power.
Poly reduced_charpoly(const StructureAlgebra& A, const Vec& x);
FieldElement reduced_norm(const StructureAlgebra& A, const Vec& x);
FieldElement reduced_trace(const StructureAlgebra& A, const Vec& x);

// Two-sided inverse, or nothing when x is not invertible.
std::optional<Vec> invert(const StructureAlgebra& A, const Vec& x);

// Basis of the alternating space { a - sigma(a) }.
std::vector<Vec> alt_space(const StructureAlgebra& A, const Involution& sigma);

// Basis of the elements commuting with every element of S.
std::vector<Vec> centralizer(const StructureAlgebra& A, const std::vector<Vec>& S);

// Square class of the reduced norm of an invertible alternating element,
// times (-1)^(degree/2); orthogonal involutions only.
FieldElement discriminant(const StructureAlgebra& A, const Involution& sigma, std::uint64_t seed = 0);
bool is_decomposable(const StructureAlgebra& A, const Involution& sigma, std::uint64_t seed = 0);

// Int(a) carries sigma to the returned involution Int(a sigma(a)) . sigma.
Involution conjugate_involution(const StructureAlgebra& A, const Involution& sigma, const Vec& a);

} // namespace pfaff
