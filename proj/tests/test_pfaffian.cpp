#include "doctest.h"

#include <random>

#include "pfaff/csalg.hpp"
#include "pfaff/errors.hpp"
#include "pfaff/field.hpp"
#include "pfaff/linalg.hpp"
#include "pfaff/pfaffian.hpp"
#include "pfaff/quadform.hpp"

using namespace pfaff;

namespace {

Vec lincomb(const Field& F, const std::vector<Vec>& basis, const std::vector<FieldElement>& c) {
    Vec x = vec_zero(F, basis.at(0).size());
    for (std::size_t i = 0; i < basis.size(); ++i) x = vec_add(x, vec_scale(c[i], basis[i]));
    return x;
}

Vec random_alt(const PfaffianPackage& pkg, std::mt19937_64& rng) {
    std::vector<FieldElement> c(pkg.alt_basis.size());
    for (auto& e : c) e = pkg.field().sample(rng, true);
    return lincomb(pkg.field(), pkg.alt_basis, c);
}

Vec random_element(const StructureAlgebra& A, std::mt19937_64& rng) {
    Vec x = A.zero_element();
    for (auto& c : x) c = A.field.sample(rng, true);
    return x;
}

bool same_square_class(const FieldElement& a, const FieldElement& b) {
    return (a * b).is_square();
}

// Diagonalization of the full six-dimensional form; characteristic not 2.
std::vector<FieldElement> diag_q(const PfaffianPackage& pkg) {
    std::vector<Vec> rest = pkg.alt_basis;
    std::vector<FieldElement> out;
    while (!rest.empty()) {
        std::vector<Vec> cands = rest;
        for (std::size_t i = 0; i < rest.size(); ++i)
            for (std::size_t j = i + 1; j < rest.size(); ++j)
                cands.push_back(vec_add(rest[i], rest[j]));
        Vec v;
        bool found = false;
        for (const Vec& cnd : cands)
            if (!pkg.q(cnd).is_zero()) {
                v = cnd;
                found = true;
                break;
            }
        REQUIRE(found);
        out.push_back(pkg.q(v));
        FieldElement bvv = pkg.polar(v, v);
        std::vector<Vec> proj;
        for (const Vec& w : rest)
            proj.push_back(vec_sub(w, vec_scale(pkg.polar(v, w) / bvv, v)));
        proj = row_space_basis(proj);
        REQUIRE(proj.size() == rest.size() - 1);
        rest = proj;
    }
    return out;
}

// Both statements of the isomorphism criterion: matching forms directly, or
// after the sign swap of the two restrictions.
void check_jay(const PfaffianPackage& a, const PfaffianPackage& b) {
    const Field& F = a.field();
    DiagForm qa = DiagForm::make(F, diag_q(a));
    DiagForm qb = DiagForm::make(F, diag_q(b));
    bool direct = isometric(qa, qb) == Ternary::yes &&
                  isometric(a.q_plus_form(), b.q_plus_form()) == Ternary::yes;
    bool swapped = isometric(qa, qb.scaled(-F.one())) == Ternary::yes &&
                   isometric(a.q_plus_form(), b.q_minus_form()) == Ternary::yes;
    CHECK((direct || swapped));
}

} // namespace

TEST_CASE("pfaffian data on the rational transpose algebra") {
    Field q = Field::rationals();
    auto [A, s] = matrix_biquaternion_transpose(q);
    PfaffianPackage pkg = compute_pfaffian(A, s);
    CHECK(pkg.d.is_one());
    CHECK(pkg.decomposable);
    CHECK(pkg.alt_basis.size() == 6);
    CHECK(pkg.anchor_index == 0);
    CHECK(mat_eq(mat_mul(pkg.p_matrix, pkg.p_matrix), mat_identity(q, 6)));

    // The classical cofactor expansion on the matrix model pins the values up
    // to one global sign.
    auto pf0 = [&](const Vec& x) {
        Mat m = A.split_image(x);
        return m[0][1] * m[2][3] - m[0][2] * m[1][3] + m[0][3] * m[1][2];
    };
    FieldElement eps = pkg.q(pkg.alt_basis[0]) / pf0(pkg.alt_basis[0]);
    CHECK((eps * eps).is_one());

    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        Vec x = random_alt(pkg, rng);
        Vec y = random_alt(pkg, rng);
        FieldElement qx = pkg.q(x);
        CHECK(qx == eps * pf0(x));
        CHECK(qx * qx == reduced_norm(A, x));
        Vec px = pkg.p(x);
        CHECK(vec_eq(A.mul(x, px), A.scalar(qx)));
        CHECK(vec_eq(A.mul(px, x), A.scalar(qx)));
        CHECK(pkg.q(px) == qx);
        CHECK_NOTHROW(pkg.alt_coordinates(px));
        CHECK(vec_eq(A.scalar(pkg.polar(x, y)), vec_add(A.mul(x, pkg.p(y)), A.mul(y, pkg.p(x)))));
        CHECK(pkg.q(vec_add(x, y)) - qx - pkg.q(y) == pkg.polar(x, y));
    }

    // Symmetric elements are outside the span; rebuilding is deterministic.
    CHECK_THROWS_AS(pkg.alt_coordinates(A.unit()), validation_error);
    PfaffianPackage again = compute_pfaffian(A, s);
    CHECK(pkg.q_values == again.q_values);
    CHECK(mat_eq(pkg.p_matrix, again.p_matrix));
}

TEST_CASE("plus and minus split of the rational transpose") {
    Field q = Field::rationals();
    auto [A, s] = matrix_biquaternion_transpose(q);
    PfaffianPackage pkg = compute_pfaffian(A, s);
    split_plus_minus(pkg);
    CHECK(pkg.alt_plus.size() == 3);
    CHECK(pkg.alt_minus.size() == 3);

    FieldElement one = q.one();
    CHECK(transpose_type_test(pkg));
    CHECK(isometric(pkg.q_plus_form(), DiagForm::make(q, {-one, -one, -one})) == Ternary::yes);
    CHECK(isometric(pkg.q_minus_form(), DiagForm::make(q, {one, one, one})) == Ternary::yes);

    // The two split spaces commute elementwise and are polar-orthogonal.
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(pkg.polar(pkg.alt_plus[i], pkg.alt_minus[j]).is_zero());
            CHECK(vec_eq(A.mul(pkg.alt_plus[i], pkg.alt_minus[j]),
                         A.mul(pkg.alt_minus[j], pkg.alt_plus[i])));
        }

    // Squares: +q on the plus space, -q on the minus space; mixed sums leave
    // the center.
    for (int i = 0; i < 3; ++i) {
        auto sp = A.central_scalar(A.mul(pkg.alt_plus[i], pkg.alt_plus[i]));
        REQUIRE(sp);
        CHECK(*sp == pkg.q_plus_diag[i]);
        auto sm = A.central_scalar(A.mul(pkg.alt_minus[i], pkg.alt_minus[i]));
        REQUIRE(sm);
        CHECK(*sm == -pkg.q_minus_diag[i]);
    }
    Vec mixed = vec_add(pkg.alt_plus[0], pkg.alt_minus[0]);
    CHECK(!A.central_scalar(A.mul(mixed, mixed)).has_value());

    // Norm forms of the two quaternions, evaluated as x sigma(x).
    std::mt19937_64 rng(7);
    auto bp = pkg.quaternion_plus_basis();
    auto bm = pkg.quaternion_minus_basis();
    for (int t = 0; t < 10; ++t) {
        std::vector<FieldElement> c(4);
        for (auto& e : c) e = q.sample(rng, true);
        Vec xp = lincomb(q, bp, c);
        auto np = A.central_scalar(A.mul(xp, s.apply(xp)));
        REQUIRE(np);
        FieldElement expect = c[0] * c[0];
        for (int i = 0; i < 3; ++i) expect -= c[i + 1] * c[i + 1] * pkg.q_plus_diag[i];
        CHECK(*np == expect);
        Vec xm = lincomb(q, bm, c);
        auto nm = A.central_scalar(A.mul(xm, s.apply(xm)));
        REQUIRE(nm);
        expect = c[0] * c[0];
        for (int i = 0; i < 3; ++i) expect += c[i + 1] * c[i + 1] * pkg.q_minus_diag[i];
        CHECK(*nm == expect);
    }

    // Full form splits as the orthogonal sum of the two restrictions.
    DiagForm full = DiagForm::make(q, diag_q(pkg));
    CHECK(isometric(full, pkg.q_plus_form().orthogonal_sum(pkg.q_minus_form())) == Ternary::yes);

    // Definite restrictions: adjoint of a definite form is not metabolic.
    MetabolicCertificate cert = is_metabolic(pkg);
    CHECK(cert.verdict == Ternary::no);
    for (auto c : cert.criteria) CHECK(c == Ternary::no);
}

TEST_CASE("anisotropic restrictions over the rationals") {
    Field q = Field::rationals();
    FieldElement m1 = -q.one(), m3 = q.integer(-3);
    auto [Q1, g1] = symbol_quaternion(q, m1, m1);
    auto [Q2, g2] = symbol_quaternion(q, m1, m3);
    auto [A, s] = tensor_with_involutions(Q1, g1, Q2, g2);
    PfaffianPackage pkg = compute_pfaffian(A, s);
    CHECK(pkg.d.is_one());
    split_plus_minus(pkg);

    // The greedy basis consists of invertible elements by construction.
    for (const Vec& b : pkg.alt_basis) CHECK(!reduced_norm(A, b).is_zero());

    // Restrictions come out as one of the two valid labelings.
    FieldElement one = q.one(), three = q.integer(3);
    bool labelA =
        isometric(pkg.q_plus_form(), DiagForm::make(q, {m1, m1, m1})) == Ternary::yes &&
        isometric(pkg.q_minus_form(), DiagForm::make(q, {one, three, three})) == Ternary::yes;
    bool labelB =
        isometric(pkg.q_plus_form(), DiagForm::make(q, {m1, m3, m3})) == Ternary::yes &&
        isometric(pkg.q_minus_form(), DiagForm::make(q, {one, one, one})) == Ternary::yes;
    CHECK((labelA || labelB));

    MetabolicCertificate cert = is_metabolic(pkg);
    CHECK(cert.verdict == Ternary::no);
    for (auto c : cert.criteria) CHECK(c == Ternary::no);
    CHECK(cert.evidence == "both restricted forms are anisotropic");
    CHECK(!transpose_type_test(pkg));

    auto ram = rational_ramification(A);
    REQUIRE(ram);
    CHECK(*ram == std::vector<std::int64_t>{2, 3});

    auto [M, t] = matrix_biquaternion_transpose(q);
    PfaffianPackage pkgT = compute_pfaffian(M, t);
    CompareResult cr = compare_involutions(pkg, pkgT);
    CHECK(cr.verdict == Ternary::no);
    CHECK(cr.evidence == "different ramification sets");
}

TEST_CASE("metabolic verdict over a small prime field") {
    Field f5 = Field::prime(5);
    auto [A, s] = matrix_biquaternion_transpose(f5);
    PfaffianPackage pkg = compute_pfaffian(A, s);
    MetabolicCertificate cert = is_metabolic(pkg);
    CHECK(cert.verdict == Ternary::yes);
    for (auto c : cert.criteria) CHECK(c == Ternary::yes);

    REQUIRE(cert.unit_witness);
    CHECK(vec_eq(A.mul(*cert.unit_witness, *cert.unit_witness), A.unit()));
    CHECK_NOTHROW(pkg.alt_coordinates(*cert.unit_witness));
    REQUIRE(cert.idempotent_witness);
    const Vec& e = *cert.idempotent_witness;
    CHECK(vec_eq(A.mul(e, e), e));
    CHECK(vec_eq(s.apply(e), vec_sub(A.unit(), e)));
    CHECK(vec_eq(A.mul(s.apply(e), e), A.zero_element()));
    REQUIRE(cert.isotropy_witness);
    CHECK(pkg.q(*cert.isotropy_witness).is_zero());
    REQUIRE(cert.zero_divisor_witness);
    CHECK(vec_eq(A.mul(*cert.zero_divisor_witness, s.apply(*cert.zero_divisor_witness)),
                 A.zero_element()));

    // A hand-built alternating square root of 1.
    Vec u0 = A.zero_element();
    FieldElement two = f5.integer(2);
    u0[1] = two;
    u0[4] = -two;
    u0[11] = two;
    u0[14] = -two;
    CHECK(vec_eq(A.mul(u0, u0), A.unit()));
    CHECK_NOTHROW(pkg.alt_coordinates(u0));

    CHECK(transpose_type_test(pkg));

    auto [B1, t1] = matrix_quaternion(f5, f5.integer(2));
    auto [B2, t2] = matrix_quaternion(f5, f5.integer(3));
    auto [B, sb] = tensor_with_involutions(B1, t1, B2, t2);
    PfaffianPackage pkgB = compute_pfaffian(B, sb);
    CHECK(is_metabolic(pkgB).verdict == Ternary::yes);
    CHECK(transpose_type_test(pkgB));
    CHECK(compare_involutions(pkg, pkgB).verdict == Ternary::yes);
}

TEST_CASE("binary function field invariants") {
    Field f = Field::function_field(2, {"s", "t"});
    FieldElement sv = f.variable(0), tv = f.variable(1);
    auto [Qa, ta] = matrix_quaternion(f, sv);
    auto [Qb, tb] = matrix_quaternion(f, tv);
    auto [A, si] = tensor_with_involutions(Qa, ta, Qb, tb);
    PfaffianPackage pkg = compute_pfaffian(A, si);
    CHECK(pkg.d.is_one());
    CHECK(pkg.decomposable);

    split_plus_minus(pkg);
    CHECK(isometric(pkg.q_plus_form(), DiagForm::make(f, {sv, tv, sv * tv})) == Ternary::yes);
    CHECK(pkg.alt_plus == pkg.alt_minus);

    BilinearPfisterForm pf = pfister_invariant(pkg);
    CHECK(pfister_isometric(pf, BilinearPfisterForm::make(f, {sv, tv})));
    CHECK(!pfister_isotropic(pf));
    BilinearPfisterForm pf2 = pfister_invariant(pkg);
    CHECK(pf.slots == pf2.slots);

    MetabolicCertificate cert = is_metabolic(pkg);
    CHECK(cert.verdict == Ternary::no);
    for (auto c : cert.criteria) CHECK(c == Ternary::no);
    CHECK(!transpose_type_test(pkg));

    auto pair = alternating_generator_pair(pkg, sv, tv);
    REQUIRE(pair);
    auto sq1 = A.central_scalar(A.mul(pair->first, pair->first));
    auto sq2 = A.central_scalar(A.mul(pair->second, pair->second));
    REQUIRE(sq1);
    REQUIRE(sq2);
    CHECK(*sq1 == sv);
    CHECK(*sq2 == tv);
    CHECK(!alternating_generator_pair(pkg, f.one(), f.one()).has_value());
}

TEST_CASE("distinct involutions with a shared square-central subalgebra") {
    Field f = Field::function_field(2, {"s", "t"});
    FieldElement sv = f.variable(0), tv = f.variable(1);
    auto [Qa, ta] = matrix_quaternion(f, sv);
    auto [Qa1, ta1] = matrix_quaternion(f, sv + f.one());
    auto [Qb, tb] = matrix_quaternion(f, tv);
    auto [A, si] = tensor_with_involutions(Qa, ta, Qb, tb);
    auto [A1, si1] = tensor_with_involutions(Qa1, ta1, Qb, tb);
    PfaffianPackage pkg = compute_pfaffian(A, si);
    PfaffianPackage pkg1 = compute_pfaffian(A1, si1);

    // Invariants differ, so the involutions are not isomorphic.
    BilinearPfisterForm pf = pfister_invariant(pkg);
    BilinearPfisterForm pf1 = pfister_invariant(pkg1);
    CHECK(!pfister_isometric(pf, pf1));
    CompareResult cr = compare_involutions(pkg, pkg1);
    CHECK(cr.verdict == Ternary::no);

    // Yet u |-> u' + 1, v |-> v' identifies the two square-central
    // subalgebras as plain algebras.
    auto gen = alternating_generator_pair(pkg, sv, tv);
    auto gen1 = alternating_generator_pair(pkg1, sv + f.one(), tv);
    REQUIRE(gen);
    REQUIRE(gen1);
    std::vector<Vec> basis = {A.unit(), gen->first, gen->second,
                              A.mul(gen->first, gen->second)};
    Vec mapped = vec_add(gen1->first, A1.unit());
    std::vector<Vec> basis1 = {A1.unit(), mapped, gen1->second, A1.mul(mapped, gen1->second)};
    CHECK(subalgebra_table(A, basis) == subalgebra_table(A1, basis1));
}

TEST_CASE("metabolic involutions over small binary fields") {
    Field f2 = Field::binary(1);
    auto [A, s] = matrix_biquaternion_transpose(f2);
    PfaffianPackage pkg = compute_pfaffian(A, s);
    BilinearPfisterForm pf = pfister_invariant(pkg);
    CHECK(pfister_isometric(pf, BilinearPfisterForm::make(f2, {f2.one(), f2.one()})));
    CHECK(pfister_isotropic(pf));
    MetabolicCertificate cert = is_metabolic(pkg);
    CHECK(cert.verdict == Ternary::yes);
    REQUIRE(cert.unit_witness);
    CHECK(vec_eq(A.mul(*cert.unit_witness, *cert.unit_witness), A.unit()));
    REQUIRE(cert.zero_divisor_witness);
    CHECK(vec_is_zero(A.mul(*cert.zero_divisor_witness, *cert.zero_divisor_witness)));
    CHECK(transpose_type_test(pkg));

    Field f4 = Field::binary(2);
    FieldElement g = f4.generator();
    auto [B1, t1] = matrix_quaternion(f4, f4.one());
    auto [B2, t2] = matrix_quaternion(f4, g);
    auto [B, sb] = tensor_with_involutions(B1, t1, B2, t2);
    PfaffianPackage pkgB = compute_pfaffian(B, sb);
    BilinearPfisterForm pfB = pfister_invariant(pkgB);
    CHECK(pfister_isometric(pfB, BilinearPfisterForm::make(f4, {f4.one(), g})));
    CHECK(pfister_isotropic(pfB));
    CHECK(is_metabolic(pkgB).verdict == Ternary::yes);
    // Every element of a perfect field is a square, so all two-slot bilinear
    // forms coincide and every decomposable involution is transpose type.
    CHECK(pfister_isometric(pfB, BilinearPfisterForm::make(f4, {f4.one(), f4.one()})));
    CHECK(transpose_type_test(pkgB));

    auto [M4, t4] = matrix_biquaternion_transpose(f4);
    PfaffianPackage pkgT = compute_pfaffian(M4, t4);
    CHECK(transpose_type_test(pkgT));
    CHECK(is_metabolic(pkgT).verdict == Ternary::yes);
    CompareResult cr = compare_involutions(pkgB, pkgT);
    CHECK(cr.verdict == Ternary::yes);
}

TEST_CASE("scaled discriminant representatives") {
    Field q = Field::rationals();
    auto [A, s] = matrix_biquaternion_transpose(q);
    PfaffianPackage pkg1 = compute_pfaffian(A, s, q.one());
    PfaffianPackage pkg4 = compute_pfaffian(A, s, q.integer(4));
    FieldElement two = q.integer(2);
    CHECK(pkg4.decomposable);
    for (int i = 0; i < 6; ++i) CHECK(pkg4.q_values[i] == two * pkg1.q_values[i]);
    CHECK(mat_eq(pkg4.p_matrix, mat_scale(two, pkg1.p_matrix)));
    CHECK(mat_eq(mat_mul(pkg4.p_matrix, pkg4.p_matrix),
                 mat_scale(q.integer(4), mat_identity(q, 6))));
    CHECK_THROWS_AS(split_plus_minus(pkg4), validation_error);
    CHECK_THROWS_AS(is_metabolic(pkg4), validation_error);

    CHECK_THROWS_AS(compute_pfaffian(A, s, q.integer(2)), validation_error);
    CHECK_THROWS_AS(compute_pfaffian(A, s, q.zero()), validation_error);
    CHECK_THROWS_AS(compute_pfaffian(A, s, Field::prime(5).one()), validation_error);
}

TEST_CASE("nondecomposable adjoint involution") {
    Field q = Field::rationals();
    FieldElement one = q.one(), two = q.integer(2);
    auto [A, s] = matrix_biquaternion_adjoint(q, {one, one, one, two});
    PfaffianPackage pkg = compute_pfaffian(A, s);
    CHECK(same_square_class(pkg.d, two));
    CHECK(!pkg.decomposable);
    CHECK(mat_eq(mat_mul(pkg.p_matrix, pkg.p_matrix),
                 mat_scale(pkg.d, mat_identity(q, 6))));
    CHECK_THROWS_AS(split_plus_minus(pkg), validation_error);

    MetabolicCertificate cert = is_metabolic(pkg);
    CHECK(cert.verdict == Ternary::no);
    CHECK(cert.evidence == "nontrivial discriminant");
    for (auto c : cert.criteria) CHECK(c == Ternary::no);

    CHECK_THROWS_AS(compute_pfaffian(A, s, one), validation_error);
}

TEST_CASE("square-central alternating elements fill the two split spaces") {
    // Characteristic 2: the two spaces coincide.
    Field f2 = Field::binary(1);
    auto [A2, s2] = matrix_biquaternion_transpose(f2);
    PfaffianPackage p2 = compute_pfaffian(A2, s2);
    split_plus_minus(p2);

    // Characteristic 3 exercises the interpolation lift.
    Field f3 = Field::prime(3);
    auto [C1, u1] = matrix_quaternion(f3, f3.integer(2));
    auto [C2, u2] = matrix_quaternion(f3, f3.integer(2));
    auto [A3, s3] = tensor_with_involutions(C1, u1, C2, u2);
    PfaffianPackage p3 = compute_pfaffian(A3, s3);
    CHECK(p3.d.is_one());
    split_plus_minus(p3);
    CHECK(is_metabolic(p3).verdict == Ternary::yes);

    auto scan = [](const PfaffianPackage& pk) {
        const Field& F = pk.field();
        std::vector<FieldElement> elems = F.enumerate();
        auto plus_ech = row_space_basis(pk.alt_plus);
        auto minus_ech = row_space_basis(pk.alt_minus);
        std::vector<std::size_t> idx(6, 0);
        std::size_t central = 0;
        while (true) {
            std::vector<FieldElement> c(6);
            for (int i = 0; i < 6; ++i) c[i] = elems[idx[i]];
            Vec x = lincomb(F, pk.alt_basis, c);
            bool is_central = pk.algebra.central_scalar(pk.algebra.mul(x, x)).has_value();
            bool in_union = in_row_space(plus_ech, x) || in_row_space(minus_ech, x);
            CHECK(is_central == in_union);
            if (is_central != in_union) return std::size_t(0);
            if (is_central) ++central;
            std::size_t pos = 0;
            while (pos < 6 && ++idx[pos] == elems.size()) idx[pos++] = 0;
            if (pos == 6) break;
        }
        return central;
    };
    CHECK(scan(p2) == 8);   // one 3-dimensional space over F_2
    CHECK(scan(p3) == 53);  // two 3-dimensional spaces meeting in 0
}

TEST_CASE("conjugation preserves every invariant") {
    Field f5 = Field::prime(5);
    auto [B1, t1] = matrix_quaternion(f5, f5.integer(2));
    auto [B2, t2] = matrix_quaternion(f5, f5.integer(3));
    auto [A, s] = tensor_with_involutions(B1, t1, B2, t2);
    PfaffianPackage pkg = compute_pfaffian(A, s);
    split_plus_minus(pkg);

    std::mt19937_64 rng(29);
    int done = 0;
    while (done < 3) {
        Vec a = random_element(A, rng);
        if (!invert(A, a)) continue;
        ++done;
        Involution sp = conjugate_involution(A, s, a);
        PfaffianPackage pkgP = compute_pfaffian(A, sp);
        split_plus_minus(pkgP);
        check_jay(pkg, pkgP);
        CHECK(compare_involutions(pkg, pkgP).verdict == Ternary::yes);
        CHECK(is_metabolic(pkgP).verdict == is_metabolic(pkg).verdict);
    }

    Field q = Field::rationals();
    auto [M, t] = matrix_biquaternion_transpose(q);
    PfaffianPackage pkgT = compute_pfaffian(M, t);
    split_plus_minus(pkgT);
    std::mt19937_64 rng2(31);
    done = 0;
    while (done < 2) {
        Vec a = random_element(M, rng2);
        if (!invert(M, a)) continue;
        ++done;
        Involution tp = conjugate_involution(M, t, a);
        PfaffianPackage pkgP = compute_pfaffian(M, tp);
        split_plus_minus(pkgP);
        check_jay(pkgT, pkgP);
        CHECK(compare_involutions(pkgT, pkgP).verdict == Ternary::yes);
        CHECK(transpose_type_test(pkgP));
    }

    // Characteristic 2: the bilinear invariant is preserved.
    Field f = Field::function_field(2, {"s", "t"});
    auto [Qa, ta] = matrix_quaternion(f, f.variable(0));
    auto [Qb, tb] = matrix_quaternion(f, f.variable(1));
    auto [C, sc] = tensor_with_involutions(Qa, ta, Qb, tb);
    PfaffianPackage pkgC = compute_pfaffian(C, sc);
    Vec a = C.zero_element();
    bool built = false;
    for (std::size_t k = 1; k < 16 && !built; ++k) {
        a = vec_add(C.unit(), C.basis_element(k));
        if (!invert(C, a)) continue;
        Involution scp = conjugate_involution(C, sc, a);
        if (mat_eq(scp.action, sc.action)) continue;
        built = true;
        PfaffianPackage pkgCP = compute_pfaffian(C, scp);
        CHECK(pfister_isometric(pfister_invariant(pkgC), pfister_invariant(pkgCP)));
        CHECK(isometric(pkgC.q_plus_form(), pkgCP.q_plus_form()) == Ternary::yes);
        CHECK(compare_involutions(pkgC, pkgCP).verdict == Ternary::yes);
    }
    CHECK(built);
}

TEST_CASE("ramification sets over the rationals") {
    Field q = Field::rationals();
    FieldElement m1 = -q.one();
    auto [Q1, g1] = symbol_quaternion(q, m1, m1);
    auto ramQ = rational_ramification(Q1);
    REQUIRE(ramQ);
    CHECK(*ramQ == std::vector<std::int64_t>{0, 2});

    auto [M, t] = matrix_biquaternion_transpose(q);
    auto ramM = rational_ramification(M);
    REQUIRE(ramM);
    CHECK(ramM->empty());

    auto [Q2, g2] = symbol_quaternion(q, m1, m1);
    auto [HH, shh] = tensor_with_involutions(Q1, g1, Q2, g2);
    auto ramHH = rational_ramification(HH);
    REQUIRE(ramHH);
    CHECK(ramHH->empty());

    // Trivial class, definite restrictions: transpose type but not metabolic.
    PfaffianPackage pkgHH = compute_pfaffian(HH, shh);
    PfaffianPackage pkgT = compute_pfaffian(M, t);
    CHECK(transpose_type_test(pkgHH));
    CHECK(is_metabolic(pkgHH).verdict == Ternary::no);
    CompareResult cr = compare_involutions(pkgHH, pkgT);
    CHECK(cr.verdict == Ternary::yes);

    Field f5 = Field::prime(5);
    auto [F1, h1] = symbol_quaternion(f5, f5.integer(2), f5.integer(3));
    CHECK(!rational_ramification(F1).has_value());
}

TEST_CASE("pfaffian validation rejects unusable inputs") {
    Field q = Field::rationals();
    FieldElement m1 = -q.one();
    auto [Q1, g1] = symbol_quaternion(q, m1, m1);
    auto [M2, t2] = matrix_quaternion(q, q.one());
    auto [A, s] = tensor_with_involutions(Q1, g1, M2, t2);
    CHECK(s.type == InvolutionType::symplectic);
    CHECK_THROWS_AS(compute_pfaffian(A, s, q.one()), validation_error);

    auto [M, t] = matrix_biquaternion_transpose(q);
    PfaffianPackage pkgT = compute_pfaffian(M, t);
    Field f5 = Field::prime(5);
    auto [M5, t5] = matrix_biquaternion_transpose(f5);
    PfaffianPackage pkg5 = compute_pfaffian(M5, t5);
    CHECK_THROWS_AS(compare_involutions(pkgT, pkg5), validation_error);

    FieldElement one = q.one(), two = q.integer(2);
    auto [D, sd] = matrix_biquaternion_adjoint(q, {one, one, one, two});
    PfaffianPackage pkgD = compute_pfaffian(D, sd);
    CHECK_THROWS_AS(compare_involutions(pkgD, pkgD), validation_error);
    CHECK_THROWS_AS(pfister_invariant(pkgT), validation_error);
    CHECK_THROWS_AS(alternating_generator_pair(pkgT, one, one), validation_error);

    CHECK_THROWS_AS(subalgebra_table(M, {M.basis_element(1)}), validation_error);
    CHECK_THROWS_AS(
        subalgebra_table(M, {M.unit(), vec_add(M.basis_element(1), M.basis_element(6))}),
        validation_error);
    auto tab = subalgebra_table(M, {M.unit(), M.basis_element(1)});
    CHECK(tab.size() == 2);
    CHECK(vec_is_zero(tab[1][1]));
}
