// Standalone acceptance run: exercises the full invariant pipeline on a fixed
// instance set and prints one pass/fail line per criterion.  Exit status 0
// only when every criterion passes.
#include <array>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pfaff/cli.hpp"
#include "pfaff/csalg.hpp"
#include "pfaff/errors.hpp"
#include "pfaff/field.hpp"
#include "pfaff/linalg.hpp"
#include "pfaff/pfaffian.hpp"
#include "pfaff/quadform.hpp"

namespace {

using namespace pfaff;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
    std::ostringstream o;
    o.precision(1);
    o << std::fixed << s << " s";
    return o.str();
}

struct Criterion {
    bool ok = true;
    std::string detail;
    void fail(const std::string& msg) {
        if (ok) detail = msg;
        ok = false;
    }
};

struct AccInstance {
    std::string name;
    StructureAlgebra A;
    Involution sigma;
    PfaffianPackage pkg;
    bool transpose_literal = false;
};

AccInstance make_instance(std::string name, std::pair<StructureAlgebra, Involution> built,
                          bool literal) {
    PfaffianPackage pkg = compute_pfaffian(built.first, built.second);
    split_plus_minus(pkg);
    return {std::move(name), std::move(built.first), std::move(built.second), std::move(pkg),
            literal};
}

// Fixed instance set: the two plain transposes, a weighted-transpose tensor,
// a division-algebra conjugation tensor, and two characteristic-2 tensors.
std::vector<AccInstance> instance_set() {
    Field Q = Field::rationals();
    Field F5 = Field::prime(5);
    Field F4 = Field::binary(2);
    Field F2st = Field::function_field(2, {"s", "t"});
    std::vector<AccInstance> out;
    out.push_back(make_instance("transpose on M4 over Q", matrix_biquaternion_transpose(Q), true));
    out.push_back(
        make_instance("transpose on M4 over F5", matrix_biquaternion_transpose(F5), true));
    {
        auto [a1, s1] = matrix_quaternion(F5, F5.integer(2));
        auto [a2, s2] = matrix_quaternion(F5, F5.integer(3));
        out.push_back(
            make_instance("T2 x T3 over F5", tensor_with_involutions(a1, s1, a2, s2), false));
    }
    {
        auto [a1, s1] = symbol_quaternion(Q, Q.integer(-1), Q.integer(-1));
        auto [a2, s2] = symbol_quaternion(Q, Q.integer(-1), Q.integer(-3));
        out.push_back(make_instance("conjugation tensor on (-1,-1)x(-1,-3) over Q",
                                    tensor_with_involutions(a1, s1, a2, s2), false));
    }
    {
        auto [a1, s1] = matrix_quaternion(F2st, F2st.variable(0));
        auto [a2, s2] = matrix_quaternion(F2st, F2st.variable(1));
        out.push_back(
            make_instance("Ts x Tt over F2(s,t)", tensor_with_involutions(a1, s1, a2, s2), false));
    }
    {
        auto [a1, s1] = matrix_quaternion(F4, F4.one());
        auto [a2, s2] = matrix_quaternion(F4, F4.one());
        out.push_back(
            make_instance("T1 x T1 over F4", tensor_with_involutions(a1, s1, a2, s2), false));
    }
    return out;
}

// Random alternating element; polynomial coefficients over function fields.
Vec random_alt(const AccInstance& inst, std::mt19937_64& rng) {
    const Field& F = inst.pkg.field();
    bool poly = F.kind() == FieldKind::function;
    Vec x = vec_zero(F, inst.A.dimension);
    for (const Vec& b : inst.pkg.alt_basis) x = vec_add(x, vec_scale(F.sample(rng, poly), b));
    return x;
}

// Random algebra element.  Over function fields the coordinates stay mostly
// constant with a few polynomial entries so determinants remain desk scale.
Vec random_full(const AccInstance& inst, std::mt19937_64& rng) {
    const Field& F = inst.pkg.field();
    Vec x(inst.A.dimension, F.zero());
    if (F.kind() == FieldKind::function) {
        std::uint64_t p = static_cast<std::uint64_t>(F.characteristic());
        auto constant = [&] { return F.integer(static_cast<std::int64_t>(rng() % p)); };
        for (auto& c : x) c = constant();
        for (int k = 0; k < 4; ++k) {
            FieldElement v = constant() + constant() * F.variable(0);
            if (F.vars().size() == 2) v = v + constant() * F.variable(1);
            x[rng() % x.size()] = v;
        }
    } else {
        for (auto& c : x) c = F.sample(rng, true);
    }
    return x;
}

FieldElement nonzero_sample(const Field& F, std::mt19937_64& rng, bool poly) {
    for (int i = 0; i < 200; ++i) {
        FieldElement c = F.sample(rng, poly);
        if (!c.is_zero()) return c;
    }
    throw validation_error("sampling produced only zeros");
}

// Unit plus one or two scaled basis elements, retried until invertible.
Vec sparse_invertible(const StructureAlgebra& A, std::mt19937_64& rng) {
    const Field& F = A.field;
    for (int attempt = 0; attempt < 200; ++attempt) {
        Vec g = A.unit();
        std::size_t extras = 1 + rng() % 2;
        for (std::size_t e = 0; e < extras; ++e) {
            std::size_t i = 1 + rng() % (A.dimension - 1);
            g = vec_add(g, vec_scale(nonzero_sample(F, rng, true), A.basis_element(i)));
        }
        if (invert(A, g)) return g;
    }
    throw validation_error("no invertible sparse element found");
}

// Diagonalization of the full six-dimensional form (characteristic != 2).
std::vector<FieldElement> full_q_diagonal(PfaffianPackage& pkg) {
    const Field& F = pkg.field();
    FieldElement two = F.integer(2);
    std::vector<Vec> rest = pkg.alt_basis;
    std::vector<FieldElement> diag;
    while (!rest.empty()) {
        std::vector<Vec> candidates = rest;
        for (std::size_t i = 0; i < rest.size(); ++i)
            for (std::size_t j = i + 1; j < rest.size(); ++j)
                candidates.push_back(vec_add(rest[i], rest[j]));
        const Vec* pick = nullptr;
        for (const auto& c : candidates)
            if (!pkg.q(c).is_zero()) { pick = &c; break; }
        if (!pick) throw validation_error("form vanishes on a subspace");
        Vec v = *pick;
        FieldElement qv = pkg.q(v);
        diag.push_back(qv);
        std::vector<Vec> next;
        for (const auto& w : rest)
            next.push_back(vec_sub(w, vec_scale(pkg.polar(v, w) / (two * qv), v)));
        next = row_space_basis(std::move(next));
        if (next.size() != rest.size() - 1)
            throw validation_error("diagonalization lost rank");
        rest = std::move(next);
    }
    return diag;
}

constexpr int kSamples = 500;

// The squared form value equals the reduced norm on every sampled
// alternating element of every instance.
Criterion criterion_1(std::vector<AccInstance>& instances) {
    Criterion c;
    auto t0 = Clock::now();
    for (std::size_t n = 0; n < instances.size(); ++n) {
        AccInstance& inst = instances[n];
        if (!(inst.pkg.d == inst.pkg.field().one())) {
            c.fail(inst.name + ": discriminant representative is not 1");
            return c;
        }
        std::mt19937_64 rng(1000 + n);
        for (int i = 0; i < kSamples; ++i) {
            Vec x = random_alt(inst, rng);
            FieldElement qx = inst.pkg.q(x);
            if (!(qx * qx == reduced_norm(inst.A, x))) {
                c.fail(inst.name + ": q(x)^2 != nrd(x) at sample " + std::to_string(i));
                return c;
            }
        }
    }
    double el = seconds_since(t0);
    if (el >= 60.0) c.fail("runtime " + fmt_seconds(el) + " exceeds 60 s");
    c.detail = "q(x)^2 = nrd(x) on " + std::to_string(kSamples) +
               " alternating samples x 6 instances (" + fmt_seconds(el) + ")";
    return c;
}

// The regular representation determinant equals nrd^4, and the cofactor
// pfaffian of the split image matches the form up to one global sign on the
// plain transpose instances.
Criterion criterion_2(std::vector<AccInstance>& instances) {
    Criterion c;
    auto t0 = Clock::now();
    for (std::size_t n = 0; n < instances.size(); ++n) {
        AccInstance& inst = instances[n];
        std::mt19937_64 rng(2000 + n);
        for (int i = 0; i < kSamples; ++i) {
            Vec x = random_full(inst, rng);
            FieldElement nr = reduced_norm(inst.A, x);
            if (!(det(inst.A.left_rep(x)) == nr * nr * nr * nr)) {
                c.fail(inst.name + ": det(left rep) != nrd^4 at sample " + std::to_string(i));
                return c;
            }
        }
        if (!inst.transpose_literal) continue;
        const Field& F = inst.pkg.field();
        std::optional<FieldElement> eps;
        for (int i = 0; i < kSamples; ++i) {
            Vec x = random_alt(inst, rng);
            Mat m = inst.A.split_image(x);
            for (std::size_t r = 0; r < 4; ++r) {
                if (!m[r][r].is_zero()) { c.fail(inst.name + ": split image has a diagonal"); return c; }
                for (std::size_t s = r + 1; s < 4; ++s)
                    if (!(m[s][r] == -m[r][s])) { c.fail(inst.name + ": split image not skew"); return c; }
            }
            FieldElement pf0 = m[0][1] * m[2][3] - m[0][2] * m[1][3] + m[0][3] * m[1][2];
            FieldElement qx = inst.pkg.q(x);
            if (!eps) {
                if (qx.is_zero()) {
                    if (!pf0.is_zero()) { c.fail(inst.name + ": cofactor pfaffian nonzero at q = 0"); return c; }
                    continue;
                }
                eps = pf0 / qx;
                if (!(*eps * *eps == F.one())) {
                    c.fail(inst.name + ": cofactor pfaffian ratio is not a sign");
                    return c;
                }
                continue;
            }
            if (!(pf0 == *eps * qx)) {
                c.fail(inst.name + ": cofactor pfaffian breaks the anchored sign at sample " +
                       std::to_string(i));
                return c;
            }
        }
        if (!eps) { c.fail(inst.name + ": no nonzero sample fixed the sign"); return c; }
    }
    c.detail = "det(left rep) = nrd^4 on " + std::to_string(kSamples) +
               " samples x 6 instances; cofactor pfaffian matches the anchored form on the "
               "transpose instances (" +
               fmt_seconds(seconds_since(t0)) + ")";
    return c;
}

// Adjoint and polar identities, plus/minus orthogonality and commutation, and
// the quaternion-pair decomposition on every instance.
Criterion criterion_3(std::vector<AccInstance>& instances) {
    Criterion c;
    auto t0 = Clock::now();
    for (std::size_t n = 0; n < instances.size(); ++n) {
        AccInstance& inst = instances[n];
        const StructureAlgebra& A = inst.A;
        PfaffianPackage& pkg = inst.pkg;
        const Field& F = pkg.field();
        std::mt19937_64 rng(3000 + n);
        for (int i = 0; i < 25; ++i) {
            Vec x = random_alt(inst, rng), y = random_alt(inst, rng);
            Vec px = pkg.p(x);
            FieldElement qx = pkg.q(x);
            if (!vec_eq(A.mul(x, px), A.scalar(qx)) || !vec_eq(A.mul(px, x), A.scalar(qx))) {
                c.fail(inst.name + ": x * p(x) != q(x) * 1");
                return c;
            }
            if (!(pkg.q(px) == qx)) { c.fail(inst.name + ": adjoint is not an isometry"); return c; }
            if (!vec_eq(pkg.p(px), x)) { c.fail(inst.name + ": adjoint does not square to 1"); return c; }
            Vec rhs = vec_add(A.mul(x, pkg.p(y)), A.mul(y, px));
            if (!vec_eq(A.scalar(pkg.polar(x, y)), rhs)) {
                c.fail(inst.name + ": polar identity fails");
                return c;
            }
        }
        for (const Vec& bp : pkg.alt_plus)
            for (const Vec& bm : pkg.alt_minus) {
                if (!pkg.polar(bp, bm).is_zero()) { c.fail(inst.name + ": plus/minus not orthogonal"); return c; }
                if (!vec_eq(A.mul(bp, bm), A.mul(bm, bp))) {
                    c.fail(inst.name + ": plus/minus elements do not commute");
                    return c;
                }
            }
        std::vector<Vec> qp = pkg.quaternion_plus_basis();
        std::vector<Vec> qm = pkg.quaternion_minus_basis();
        if (F.characteristic() != 2) {
            std::vector<Vec> prods;
            for (const Vec& a : qp)
                for (const Vec& b : qm) prods.push_back(A.mul(a, b));
            if (row_space_basis(std::move(prods)).size() != 16) {
                c.fail(inst.name + ": quaternion pair does not span");
                return c;
            }
            std::vector<Vec> cent = centralizer(A, qp);
            std::vector<Vec> ech_c = row_space_basis(cent);
            std::vector<Vec> ech_m = row_space_basis(qm);
            bool equal = ech_c.size() == 4 && ech_m.size() == 4;
            for (const Vec& b : qm) equal = equal && in_row_space(ech_c, b);
            for (const Vec& b : cent) equal = equal && in_row_space(ech_m, b);
            if (!equal) { c.fail(inst.name + ": centralizer is not the partner quaternion"); return c; }
        } else {
            std::vector<Vec> ech_p = row_space_basis(qp);
            for (const Vec& bm : pkg.alt_minus)
                if (!in_row_space(ech_p, bm)) { c.fail(inst.name + ": minus space leaves the plus algebra"); return c; }
            for (const Vec& a : qp)
                for (const Vec& b : qp)
                    if (!vec_eq(A.mul(a, b), A.mul(b, a))) {
                        c.fail(inst.name + ": plus algebra is not commutative");
                        return c;
                    }
            for (int i = 0; i < 10; ++i) {
                Vec x = vec_zero(F, A.dimension);
                for (const Vec& b : qp) x = vec_add(x, vec_scale(F.sample(rng, true), b));
                if (!A.central_scalar(A.mul(x, x))) {
                    c.fail(inst.name + ": plus algebra square is not central");
                    return c;
                }
            }
        }
    }
    c.detail = "adjoint/polar identities, plus/minus orthogonality and commutation, quaternion "
               "decomposition on all instances (" +
               fmt_seconds(seconds_since(t0)) + ")";
    return c;
}

// Full enumeration over the two- and three-element fields: the alternating
// elements with central square are exactly the plus/minus union.
Criterion criterion_4() {
    Criterion c;
    auto t0 = Clock::now();
    std::vector<std::pair<std::string, std::pair<StructureAlgebra, Involution>>> small;
    Field F2 = Field::prime(2);
    Field F3 = Field::prime(3);
    small.emplace_back("transpose on M4 over F2", matrix_biquaternion_transpose(F2));
    small.emplace_back("transpose on M4 over F3", matrix_biquaternion_transpose(F3));
    {
        auto [a1, s1] = matrix_quaternion(F2, F2.one());
        auto [a2, s2] = matrix_quaternion(F2, F2.one());
        small.emplace_back("T1 x T1 over F2", tensor_with_involutions(a1, s1, a2, s2));
    }
    std::size_t total = 0;
    for (auto& [name, built] : small) {
        PfaffianPackage pkg = compute_pfaffian(built.first, built.second);
        split_plus_minus(pkg);
        const Field& F = pkg.field();
        std::vector<FieldElement> elems = F.enumerate();
        std::vector<Vec> ech_p = row_space_basis(pkg.alt_plus);
        std::vector<Vec> ech_m = row_space_basis(pkg.alt_minus);
        std::vector<std::size_t> digits(6, 0);
        while (true) {
            Vec x = vec_zero(F, built.first.dimension);
            for (std::size_t j = 0; j < 6; ++j)
                x = vec_add(x, vec_scale(elems[digits[j]], pkg.alt_basis[j]));
            bool central = built.first.central_scalar(built.first.mul(x, x)).has_value();
            bool member = in_row_space(ech_p, x) || in_row_space(ech_m, x);
            if (central != member) {
                c.fail(name + ": central-square set differs from the plus/minus union");
                return c;
            }
            ++total;
            std::size_t j = 0;
            while (j < 6 && ++digits[j] == elems.size()) digits[j++] = 0;
            if (j == 6) break;
        }
    }
    c.detail = "square-central alternating elements equal the plus/minus union on " +
               std::to_string(total) + " enumerated elements over F2 and F3 (" +
               fmt_seconds(seconds_since(t0)) + ")";
    return c;
}

// Conjugation keeps the isomorphism class and the form alternative; the
// transpose recognizer agrees with pairwise comparison on the instance set.
Criterion criterion_5(std::vector<AccInstance>& instances) {
    Criterion c;
    auto t0 = Clock::now();
    for (std::size_t n = 0; n < 4; ++n) {
        AccInstance& inst = instances[n];
        const StructureAlgebra& A = inst.A;
        PfaffianPackage& pkg = inst.pkg;
        const Field& F = pkg.field();
        std::mt19937_64 rng(5000 + n);
        std::vector<FieldElement> base_diag = full_q_diagonal(pkg);
        DiagForm f = DiagForm::make(F, base_diag);
        for (int i = 0; i < 50; ++i) {
            Vec g = sparse_invertible(A, rng);
            Involution sigma2 = conjugate_involution(A, inst.sigma, g);
            PfaffianPackage pk2 = compute_pfaffian(A, sigma2);
            split_plus_minus(pk2);
            CompareResult cr = compare_involutions(pkg, pk2);
            if (cr.verdict != Ternary::yes) {
                c.fail(inst.name + ": conjugate compares " + ternary_str(cr.verdict));
                return c;
            }
            DiagForm f2 = DiagForm::make(F, full_q_diagonal(pk2));
            bool alt_a = isometric(f, f2) == Ternary::yes &&
                         isometric(pkg.q_plus_form(), pk2.q_plus_form()) == Ternary::yes;
            bool alt_b = isometric(f, f2.scaled(F.integer(-1))) == Ternary::yes &&
                         isometric(pkg.q_plus_form(),
                                   pk2.q_minus_form().scaled(F.integer(-1))) == Ternary::yes;
            if (!alt_a && !alt_b) {
                c.fail(inst.name + ": neither form alternative holds at conjugation " +
                       std::to_string(i));
                return c;
            }
        }
    }
    for (std::size_t n = 0; n < instances.size(); ++n) {
        AccInstance& inst = instances[n];
        bool tt = transpose_type_test(inst.pkg);
        auto [ta, ts] = matrix_biquaternion_transpose(inst.pkg.field());
        PfaffianPackage tp = compute_pfaffian(ta, ts);
        split_plus_minus(tp);
        CompareResult cr = compare_involutions(inst.pkg, tp);
        if (cr.verdict == Ternary::unknown) {
            c.fail(inst.name + ": transpose comparison undecided");
            return c;
        }
        if (tt != (cr.verdict == Ternary::yes)) {
            c.fail(inst.name + ": transpose recognizer disagrees with comparison");
            return c;
        }
        if (inst.transpose_literal && !tt) {
            c.fail(inst.name + ": transpose instance not recognized");
            return c;
        }
    }
    c.detail = "50 conjugations per instance over Q and F5 keep the class and the form "
               "alternative; transpose recognition matches pairwise comparison (" +
               fmt_seconds(seconds_since(t0)) + ")";
    return c;
}

// Characteristic-2 suite: the bilinear invariant of a weighted-transpose
// tensor, isotropic slot replacement, and the slot-shift distinction.
Criterion criterion_6() {
    Criterion c;
    auto t0 = Clock::now();
    std::vector<Field> fields = {Field::function_field(2, {"t"}),
                                 Field::function_field(2, {"s", "t"})};
    for (std::size_t fi = 0; fi < fields.size(); ++fi) {
        const Field& F = fields[fi];
        std::mt19937_64 rng(6000 + fi);
        for (int i = 0; i < 50; ++i) {
            FieldElement a = nonzero_sample(F, rng, true);
            FieldElement b = nonzero_sample(F, rng, true);
            auto [a1, s1] = matrix_quaternion(F, a);
            auto [a2, s2] = matrix_quaternion(F, b);
            auto [A, sigma] = tensor_with_involutions(a1, s1, a2, s2);
            PfaffianPackage pkg = compute_pfaffian(A, sigma);
            split_plus_minus(pkg);
            BilinearPfisterForm pf = pfister_invariant(pkg);
            if (!pfister_isometric(pf, BilinearPfisterForm::make(F, {a, b}))) {
                c.fail(F.token() + ": bilinear invariant differs from the weight form at sample " +
                       std::to_string(i));
                return c;
            }
        }
        for (int i = 0; i < 25; ++i) {
            FieldElement a = nonzero_sample(F, rng, true);
            FieldElement l0 = nonzero_sample(F, rng, true);
            FieldElement b = i % 5 == 0 ? a : a * l0 * l0;
            BilinearPfisterForm f = BilinearPfisterForm::make(F, {a, b});
            if (!pfister_isotropic(f)) { c.fail(F.token() + ": constructed form not isotropic"); return c; }
            FieldElement lambda = F.zero();
            for (int tries = 0; tries < 200; ++tries) {
                FieldElement cand = nonzero_sample(F, rng, true);
                if (!(cand * cand == a * b)) { lambda = cand; break; }
            }
            if (lambda.is_zero()) { c.fail(F.token() + ": no replacement parameter found"); return c; }
            if (!pfister_isometric(f, pfister_replace(f, lambda))) {
                c.fail(F.token() + ": slot replacement changes the isometry class at sample " +
                       std::to_string(i));
                return c;
            }
        }
    }
    const Field& F2st = fields[1];
    std::mt19937_64 rng(6100);
    int done = 0;
    for (int tries = 0; tries < 4000 && done < 20; ++tries) {
        FieldElement a = nonzero_sample(F2st, rng, true);
        FieldElement b = nonzero_sample(F2st, rng, true);
        BilinearPfisterForm f = BilinearPfisterForm::make(F2st, {a, b});
        if (pfister_isotropic(f)) continue;
        BilinearPfisterForm g = BilinearPfisterForm::make(F2st, {a + F2st.one(), b});
        if (pfister_isometric(f, g)) {
            c.fail("F2(s,t): slot shift preserved an anisotropic form");
            return c;
        }
        ++done;
    }
    if (done < 20) { c.fail("F2(s,t): too few anisotropic samples"); return c; }
    c.detail = "bilinear invariant matches the weights (50 per field), slot replacement "
               "preserves isotropic forms (50), slot shift moves anisotropic ones (20) over "
               "F2(t) and F2(s,t) (" +
               fmt_seconds(seconds_since(t0)) + ")";
    return c;
}

// Metabolicity: the four certificate criteria agree on random finite-field
// instances and the curated verdicts hold with verified witnesses.
Criterion criterion_7(std::vector<AccInstance>& instances) {
    Criterion c;
    auto t0 = Clock::now();
    std::vector<Field> fields = {Field::prime(2),  Field::prime(3),  Field::binary(2),
                                 Field::prime(5),  Field::prime(7),  Field::binary(3),
                                 Field::prime(11), Field::prime(13), Field::binary(4),
                                 Field::prime(17)};
    std::mt19937_64 rng(7000);
    for (int i = 0; i < 100; ++i) {
        const Field& F = fields[i % fields.size()];
        std::pair<StructureAlgebra, Involution> built = [&] {
            int kind = i % 3;
            if (kind == 0) return matrix_biquaternion_transpose(F);
            if (kind == 1) {
                auto [a1, s1] = matrix_quaternion(F, nonzero_sample(F, rng, true));
                auto [a2, s2] = matrix_quaternion(F, nonzero_sample(F, rng, true));
                return tensor_with_involutions(a1, s1, a2, s2);
            }
            if (F.characteristic() == 2) {
                // Conjugation involutions are symplectic and so is their
                // characteristic-2 tensor square; twist each factor by a
                // trace-zero unit to land on an orthogonal tensor.
                auto [q1, g1] = symbol_quaternion(F, nonzero_sample(F, rng, true),
                                                  nonzero_sample(F, rng, true));
                auto [q2, g2] = symbol_quaternion(F, nonzero_sample(F, rng, true),
                                                  nonzero_sample(F, rng, true));
                Involution t1 = twisted_conjugation(q1, g1, q1.basis_element(2 + rng() % 2));
                Involution t2 = twisted_conjugation(q2, g2, q2.basis_element(2 + rng() % 2));
                return tensor_with_involutions(q1, t1, q2, t2);
            }
            auto [q1, g1] = symbol_quaternion(F, nonzero_sample(F, rng, true),
                                              nonzero_sample(F, rng, true));
            auto [q2, g2] = symbol_quaternion(F, nonzero_sample(F, rng, true),
                                              nonzero_sample(F, rng, true));
            return tensor_with_involutions(q1, g1, q2, g2);
        }();
        PfaffianPackage pkg = compute_pfaffian(built.first, built.second);
        split_plus_minus(pkg);
        MetabolicCertificate cert = is_metabolic(pkg, F.enumerable_size() <= 5);
        if (cert.verdict == Ternary::unknown) {
            c.fail(F.token() + ": verdict undecided at instance " + std::to_string(i));
            return c;
        }
        for (Ternary t : cert.criteria)
            if (t != cert.verdict) {
                c.fail(F.token() + ": criteria disagree at instance " + std::to_string(i));
                return c;
            }
    }
    MetabolicCertificate m5 = is_metabolic(instances[1].pkg);
    if (m5.verdict != Ternary::yes || !m5.unit_witness) {
        c.fail("transpose over F5: expected metabolic with a unit witness");
        return c;
    }
    const StructureAlgebra& A5 = instances[1].A;
    if (!vec_eq(A5.mul(*m5.unit_witness, *m5.unit_witness), A5.unit())) {
        c.fail("transpose over F5: witness does not square to 1");
        return c;
    }
    instances[1].pkg.alt_coordinates(*m5.unit_witness);
    MetabolicCertificate mq = is_metabolic(instances[3].pkg);
    if (mq.verdict != Ternary::no) { c.fail("division tensor over Q: expected not metabolic"); return c; }
    MetabolicCertificate mf = is_metabolic(instances[4].pkg);
    if (mf.verdict != Ternary::no) { c.fail("Ts x Tt over F2(s,t): expected not metabolic"); return c; }
    for (MetabolicCertificate* cert : {&m5, &mq, &mf})
        for (Ternary t : cert->criteria)
            if (t != cert->verdict) { c.fail("curated instance: criteria disagree"); return c; }
    c.detail = "the four metabolicity criteria agree on 100 random finite-field instances and "
               "the three curated verdicts hold (" +
               fmt_seconds(seconds_since(t0)) + ")";
    return c;
}

// The worked function-field example reproduces byte-identically and fast.
Criterion criterion_8() {
    Criterion c;
    auto t0 = Clock::now();
    ExampleOutcome r1 = reproduce_example();
    ExampleOutcome r2 = reproduce_example();
    if (!r1.ok || !r2.ok) { c.fail("example verdicts are not all affirmative"); return c; }
    if (r1.lines != r2.lines) { c.fail("example output differs between runs"); return c; }
    std::ostringstream o1, e1, o2, e2;
    if (cmd_reproduce_example(o1, e1) != 0 || cmd_reproduce_example(o2, e2) != 0 ||
        o1.str() != o2.str()) {
        c.fail("command output differs between runs");
        return c;
    }
    double el = seconds_since(t0);
    if (el >= 10.0) { c.fail("runtime " + fmt_seconds(el) + " exceeds 10 s"); return c; }
    c.detail = "worked example reproduces byte-identically with affirmative verdicts (" +
               fmt_seconds(el) + ")";
    return c;
}

} // namespace

int main() {
    std::vector<AccInstance> instances;
    try {
        instances = instance_set();
    } catch (const std::exception& e) {
        std::cout << "acceptance: FAIL (instance construction: " << e.what() << ")\n";
        return 1;
    }
    std::vector<Criterion> results(8);
    auto guard = [&](std::size_t i, auto&& fn) {
        try {
            results[i] = fn();
        } catch (const std::exception& e) {
            results[i].fail(std::string("exception: ") + e.what());
        }
    };
    guard(0, [&] { return criterion_1(instances); });
    guard(1, [&] { return criterion_2(instances); });
    guard(2, [&] { return criterion_3(instances); });
    guard(3, [&] { return criterion_4(); });
    guard(4, [&] { return criterion_5(instances); });
    guard(5, [&] { return criterion_6(); });
    guard(6, [&] { return criterion_7(instances); });
    guard(7, [&] { return criterion_8(); });
    int passed = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const Criterion& r = results[i];
        std::cout << "criterion " << i + 1 << ": " << (r.ok ? "PASS" : "FAIL") << "  " << r.detail
                  << "\n";
        if (r.ok) ++passed;
    }
    std::cout << "acceptance: " << (passed == 8 ? "PASS" : "FAIL") << " (" << passed << "/8)\n";
    return passed == 8 ? 0 : 1;
}
