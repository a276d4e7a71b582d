#include "pfaff/pfaffian.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <utility>

#include "pfaff/errors.hpp"

namespace pfaff {

namespace {

Vec combo(const Field& F, const std::vector<Vec>& basis, const Vec& coords) {
    Vec x = vec_zero(F, basis.at(0).size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (!coords[i].is_zero()) x = vec_add(x, vec_scale(coords[i], basis[i]));
    return x;
}

Mat columns_matrix(const Field& F, const std::vector<Vec>& cols) {
    Mat m = mat_zero(F, cols.at(0).size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < cols[j].size(); ++i) m[i][j] = cols[j][i];
    return m;
}

// Span elements, then sums of two and of three of them; a deterministic pool
// that hits an invertible element quickly on every instance seen in practice.
std::vector<Vec> structured_candidates(const std::vector<Vec>& span) {
    std::vector<Vec> out = span;
    for (std::size_t i = 0; i < span.size(); ++i)
        for (std::size_t j = i + 1; j < span.size(); ++j) out.push_back(vec_add(span[i], span[j]));
    for (std::size_t i = 0; i < span.size(); ++i)
        for (std::size_t j = i + 1; j < span.size(); ++j)
            for (std::size_t k = j + 1; k < span.size(); ++k)
                out.push_back(vec_add(span[i], vec_add(span[j], span[k])));
    return out;
}

Vec random_combo(const Field& F, const std::vector<Vec>& span, std::mt19937_64& rng) {
    Vec c(span.size());
    for (auto& e : c) e = F.sample(rng, true);
    return combo(F, span, c);
}

bool independent_with(const std::vector<Vec>& chosen, const Vec& x) {
    std::vector<Vec> probe = chosen;
    probe.push_back(x);
    return row_space_basis(probe).size() == chosen.size() + 1;
}

Ternary from_isotropy(IsotropyStatus s) {
    switch (s) {
        case IsotropyStatus::isotropic: return Ternary::yes;
        case IsotropyStatus::anisotropic: return Ternary::no;
        default: return Ternary::unknown;
    }
}

Ternary ternary_or(Ternary a, Ternary b) {
    if (a == Ternary::yes || b == Ternary::yes) return Ternary::yes;
    if (a == Ternary::no && b == Ternary::no) return Ternary::no;
    return Ternary::unknown;
}

// Copies a prime-field algebra into the rational function field over the same
// prime, so that norm expansions have enough interpolation points.
StructureAlgebra lift_prime_algebra(const StructureAlgebra& A, const Field& FT) {
    const Field& F = A.field;
    std::int64_t p = F.p();
    auto lc = [&](const FieldElement& c) -> FieldElement {
        for (std::int64_t k = 0; k < p; ++k)
            if (c == F.integer(k)) return FT.integer(k);
        throw validation_error("prime field constant lift failed");
    };
    auto lv = [&](const Vec& v) {
        Vec o;
        o.reserve(v.size());
        for (const auto& c : v) o.push_back(lc(c));
        return o;
    };
    std::vector<std::vector<Vec>> t(A.dimension);
    for (std::size_t i = 0; i < A.dimension; ++i) {
        t[i].reserve(A.dimension);
        for (std::size_t j = 0; j < A.dimension; ++j) t[i].push_back(lv(A.table[i][j]));
    }
    std::vector<Mat> mats;
    for (const Mat& m : A.split_matrices) {
        Mat o;
        for (const Vec& row : m) o.push_back(lv(row));
        mats.push_back(std::move(o));
    }
    return StructureAlgebra::make(FT, std::move(t), A.basis_names, A.label, std::move(mats));
}

} // namespace

Vec PfaffianPackage::alt_coordinates(const Vec& x) const {
    auto sol = solve_linear(columns_matrix(field(), alt_basis), x);
    if (!sol) throw validation_error("element is outside the alternating span");
    return *sol;
}

FieldElement PfaffianPackage::q(const Vec& x) const {
    Vec c = alt_coordinates(x);
    FieldElement acc = field().zero();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        acc += c[i] * c[i] * q_values[i];
        for (std::size_t j = i + 1; j < c.size(); ++j)
            if (!c[j].is_zero()) acc += c[i] * c[j] * polar_matrix[i][j];
    }
    return acc;
}

FieldElement PfaffianPackage::polar(const Vec& x, const Vec& y) const {
    Vec cx = alt_coordinates(x), cy = alt_coordinates(y);
    FieldElement acc = field().zero();
    for (std::size_t i = 0; i < cx.size(); ++i) {
        if (cx[i].is_zero()) continue;
        for (std::size_t j = 0; j < cy.size(); ++j)
            if (!cy[j].is_zero()) acc += cx[i] * cy[j] * polar_matrix[i][j];
    }
    return acc;
}

Vec PfaffianPackage::p(const Vec& x) const {
    return combo(field(), alt_basis, mat_vec(p_matrix, alt_coordinates(x)));
}

DiagForm PfaffianPackage::q_plus_form() const {
    if (!split_done) throw validation_error("plus/minus split has not been computed");
    return DiagForm::make(field(), q_plus_diag);
}

DiagForm PfaffianPackage::q_minus_form() const {
    if (!split_done) throw validation_error("plus/minus split has not been computed");
    return DiagForm::make(field(), q_minus_diag);
}

std::vector<Vec> PfaffianPackage::quaternion_plus_basis() const {
    if (!split_done) throw validation_error("plus/minus split has not been computed");
    return {algebra.unit(), alt_plus[0], alt_plus[1], alt_plus[2]};
}

std::vector<Vec> PfaffianPackage::quaternion_minus_basis() const {
    if (!split_done) throw validation_error("plus/minus split has not been computed");
    return {algebra.unit(), alt_minus[0], alt_minus[1], alt_minus[2]};
}

PfaffianPackage compute_pfaffian(const StructureAlgebra& A, const Involution& sigma,
                                 const FieldElement& d, std::uint64_t seed) {
    const Field& F = A.field;
    if (A.dimension != 16) throw validation_error("pfaffian data needs a degree-4 algebra");
    if (sigma.type != InvolutionType::orthogonal)
        throw validation_error("pfaffian data needs an orthogonal involution");
    if (!(d.field() == F)) throw validation_error("discriminant representative in the wrong field");
    if (d.is_zero()) throw validation_error("discriminant representative must be nonzero");

    std::vector<Vec> span = alt_space(A, sigma);
    if (span.size() != 6) throw validation_error("alternating space does not have dimension 6");

    // Greedy basis of invertible alternating elements.
    std::mt19937_64 rng(seed ^ 0x8f1bbcdcbfa53e0bULL);
    std::vector<Vec> basis;
    std::vector<FieldElement> basis_nrd;
    auto consider = [&](const Vec& x) {
        if (basis.size() >= 6 || vec_is_zero(x)) return;
        if (!independent_with(basis, x)) return;
        FieldElement n = reduced_norm(A, x);
        if (n.is_zero()) return;
        basis.push_back(x);
        basis_nrd.push_back(n);
    };
    for (const Vec& c : structured_candidates(span)) {
        if (basis.size() >= 6) break;
        consider(c);
    }
    for (int t = 0; t < 500 && basis.size() < 6; ++t) consider(random_combo(F, span, rng));
    if (basis.size() != 6) throw validation_error("no basis of invertible alternating elements found");

    PfaffianPackage pkg;
    pkg.algebra = A;
    pkg.sigma = sigma;
    pkg.d = d;
    pkg.decomposable = d.is_square();
    pkg.alt_basis = basis;
    pkg.anchor_index = 0;

    auto root0 = (d * basis_nrd[0]).sqrt();
    if (!root0)
        throw validation_error("representative is not in the discriminant square class");
    pkg.anchor_root = *root0;

    std::vector<FieldElement> qv(6, F.zero());
    Mat polar = mat_zero(F, 6, 6);
    qv[0] = pkg.anchor_root;

    if (F.characteristic() == 2) {
        auto value = [&](const FieldElement& n) -> FieldElement {
            FieldElement t = d * n;
            if (t.is_zero()) return F.zero();
            auto r = t.sqrt();
            if (!r) throw validation_error("norm value is not a square in characteristic 2");
            return *r;
        };
        for (std::size_t i = 1; i < 6; ++i) qv[i] = value(basis_nrd[i]);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = i + 1; j < 6; ++j) {
                FieldElement s = value(reduced_norm(A, vec_add(basis[i], basis[j])));
                polar[i][j] = polar[j][i] = s + qv[i] + qv[j];
            }
    } else {
        // Quartic expansions d * nrd(e_0 + t x) = (q(e_0) + b(e_0,x) t + q(x) t^2)^2,
        // interpolated at five points; over F_3 the points live in F_3(T).
        const StructureAlgebra* W = &A;
        StructureAlgebra lifted;
        Field FW = F;
        FieldElement dW = d, rootW = pkg.anchor_root;
        std::function<Vec(const Vec&)> up_vec = [](const Vec& v) { return v; };
        std::function<FieldElement(const FieldElement&)> down =
            [](const FieldElement& c) { return c; };
        std::vector<FieldElement> pts;
        if (F.kind() == FieldKind::rationals) {
            for (std::int64_t n : {0, 1, -1, 2, -2}) pts.push_back(F.integer(n));
        } else if (F.characteristic() >= 5) {
            for (std::int64_t n : {0, 1, 2, 3, 4}) pts.push_back(F.integer(n));
        } else if (F.kind() == FieldKind::function) {
            FieldElement s = F.variable(0);
            pts = {F.integer(0), F.integer(1), F.integer(2), s, s + F.one()};
        } else {
            FW = Field::function_field(F.p(), {"T"});
            lifted = lift_prime_algebra(A, FW);
            W = &lifted;
            std::int64_t p = F.p();
            auto lift_c = [FW, F, p](const FieldElement& c) -> FieldElement {
                for (std::int64_t k = 0; k < p; ++k)
                    if (c == F.integer(k)) return FW.integer(k);
                throw validation_error("prime field constant lift failed");
            };
            up_vec = [lift_c](const Vec& v) {
                Vec o;
                o.reserve(v.size());
                for (const auto& c : v) o.push_back(lift_c(c));
                return o;
            };
            down = [FW, F, p](const FieldElement& c) -> FieldElement {
                for (std::int64_t k = 0; k < p; ++k)
                    if (c == FW.integer(k)) return F.integer(k);
                throw validation_error("expansion coefficient is not a constant");
            };
            dW = lift_c(d);
            rootW = lift_c(pkg.anchor_root);
            FieldElement T = FW.variable(0);
            pts = {FW.integer(0), FW.integer(1), FW.integer(2), T, T + FW.one()};
        }
        Vec anchorW = up_vec(basis[0]);
        FieldElement twoW = FW.integer(2);
        Mat V = mat_zero(FW, 5, 5);
        for (std::size_t r = 0; r < 5; ++r)
            for (std::size_t c = 0; c < 5; ++c)
                V[r][c] = pts[r].pow(static_cast<std::int64_t>(c));
        auto expand = [&](const Vec& x) -> std::pair<FieldElement, FieldElement> {
            Vec xw = up_vec(x);
            Vec rhs(5, FW.zero());
            for (std::size_t r = 0; r < 5; ++r)
                rhs[r] = dW * reduced_norm(*W, vec_add(anchorW, vec_scale(pts[r], xw)));
            auto sol = solve_linear(V, rhs);
            if (!sol) throw validation_error("norm expansion interpolation failed");
            const Vec& P = *sol;
            if (!(P[0] == rootW * rootW))
                throw validation_error("norm expansion has an inconsistent constant term");
            FieldElement s1 = P[1] / (twoW * rootW);
            FieldElement s2 = (P[2] - s1 * s1) / (twoW * rootW);
            if (!(P[3] == twoW * s1 * s2) || !(P[4] == s2 * s2))
                throw validation_error("norm expansion is not a perfect square");
            return {down(s1), down(s2)};
        };
        for (std::size_t i = 1; i < 6; ++i) {
            auto [s1, s2] = expand(basis[i]);
            polar[0][i] = polar[i][0] = s1;
            qv[i] = s2;
        }
        for (std::size_t i = 1; i < 6; ++i)
            for (std::size_t j = i + 1; j < 6; ++j) {
                auto [s1, s2] = expand(vec_add(basis[i], basis[j]));
                if (!(s1 == polar[0][i] + polar[0][j]))
                    throw validation_error("norm expansion is not additive in the anchor slot");
                polar[i][j] = polar[j][i] = s2 - qv[i] - qv[j];
            }
    }
    FieldElement two = F.integer(2);
    for (std::size_t i = 0; i < 6; ++i) polar[i][i] = two * qv[i];
    pkg.q_values = qv;
    pkg.polar_matrix = polar;

    // Adjoint columns p(e_j) = q(e_j) e_j^(-1), in alternating coordinates.
    Mat M = columns_matrix(F, basis);
    Mat P = mat_zero(F, 6, 6);
    for (std::size_t j = 0; j < 6; ++j) {
        auto inv = invert(A, basis[j]);
        if (!inv) throw validation_error("alternating basis element is not invertible");
        auto c = solve_linear(M, vec_scale(qv[j], *inv));
        if (!c) throw validation_error("pfaffian adjoint leaves the alternating space");
        for (std::size_t i = 0; i < 6; ++i) P[i][j] = (*c)[i];
    }
    pkg.p_matrix = P;

    Mat dI = mat_scale(pkg.d, mat_identity(F, 6));
    if (!mat_eq(mat_mul(P, P), dI))
        throw validation_error("pfaffian adjoint does not square to the discriminant");
    for (int t = 0; t < 5; ++t) {
        Vec x = random_combo(F, basis, rng);
        Vec qx = pkg.algebra.scalar(pkg.q(x));
        Vec px = pkg.p(x);
        if (!vec_eq(A.mul(x, px), qx) || !vec_eq(A.mul(px, x), qx))
            throw validation_error("pfaffian data fails the adjoint identity");
    }
    return pkg;
}

PfaffianPackage compute_pfaffian(const StructureAlgebra& A, const Involution& sigma,
                                 std::uint64_t seed) {
    FieldElement disc = discriminant(A, sigma, seed);
    FieldElement d = disc.is_square() ? A.field.one() : disc;
    return compute_pfaffian(A, sigma, d, seed);
}

namespace {

// Orthogonal triple (u, v, uv) of a plus or minus space: u is the first
// invertible candidate, u' the first independent one, and v kills the scalar
// part of u u'.  The verifications mirror the construction's guarantees.
std::vector<Vec> make_triple(const PfaffianPackage& pkg, const std::vector<Vec>& space, int sign,
                             std::uint64_t seed, std::vector<FieldElement>& diag) {
    const StructureAlgebra& A = pkg.algebra;
    const Field& F = pkg.field();
    FieldElement sg = sign < 0 ? -F.one() : F.one();
    auto echelon = row_space_basis(space);
    std::vector<Vec> cands = structured_candidates(space);
    std::mt19937_64 rng(seed ^ 0xa24baed4963ee407ULL);
    for (int t = 0; t < 200; ++t) cands.push_back(random_combo(F, space, rng));
    Mat M = columns_matrix(F, {A.unit(), space[0], space[1], space[2]});
    for (const Vec& u : cands) {
        if (vec_is_zero(u)) continue;
        FieldElement qu = pkg.q(u);
        if (qu.is_zero()) continue;
        auto uu = A.central_scalar(A.mul(u, u));
        if (!uu) throw validation_error("square of a split-space element is not central");
        if (!(*uu == sg * qu))
            throw validation_error("split-space square disagrees with its pfaffian value");
        for (const Vec& ua : cands) {
            if (!independent_with({u}, ua)) continue;
            auto sol = solve_linear(M, A.mul(u, ua));
            if (!sol) throw validation_error("split-space product leaves its quaternion");
            FieldElement lambda = (*sol)[0];
            Vec v = vec_sub(ua, vec_scale(lambda / *uu, u));
            // An isotropic correction makes u v collapse into the span of v;
            // only anisotropic v extends u to a triple.
            if (pkg.q(v).is_zero()) continue;
            Vec w = A.mul(u, v);
            if (!in_row_space(echelon, v) || !in_row_space(echelon, w))
                throw validation_error("orthogonal triple leaves its space");
            if (row_space_basis({u, v, w}).size() != 3)
                throw validation_error("orthogonal triple is not independent");
            if (!pkg.polar(u, v).is_zero() || !pkg.polar(u, w).is_zero() ||
                !pkg.polar(v, w).is_zero())
                throw validation_error("triple is not orthogonal for the polar form");
            for (const Vec& x : {v, w}) {
                auto s = A.central_scalar(A.mul(x, x));
                if (!s || !(*s == sg * pkg.q(x)))
                    throw validation_error("split-space square disagrees with its pfaffian value");
            }
            diag = {qu, pkg.q(v), pkg.q(w)};
            return {u, v, w};
        }
    }
    throw validation_error("no invertible element found in a split space");
}

} // namespace

std::vector<std::vector<Vec>> subalgebra_table(const StructureAlgebra& A,
                                               const std::vector<Vec>& basis) {
    if (basis.empty() || !vec_eq(basis[0], A.unit()))
        throw validation_error("subalgebra basis must start with the unit");
    if (row_space_basis(basis).size() != basis.size())
        throw validation_error("subalgebra basis is not independent");
    Mat M = columns_matrix(A.field, basis);
    std::vector<std::vector<Vec>> table(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            auto sol = solve_linear(M, A.mul(basis[i], basis[j]));
            if (!sol) throw validation_error("products leave the subalgebra span");
            table[i].push_back(*sol);
        }
    return table;
}

void split_plus_minus(PfaffianPackage& pkg, std::uint64_t seed) {
    if (pkg.split_done) return;
    if (!pkg.d.is_one())
        throw validation_error("plus/minus split requires discriminant representative 1");
    const Field& F = pkg.field();
    const StructureAlgebra& A = pkg.algebra;
    bool char2 = F.characteristic() == 2;
    Mat I6 = mat_identity(F, 6);
    auto lift_space = [&](const std::vector<Vec>& cs) {
        std::vector<Vec> out;
        for (const Vec& c : cs) out.push_back(combo(F, pkg.alt_basis, c));
        return out;
    };
    std::vector<Vec> plus = lift_space(kernel_basis(mat_sub(pkg.p_matrix, I6)));
    std::vector<Vec> minus = char2 ? plus : lift_space(kernel_basis(mat_add(pkg.p_matrix, I6)));
    if (plus.size() != 3 || minus.size() != 3)
        throw validation_error("plus/minus spaces do not have dimension 3");
    pkg.alt_plus = make_triple(pkg, plus, +1, seed, pkg.q_plus_diag);
    if (char2) {
        pkg.alt_minus = pkg.alt_plus;
        pkg.q_minus_diag = pkg.q_plus_diag;
    } else {
        pkg.alt_minus = make_triple(pkg, minus, -1, seed, pkg.q_minus_diag);
    }
    pkg.split_done = true;

    auto bp = pkg.quaternion_plus_basis();
    auto bm = pkg.quaternion_minus_basis();
    subalgebra_table(A, bp); // throws when the span is not closed
    subalgebra_table(A, bm);
    if (!char2) {
        auto cent = centralizer(A, {pkg.alt_plus[0], pkg.alt_plus[1], pkg.alt_plus[2]});
        if (cent.size() != 4)
            throw validation_error("centralizer of the plus quaternion has wrong dimension");
        auto ech = row_space_basis(cent);
        for (const Vec& x : bm)
            if (!in_row_space(ech, x))
                throw validation_error("minus quaternion does not centralize the plus one");
        std::vector<Vec> prods;
        for (const Vec& x : bp)
            for (const Vec& y : bm) prods.push_back(A.mul(x, y));
        if (row_space_basis(prods).size() != 16)
            throw validation_error("quaternion product map does not span the algebra");
    } else {
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j)
                if (!vec_eq(A.mul(bp[i], bp[j]), A.mul(bp[j], bp[i])))
                    throw validation_error("plus quaternion is not commutative");
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                Vec z = A.mul(bp[i], bp[j]);
                if (!A.central_scalar(A.mul(z, z)))
                    throw validation_error("plus quaternion has a non-central square");
            }
    }
}

BilinearPfisterForm pfister_invariant(PfaffianPackage& pkg, std::uint64_t seed) {
    const Field& F = pkg.field();
    if (F.characteristic() != 2)
        throw validation_error("bilinear invariant requires characteristic 2");
    split_plus_minus(pkg, seed);
    const StructureAlgebra& A = pkg.algebra;
    if (!pkg.generator_pair.empty())
        return BilinearPfisterForm::make(
            F, {pkg.q(pkg.generator_pair[0]), pkg.q(pkg.generator_pair[1])});
    const std::vector<Vec>& space = pkg.alt_plus;
    std::vector<Vec> cands = structured_candidates(space);
    std::mt19937_64 rng(seed ^ 0x7b9a210efcd5302bULL);
    for (int t = 0; t < 200; ++t) cands.push_back(random_combo(F, space, rng));
    Mat M = columns_matrix(F, {A.unit(), space[0], space[1], space[2]});
    int budget = 2000;
    for (const Vec& u : cands) {
        if (vec_is_zero(u)) continue;
        FieldElement qu = pkg.q(u);
        if (qu.is_zero()) continue;
        for (const Vec& ua : cands) {
            if (budget-- <= 0) break;
            if (!independent_with({u}, ua)) continue;
            auto sol = solve_linear(M, A.mul(u, ua));
            if (!sol) throw validation_error("plus space product leaves its quaternion");
            Vec v = vec_add(ua, vec_scale((*sol)[0] / qu, u));
            FieldElement qv = pkg.q(v);
            if (qv.is_zero()) continue;
            Vec w = A.mul(u, v);
            auto back = solve_linear(M, w);
            if (!back || !(*back)[0].is_zero())
                throw validation_error("generator product has a scalar part");
            if (!vec_eq(A.mul(u, v), A.mul(v, u)))
                throw validation_error("generator pair does not commute");
            if (row_space_basis({A.unit(), u, v, w}).size() != 4)
                throw validation_error("generator pair does not span a quaternion");
            if (isometric(pkg.q_plus_form(), DiagForm::make(F, {qu, qv, qu * qv})) !=
                Ternary::yes)
                throw validation_error("generator squares disagree with the plus form");
            pkg.generator_pair = {u, v};
            return BilinearPfisterForm::make(F, {qu, qv});
        }
        if (budget <= 0) break;
    }
    throw validation_error("no alternating generator pair with invertible squares found");
}

std::optional<std::pair<Vec, Vec>> alternating_generator_pair(PfaffianPackage& pkg,
                                                              const FieldElement& alpha,
                                                              const FieldElement& beta) {
    const Field& F = pkg.field();
    if (F.characteristic() != 2)
        throw validation_error("alternating generators require characteristic 2");
    split_plus_minus(pkg);
    const StructureAlgebra& A = pkg.algebra;
    DiagForm qp = pkg.q_plus_form();
    auto ra = represents(qp, alpha);
    auto rb = represents(qp, beta);
    if (ra.verdict != Ternary::yes || !ra.witness || rb.verdict != Ternary::yes || !rb.witness)
        return std::nullopt;
    Vec x = combo(F, pkg.alt_plus, *ra.witness);
    Vec y = combo(F, pkg.alt_plus, *rb.witness);
    if (row_space_basis({x, y}).size() != 2) return std::nullopt;
    Mat M = columns_matrix(F, {A.unit(), pkg.alt_plus[0], pkg.alt_plus[1], pkg.alt_plus[2]});
    auto sol = solve_linear(M, A.mul(x, y));
    if (!sol) throw validation_error("plus space product leaves its quaternion");
    if (!(*sol)[0].is_zero()) return std::nullopt;
    auto x2 = A.central_scalar(A.mul(x, x));
    auto y2 = A.central_scalar(A.mul(y, y));
    if (!x2 || !(*x2 == alpha) || !y2 || !(*y2 == beta))
        throw validation_error("generator squares disagree with the requested values");
    if (!vec_eq(A.mul(x, y), A.mul(y, x)))
        throw validation_error("generator pair does not commute");
    if (row_space_basis({A.unit(), x, y, A.mul(x, y)}).size() != 4)
        throw validation_error("generator pair does not span a quaternion");
    return std::make_pair(x, y);
}

MetabolicCertificate is_metabolic(PfaffianPackage& pkg, bool exhaustive_scan) {
    MetabolicCertificate cert;
    const Field& F = pkg.field();
    const StructureAlgebra& A = pkg.algebra;
    if (!pkg.decomposable) {
        cert.verdict = Ternary::no;
        cert.criteria = {Ternary::no, Ternary::no, Ternary::no, Ternary::no};
        cert.evidence = "nontrivial discriminant";
        return cert;
    }
    if (!pkg.d.is_one())
        throw validation_error("metabolicity requires discriminant representative 1");
    split_plus_minus(pkg);
    bool char2 = F.characteristic() == 2;
    DiagForm qp = pkg.q_plus_form(), qm = pkg.q_minus_form();
    auto isoP = isotropy(qp), isoM = isotropy(qm);
    Ternary c4 = ternary_or(from_isotropy(isoP.status), from_isotropy(isoM.status));
    auto repP = represents(qp, F.one());
    auto repM = represents(qm, -F.one());
    Ternary c3 = ternary_or(repP.verdict, repM.verdict);
    Ternary c2;
    IsotropyVerdict nrmP{IsotropyStatus::unknown, std::nullopt};
    IsotropyVerdict nrmM{IsotropyStatus::unknown, std::nullopt};
    if (char2) {
        c2 = from_isotropy(isoP.status);
    } else {
        // Norm forms of the two quaternions: <1> + (-1) q+ and <1> + q-.
        std::vector<FieldElement> np{F.one()}, nm{F.one()};
        for (const auto& c : pkg.q_plus_diag) np.push_back(-c);
        for (const auto& c : pkg.q_minus_diag) nm.push_back(c);
        nrmP = isotropy(DiagForm::make(F, np));
        nrmM = isotropy(DiagForm::make(F, nm));
        c2 = ternary_or(from_isotropy(nrmP.status), from_isotropy(nrmM.status));
    }
    bool any_yes = c2 == Ternary::yes || c3 == Ternary::yes || c4 == Ternary::yes;
    bool any_no = c2 == Ternary::no || c3 == Ternary::no || c4 == Ternary::no;
    if (any_yes && any_no)
        throw validation_error("metabolicity criteria disagree: split=" + ternary_str(c2) +
                               " represent=" + ternary_str(c3) + " isotropy=" + ternary_str(c4));
    Ternary verdict = any_yes ? Ternary::yes : (any_no ? Ternary::no : Ternary::unknown);
    cert.verdict = verdict;
    cert.criteria = {verdict, c2, c3, c4};

    if (verdict == Ternary::yes) {
        if (repP.verdict == Ternary::yes && repP.witness)
            cert.unit_witness = combo(F, pkg.alt_plus, *repP.witness);
        else if (repM.verdict == Ternary::yes && repM.witness)
            cert.unit_witness = combo(F, pkg.alt_minus, *repM.witness);
        if (cert.unit_witness) {
            const Vec& u = *cert.unit_witness;
            if (!vec_eq(A.mul(u, u), A.unit()))
                throw validation_error("unit witness square check failed");
            if (!char2) {
                Vec e = vec_scale(F.one() / F.integer(2), vec_add(A.unit(), u));
                if (!vec_eq(A.mul(e, e), e))
                    throw validation_error("idempotent witness check failed");
                if (!vec_eq(pkg.sigma.apply(e), vec_sub(A.unit(), e)))
                    throw validation_error("idempotent witness is not hyperbolic");
                cert.idempotent_witness = e;
            }
        }
        if (isoP.witness)
            cert.isotropy_witness = combo(F, pkg.alt_plus, *isoP.witness);
        else if (isoM.witness)
            cert.isotropy_witness = combo(F, pkg.alt_minus, *isoM.witness);
        if (char2) {
            if (isoP.witness) {
                Vec x = combo(F, pkg.alt_plus, *isoP.witness);
                if (vec_is_zero(x) || !vec_is_zero(A.mul(x, x)))
                    throw validation_error("nilpotent witness check failed");
                cert.zero_divisor_witness = x;
            }
        } else {
            auto from_norm = [&](const IsotropyVerdict& nv, const std::vector<Vec>& quat) {
                if (!nv.witness || cert.zero_divisor_witness) return;
                Vec x = combo(F, quat, *nv.witness);
                if (vec_is_zero(x) || !vec_is_zero(A.mul(x, pkg.sigma.apply(x))))
                    throw validation_error("zero divisor witness check failed");
                cert.zero_divisor_witness = x;
            };
            from_norm(nrmP, pkg.quaternion_plus_basis());
            from_norm(nrmM, pkg.quaternion_minus_basis());
        }
    }

    // Exhaustive scan over small fields: metabolic iff some alternating
    // element squares to 1.
    std::uint64_t sz = F.enumerable_size();
    if (exhaustive_scan && sz >= 2 && sz <= 9) {
        std::vector<FieldElement> elems = F.enumerate();
        std::vector<std::vector<Vec>> prods(6, std::vector<Vec>(6));
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j)
                prods[i][j] = A.mul(pkg.alt_basis[i], pkg.alt_basis[j]);
        Vec unit = A.unit();
        bool found = false;
        Vec found_x;
        std::vector<std::size_t> idx(6, 0);
        while (true) {
            Vec c(6);
            for (std::size_t i = 0; i < 6; ++i) c[i] = elems[idx[i]];
            Vec acc = vec_zero(F, 16);
            for (std::size_t i = 0; i < 6; ++i) {
                if (c[i].is_zero()) continue;
                for (std::size_t j = 0; j < 6; ++j) {
                    if (c[j].is_zero()) continue;
                    FieldElement cc = c[i] * c[j];
                    for (std::size_t m = 0; m < 16; ++m)
                        if (!prods[i][j][m].is_zero()) acc[m] += cc * prods[i][j][m];
                }
            }
            if (vec_eq(acc, unit)) {
                found = true;
                found_x = combo(F, pkg.alt_basis, c);
                break;
            }
            std::size_t pos = 0;
            while (pos < 6 && ++idx[pos] == elems.size()) idx[pos++] = 0;
            if (pos == 6) break;
        }
        if (found != (verdict == Ternary::yes))
            throw validation_error("exhaustive unit scan contradicts the verdict");
        if (found && !cert.unit_witness) {
            cert.unit_witness = found_x;
        }
    }

    if (verdict == Ternary::yes)
        cert.evidence = repP.verdict == Ternary::yes   ? "the plus form represents 1"
                        : repM.verdict == Ternary::yes ? "the minus form represents -1"
                                                       : "a restricted form is isotropic";
    else if (verdict == Ternary::no)
        cert.evidence = "both restricted forms are anisotropic";
    else
        cert.evidence = "restricted form decisions are inconclusive";
    return cert;
}

std::optional<std::vector<std::int64_t>> rational_ramification(const StructureAlgebra& A) {
    if (A.field.kind() != FieldKind::rationals) return std::nullopt;
    if (A.has_split_model()) return std::vector<std::int64_t>{};
    if (A.symbol_factors.empty()) return std::nullopt;
    std::vector<FieldElement> cs;
    for (const auto& [a, b] : A.symbol_factors) {
        cs.push_back(a);
        cs.push_back(b);
    }
    std::vector<std::int64_t> out;
    for (std::int64_t v : relevant_places(cs)) {
        int h = 1;
        for (const auto& [a, b] : A.symbol_factors) h *= hilbert_symbol(a, b, v);
        if (h == -1) out.push_back(v);
    }
    return out;
}

CompareResult compare_involutions(PfaffianPackage& a, PfaffianPackage& b, std::uint64_t seed) {
    if (!(a.field() == b.field()))
        throw validation_error("comparison requires a common base field");
    if (!a.d.is_one() || !b.d.is_one())
        throw validation_error("comparison requires discriminant representative 1 on both sides");
    const Field& F = a.field();
    Ternary ev = Ternary::unknown;
    std::string why = "algebra comparison inconclusive";
    if (a.algebra.table == b.algebra.table) {
        ev = Ternary::yes;
        why = "identical structure constants";
    } else if (a.algebra.has_split_model() && b.algebra.has_split_model()) {
        ev = Ternary::yes;
        why = "both algebras carry split matrix models";
    } else if (F.kind() == FieldKind::prime || F.kind() == FieldKind::binary) {
        ev = Ternary::yes;
        why = "algebras over a finite field split";
    } else if (F.kind() == FieldKind::rationals) {
        auto ra = rational_ramification(a.algebra);
        auto rb = rational_ramification(b.algebra);
        if (ra && rb) {
            if (*ra == *rb) {
                ev = Ternary::yes;
                why = "equal ramification sets";
            } else {
                ev = Ternary::no;
                why = "different ramification sets";
            }
        }
    }
    if (ev == Ternary::no) return {Ternary::no, why};
    Ternary inv;
    std::string invwhy;
    if (F.characteristic() == 2) {
        bool same = pfister_isometric(pfister_invariant(a, seed), pfister_invariant(b, seed));
        inv = same ? Ternary::yes : Ternary::no;
        invwhy = same ? "equal bilinear invariants" : "distinct bilinear invariants";
    } else {
        split_plus_minus(a, seed);
        split_plus_minus(b, seed);
        // When the two pfaffians anchor with opposite signs the plus space of
        // one matches the minus space of the other with the form negated
        // (squares obey x^2 = q(x) on the plus side and x^2 = -q(x) on the
        // minus side), so the second alternative compares against -q^-.
        FieldElement minus_one = -F.one();
        inv = ternary_or(isometric(a.q_plus_form(), b.q_plus_form()),
                         isometric(a.q_plus_form(), b.q_minus_form().scaled(minus_one)));
        invwhy = inv == Ternary::yes  ? "plus form matches a restricted form"
                 : inv == Ternary::no ? "plus form matches neither restricted form"
                                      : "restricted form comparison inconclusive";
    }
    if (inv == Ternary::no) return {Ternary::no, invwhy};
    if (ev == Ternary::yes && inv == Ternary::yes) return {Ternary::yes, why + "; " + invwhy};
    return {Ternary::unknown, ev == Ternary::yes ? invwhy : why};
}

bool transpose_type_test(PfaffianPackage& pkg) {
    const Field& F = pkg.field();
    if (!pkg.decomposable) return false;
    if (!pkg.d.is_one())
        throw validation_error("transpose test requires discriminant representative 1");
    split_plus_minus(pkg);
    FieldElement one = F.one();
    if (F.characteristic() == 2)
        return isometric(pkg.q_plus_form(), DiagForm::make(F, {one, one, one})) == Ternary::yes;
    Ternary t1 = isometric(pkg.q_plus_form(), DiagForm::make(F, {-one, -one, -one}));
    Ternary t2 = isometric(pkg.q_minus_form(), DiagForm::make(F, {one, one, one}));
    if (t1 == Ternary::unknown || t2 == Ternary::unknown)
        throw validation_error("transpose comparison is inconclusive");
    return t1 == Ternary::yes && t2 == Ternary::yes;
}

} // namespace pfaff
