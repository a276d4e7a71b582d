#include "pfaff/csalg.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "pfaff/errors.hpp"

namespace pfaff {

namespace {

Vec mat_col(const Mat& m, std::size_t j) {
    Vec out;
    out.reserve(m.size());
    for (const auto& row : m) out.push_back(row[j]);
    return out;
}

Mat kron(const Mat& a, const Mat& b, const Field& F) {
    std::size_t na = a.size(), nb = b.size();
    Mat out = mat_zero(F, na * nb, na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l)
                    out[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
    return out;
}

std::string trimmed(std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
}

} // namespace

StructureAlgebra StructureAlgebra::make(const Field& F, std::vector<std::vector<Vec>> table,
                                        std::vector<std::string> basis_names, std::string label,
                                        std::vector<Mat> split_matrices) {
    std::size_t n = table.size();
    if (n != 4 && n != 16) throw validation_error("algebra dimension must be 4 or 16");
    if (basis_names.size() != n) throw validation_error("basis name count mismatch");
    for (const auto& row : table) {
        if (row.size() != n) throw validation_error("structure table is not square");
        for (const auto& v : row) {
            if (v.size() != n) throw validation_error("structure constant vector has wrong length");
            for (const auto& c : v)
                if (!(c.field() == F)) throw validation_error("structure constant in wrong field");
        }
    }
    StructureAlgebra A;
    A.field = F;
    A.dimension = n;
    A.table = std::move(table);
    A.basis_names = std::move(basis_names);
    A.label = std::move(label);
    A.split_matrices = std::move(split_matrices);
    for (std::size_t j = 0; j < n; ++j) {
        if (!vec_eq(A.table[0][j], A.basis_element(j)) || !vec_eq(A.table[j][0], A.basis_element(j)))
            throw validation_error("basis vector 0 is not a two-sided unit");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (!vec_eq(A.mul(A.table[i][j], A.basis_element(k)),
                            A.mul(A.basis_element(i), A.table[j][k])))
                    throw validation_error("structure constants are not associative");
            }
    if (!A.split_matrices.empty()) {
        if (A.split_matrices.size() != n) throw validation_error("split model size mismatch");
        std::size_t d = A.degree();
        for (const auto& m : A.split_matrices)
            if (m.size() != d) throw validation_error("split matrix has wrong size");
        if (!mat_eq(A.split_matrices[0], mat_identity(F, d)))
            throw validation_error("split model does not send the unit to the identity");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Mat lhs = mat_mul(A.split_matrices[i], A.split_matrices[j]);
                if (!mat_eq(lhs, A.split_image(A.table[i][j])))
                    throw validation_error("split model does not respect the product");
            }
    }
    return A;
}

std::size_t StructureAlgebra::degree() const { return dimension == 16 ? 4 : 2; }

Vec StructureAlgebra::zero_element() const { return vec_zero(field, dimension); }

Vec StructureAlgebra::unit() const { return basis_element(0); }

Vec StructureAlgebra::basis_element(std::size_t i) const {
    Vec v = zero_element();
    v[i] = field.one();
    return v;
}

Vec StructureAlgebra::scalar(const FieldElement& c) const {
    Vec v = zero_element();
    v[0] = c;
    return v;
}

Vec StructureAlgebra::mul(const Vec& x, const Vec& y) const {
    Vec out = zero_element();
    for (std::size_t i = 0; i < dimension; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < dimension; ++j) {
            if (y[j].is_zero()) continue;
            FieldElement c = x[i] * y[j];
            const Vec& t = table[i][j];
            for (std::size_t k = 0; k < dimension; ++k)
                if (!t[k].is_zero()) out[k] = out[k] + c * t[k];
        }
    }
    return out;
}

Mat StructureAlgebra::left_rep(const Vec& x) const {
    Mat out = mat_zero(field, dimension, dimension);
    for (std::size_t i = 0; i < dimension; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < dimension; ++j) {
            const Vec& t = table[i][j];
            for (std::size_t k = 0; k < dimension; ++k)
                if (!t[k].is_zero()) out[k][j] = out[k][j] + x[i] * t[k];
        }
    }
    return out;
}

Mat StructureAlgebra::right_rep(const Vec& x) const {
    Mat out = mat_zero(field, dimension, dimension);
    for (std::size_t i = 0; i < dimension; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < dimension; ++j) {
            const Vec& t = table[j][i];
            for (std::size_t k = 0; k < dimension; ++k)
                if (!t[k].is_zero()) out[k][j] = out[k][j] + x[i] * t[k];
        }
    }
    return out;
}

Mat StructureAlgebra::split_image(const Vec& x) const {
    if (split_matrices.empty()) throw validation_error("algebra has no split model");
    std::size_t d = degree();
    Mat out = mat_zero(field, d, d);
    for (std::size_t i = 0; i < dimension; ++i) {
        if (x[i].is_zero()) continue;
        out = mat_add(out, mat_scale(x[i], split_matrices[i]));
    }
    return out;
}

std::optional<FieldElement> StructureAlgebra::central_scalar(const Vec& x) const {
    for (std::size_t i = 1; i < dimension; ++i)
        if (!x[i].is_zero()) return std::nullopt;
    return x[0];
}

std::string StructureAlgebra::element_str(const Vec& x) const {
    std::string out;
    for (std::size_t i = 0; i < dimension; ++i) {
        if (x[i].is_zero()) continue;
        std::string c = x[i].str();
        bool messy = c.find_first_of("+-*") != std::string::npos;
        std::string term;
        if (i == 0) {
            term = messy ? "(" + c + ")" : c;
        } else if (c == "1") {
            term = basis_names[i];
        } else {
            term = (messy ? "(" + c + ")" : c) + "*" + basis_names[i];
        }
        if (!out.empty()) out += " + ";
        out += term;
    }
    return out.empty() ? "0" : out;
}

Vec StructureAlgebra::parse_element(std::string_view text) const {
    Vec out = zero_element();
    std::string expr(text);
    std::vector<std::pair<int, std::string>> terms;
    std::string cur;
    int depth = 0;
    int sign = 1;
    auto flush = [&](int next_sign) {
        std::string t = trimmed(cur);
        if (!t.empty()) terms.emplace_back(sign, t);
        cur.clear();
        sign = next_sign;
    };
    for (char ch : expr) {
        if (ch == '(') ++depth;
        if (ch == ')') {
            if (depth == 0) throw validation_error("unbalanced parentheses in element expression");
            --depth;
        }
        if (depth == 0 && (ch == '+' || ch == '-')) {
            if (trimmed(cur).empty()) {
                if (ch == '-') sign = -sign;
            } else {
                flush(ch == '+' ? 1 : -1);
            }
        } else {
            cur += ch;
        }
    }
    if (depth != 0) throw validation_error("unbalanced parentheses in element expression");
    flush(1);
    if (terms.empty()) throw validation_error("empty element expression");
    auto name_index = [&](const std::string& s) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < dimension; ++i)
            if (basis_names[i] == s) return i;
        return std::nullopt;
    };
    for (const auto& [sg, term] : terms) {
        std::vector<std::string> chunks;
        std::string piece;
        int d2 = 0;
        for (char ch : term) {
            if (ch == '(') ++d2;
            if (ch == ')') --d2;
            if (d2 == 0 && ch == '*') {
                chunks.push_back(trimmed(piece));
                piece.clear();
            } else {
                piece += ch;
            }
        }
        chunks.push_back(trimmed(piece));
        FieldElement sgn = field.integer(sg);
        auto idx = name_index(chunks.back());
        if (chunks.size() == 1) {
            if (idx) {
                out[*idx] = out[*idx] + sgn;
            } else {
                out[0] = out[0] + sgn * field.parse(term);
            }
        } else {
            if (!idx) throw validation_error("unknown basis name: " + chunks.back());
            std::string coef = chunks[0];
            for (std::size_t i = 1; i + 1 < chunks.size(); ++i) coef += "*" + chunks[i];
            out[*idx] = out[*idx] + sgn * field.parse(coef);
        }
    }
    return out;
}

std::string involution_type_str(InvolutionType t) {
    return t == InvolutionType::orthogonal ? "orthogonal" : "symplectic";
}

Involution Involution::make(const StructureAlgebra& A, Mat action, std::string label) {
    std::size_t n = A.dimension;
    if (action.size() != n) throw validation_error("involution matrix has wrong size");
    for (const auto& row : action)
        if (row.size() != n) throw validation_error("involution matrix is not square");
    const Field& F = A.field;
    if (!vec_eq(mat_vec(action, A.unit()), A.unit()))
        throw validation_error("involution does not fix the unit");
    if (!mat_eq(mat_mul(action, action), mat_identity(F, n)))
        throw validation_error("involution does not square to the identity");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec lhs = mat_vec(action, A.table[i][j]);
            Vec rhs = A.mul(mat_col(action, j), mat_col(action, i));
            if (!vec_eq(lhs, rhs))
                throw validation_error("involution does not reverse products");
        }
    std::size_t deg = A.degree();
    std::size_t sym_orth = deg * (deg + 1) / 2;
    std::size_t sym_symp = deg * (deg - 1) / 2;
    Involution s;
    s.action = std::move(action);
    s.label = std::move(label);
    Mat diff = mat_sub(s.action, mat_identity(F, n));
    std::size_t dim_sym = n - rank(diff);
    if (F.characteristic() == 2) {
        if (dim_sym != sym_orth)
            throw validation_error("unexpected symmetric element count");
        Mat sum = mat_add(s.action, mat_identity(F, n));
        if (rank(sum) != sym_symp)
            throw validation_error("unexpected alternating element count");
        bool unit_alternating = solve_linear(sum, A.unit()).has_value();
        s.type = unit_alternating ? InvolutionType::symplectic : InvolutionType::orthogonal;
    } else {
        if (dim_sym == sym_orth) s.type = InvolutionType::orthogonal;
        else if (dim_sym == sym_symp) s.type = InvolutionType::symplectic;
        else throw validation_error("unexpected symmetric element count");
    }
    return s;
}

std::pair<StructureAlgebra, Involution> symbol_quaternion(const Field& F, const FieldElement& a,
                                                          const FieldElement& b) {
    if (!(a.field() == F) || !(b.field() == F)) throw validation_error("symbol slot in wrong field");
    std::size_t n = 4;
    auto z = [&] { return vec_zero(F, n); };
    auto e = [&](std::size_t i, const FieldElement& c) {
        Vec v = vec_zero(F, n);
        v[i] = c;
        return v;
    };
    std::vector<std::vector<Vec>> t(n, std::vector<Vec>(n, z()));
    for (std::size_t i = 0; i < n; ++i) {
        t[0][i] = e(i, F.one());
        t[i][0] = e(i, F.one());
    }
    StructureAlgebra A;
    Mat gamma = mat_zero(F, n, n);
    gamma[0][0] = F.one();
    std::string label;
    if (F.characteristic() == 2) {
        if (b.is_zero()) throw validation_error("symbol [a,b) requires b nonzero");
        // Basis 1, u, v, w with u^2 = a + u, v^2 = b, vu = (u+1)v, w = uv.
        t[1][1] = e(0, a);
        t[1][1][1] = F.one();
        t[1][2] = e(3, F.one());
        t[1][3] = e(2, a);
        t[1][3][3] = F.one();
        t[2][1] = e(2, F.one());
        t[2][1][3] = F.one();
        t[2][2] = e(0, b);
        t[2][3] = e(0, b);
        t[2][3][1] = b;
        t[3][1] = e(2, a);
        t[3][2] = e(1, b);
        t[3][3] = e(0, a * b);
        label = "[" + a.str() + "," + b.str() + ")";
        A = StructureAlgebra::make(F, std::move(t), {"1", "u", "v", "w"}, label);
        gamma[0][1] = F.one();
        gamma[1][1] = F.one();
        gamma[2][2] = F.one();
        gamma[3][3] = F.one();
    } else {
        if (a.is_zero() || b.is_zero()) throw validation_error("symbol (a,b) requires nonzero slots");
        // Basis 1, i, j, k with i^2 = a, j^2 = b, ji = -ij, k = ij.
        t[1][1] = e(0, a);
        t[1][2] = e(3, F.one());
        t[1][3] = e(2, a);
        t[2][1] = e(3, -F.one());
        t[2][2] = e(0, b);
        t[2][3] = e(1, -b);
        t[3][1] = e(2, -a);
        t[3][2] = e(1, b);
        t[3][3] = e(0, -(a * b));
        label = "(" + a.str() + "," + b.str() + ")";
        A = StructureAlgebra::make(F, std::move(t), {"1", "i", "j", "k"}, label);
        gamma[1][1] = -F.one();
        gamma[2][2] = -F.one();
        gamma[3][3] = -F.one();
    }
    A.symbol_factors.push_back({a, b});
    Involution g = Involution::make(A, gamma, "conjugation");
    return {std::move(A), std::move(g)};
}

namespace {

// Shared construction of M_d(F) on the basis (1, e_rc for (r,c) != (1,1)).
StructureAlgebra matrix_algebra(const Field& F, std::size_t d, const std::string& label,
                                std::vector<std::pair<std::size_t, std::size_t>>& positions) {
    std::size_t n = d * d;
    positions.clear();
    positions.emplace_back(0, 0); // stands in for the unit
    std::vector<std::string> names{"1"};
    for (std::size_t r = 1; r <= d; ++r)
        for (std::size_t c = 1; c <= d; ++c) {
            if (r == 1 && c == 1) continue;
            positions.emplace_back(r, c);
            names.push_back("e" + std::to_string(r) + std::to_string(c));
        }
    auto index_of = [&](std::size_t r, std::size_t c) -> std::size_t {
        for (std::size_t i = 1; i < positions.size(); ++i)
            if (positions[i].first == r && positions[i].second == c) return i;
        throw validation_error("matrix unit index out of range");
    };
    auto unit_coords = [&](std::size_t r, std::size_t c) {
        // e_11 = 1 - e_22 - ... - e_dd; other matrix units are basis vectors.
        Vec v = vec_zero(F, n);
        if (r == 1 && c == 1) {
            v[0] = F.one();
            for (std::size_t q = 2; q <= d; ++q) v[index_of(q, q)] = -F.one();
        } else {
            v[index_of(r, c)] = F.one();
        }
        return v;
    };
    std::vector<std::vector<Vec>> t(n, std::vector<Vec>(n, vec_zero(F, n)));
    for (std::size_t i = 0; i < n; ++i) {
        Vec ei = vec_zero(F, n);
        ei[i] = F.one();
        t[0][i] = ei;
        t[i][0] = ei;
    }
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j) {
            auto [r, c] = positions[i];
            auto [r2, c2] = positions[j];
            t[i][j] = (c == r2) ? unit_coords(r, c2) : vec_zero(F, n);
        }
    std::vector<Mat> mats;
    mats.push_back(mat_identity(F, d));
    for (std::size_t i = 1; i < n; ++i) {
        Mat m = mat_zero(F, d, d);
        m[positions[i].first - 1][positions[i].second - 1] = F.one();
        mats.push_back(m);
    }
    std::vector<std::string> names_copy = names;
    return StructureAlgebra::make(F, std::move(t), std::move(names_copy), label, std::move(mats));
}

// Involution x -> D^(-1) x^T D on the matrix_algebra basis.
Involution diagonal_adjoint(const StructureAlgebra& A, std::size_t d,
                            const std::vector<std::pair<std::size_t, std::size_t>>& positions,
                            const std::vector<FieldElement>& diag, std::string label) {
    const Field& F = A.field;
    if (diag.size() != d) throw validation_error("adjoint weight count mismatch");
    for (const auto& w : diag) {
        if (!(w.field() == F)) throw validation_error("adjoint weight in wrong field");
        if (w.is_zero()) throw validation_error("adjoint weights must be nonzero");
    }
    std::size_t n = A.dimension;
    auto index_of = [&](std::size_t r, std::size_t c) -> std::size_t {
        for (std::size_t i = 1; i < positions.size(); ++i)
            if (positions[i].first == r && positions[i].second == c) return i;
        throw validation_error("matrix unit index out of range");
    };
    Mat action = mat_zero(F, n, n);
    action[0][0] = F.one();
    for (std::size_t j = 1; j < n; ++j) {
        auto [r, c] = positions[j];
        // e_rc maps to (d_r / d_c) e_cr; (c, r) is never (1,1) here.
        FieldElement w = diag[r - 1] / diag[c - 1];
        action[index_of(c, r)][j] = w;
    }
    return Involution::make(A, std::move(action), std::move(label));
}

} // namespace

std::pair<StructureAlgebra, Involution> matrix_quaternion(const Field& F, const FieldElement& alpha) {
    if (!(alpha.field() == F)) throw validation_error("weight in wrong field");
    if (alpha.is_zero()) throw validation_error("weight must be nonzero");
    std::vector<std::pair<std::size_t, std::size_t>> positions;
    StructureAlgebra A = matrix_algebra(F, 2, "M2", positions);
    Involution s = diagonal_adjoint(A, 2, positions, {F.one(), alpha.inverse()},
                                    "T[" + alpha.str() + "]");
    return {std::move(A), std::move(s)};
}

std::pair<StructureAlgebra, Involution> matrix_biquaternion_adjoint(const Field& F,
                                                                    const std::vector<FieldElement>& d) {
    std::vector<std::pair<std::size_t, std::size_t>> positions;
    StructureAlgebra A = matrix_algebra(F, 4, "M4", positions);
    std::string label = "adjoint[";
    for (std::size_t i = 0; i < d.size(); ++i) label += (i ? "," : "") + d[i].str();
    label += "]";
    Involution s = diagonal_adjoint(A, 4, positions, d, label);
    return {std::move(A), std::move(s)};
}

std::pair<StructureAlgebra, Involution> matrix_biquaternion_transpose(const Field& F) {
    std::vector<std::pair<std::size_t, std::size_t>> positions;
    StructureAlgebra A = matrix_algebra(F, 4, "M4", positions);
    std::vector<FieldElement> ones(4, F.one());
    Involution s = diagonal_adjoint(A, 4, positions, ones, "transpose");
    return {std::move(A), std::move(s)};
}

Involution twisted_conjugation(const StructureAlgebra& Q, const Involution& gamma, const Vec& s) {
    Vec gs = gamma.apply(s);
    if (!vec_eq(gs, s) && !vec_eq(gs, vec_scale(-Q.field.one(), s)))
        throw validation_error("twisting element must satisfy gamma(s) = +-s");
    auto sinv = invert(Q, s);
    if (!sinv) throw validation_error("twisting element is not invertible");
    Mat action = mat_mul(Q.left_rep(s), mat_mul(Q.right_rep(*sinv), gamma.action));
    return Involution::make(Q, std::move(action),
                            "Int(" + Q.element_str(s) + ")*" + gamma.label);
}

std::pair<StructureAlgebra, Involution> tensor_with_involutions(const StructureAlgebra& A,
                                                                const Involution& sA,
                                                                const StructureAlgebra& B,
                                                                const Involution& sB) {
    if (!(A.field == B.field)) throw validation_error("tensor factors over different fields");
    if (A.dimension != 4 || B.dimension != 4)
        throw validation_error("tensor factors must be quaternion algebras");
    const Field& F = A.field;
    std::size_t n = 16;
    auto idx = [&](std::size_t i, std::size_t j) { return i * 4 + j; };
    std::vector<std::vector<Vec>> t(n, std::vector<Vec>(n, vec_zero(F, n)));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t l = 0; l < 4; ++l) {
                    const Vec& pa = A.table[i][k];
                    const Vec& pb = B.table[j][l];
                    Vec& out = t[idx(i, j)][idx(k, l)];
                    for (std::size_t m = 0; m < 4; ++m) {
                        if (pa[m].is_zero()) continue;
                        for (std::size_t q = 0; q < 4; ++q)
                            if (!pb[q].is_zero()) out[idx(m, q)] = out[idx(m, q)] + pa[m] * pb[q];
                    }
                }
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            names.push_back(i == 0 && j == 0 ? "1" : A.basis_names[i] + "." + B.basis_names[j]);
    std::vector<Mat> mats;
    if (A.has_split_model() && B.has_split_model()) {
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                mats.push_back(kron(A.split_matrices[i], B.split_matrices[j], F));
    }
    StructureAlgebra T = StructureAlgebra::make(F, std::move(t), std::move(names),
                                                "(" + A.label + ") x (" + B.label + ")",
                                                std::move(mats));
    T.symbol_factors = A.symbol_factors;
    T.symbol_factors.insert(T.symbol_factors.end(), B.symbol_factors.begin(),
                            B.symbol_factors.end());
    Mat action = mat_zero(F, n, n);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            Vec ca = mat_col(sA.action, i);
            Vec cb = mat_col(sB.action, j);
            for (std::size_t m = 0; m < 4; ++m)
                for (std::size_t q = 0; q < 4; ++q)
                    action[idx(m, q)][idx(i, j)] = ca[m] * cb[q];
        }
    Involution s = Involution::make(T, std::move(action), sA.label + " x " + sB.label);
    return {std::move(T), std::move(s)};
}

namespace {

std::pair<StructureAlgebra, Involution> build_factor(const Field& F, const FactorSpec& fs) {
    if (fs.alg == FactorSpec::Alg::matrix) {
        if (fs.inv != FactorSpec::Inv::weighted_transpose)
            throw validation_error("matrix factor requires a weighted transpose involution");
        return matrix_quaternion(F, F.parse(fs.alpha));
    }
    auto [Q, gamma] = symbol_quaternion(F, F.parse(fs.a), F.parse(fs.b));
    if (fs.inv == FactorSpec::Inv::conjugation) return {std::move(Q), std::move(gamma)};
    if (fs.inv == FactorSpec::Inv::twisted) {
        Involution s = twisted_conjugation(Q, gamma, Q.parse_element(fs.s));
        return {std::move(Q), std::move(s)};
    }
    throw validation_error("symbol factor cannot carry a weighted transpose");
}

} // namespace

std::pair<StructureAlgebra, Involution> build_algebra(const Field& F, const ConstructionSpec& spec) {
    switch (spec.kind) {
    case ConstructionSpec::Kind::factor:
        if (spec.factors.size() != 1) throw validation_error("factor construction needs one factor");
        return build_factor(F, spec.factors[0]);
    case ConstructionSpec::Kind::tensor: {
        if (spec.factors.size() != 2) throw validation_error("tensor construction needs two factors");
        auto [A, sA] = build_factor(F, spec.factors[0]);
        auto [B, sB] = build_factor(F, spec.factors[1]);
        return tensor_with_involutions(A, sA, B, sB);
    }
    case ConstructionSpec::Kind::m4_transpose:
        return matrix_biquaternion_transpose(F);
    case ConstructionSpec::Kind::m4_adjoint: {
        std::vector<FieldElement> d;
        for (const auto& s : spec.adjoint_diag) d.push_back(F.parse(s));
        return matrix_biquaternion_adjoint(F, d);
    }
    }
    throw validation_error("unknown construction kind");
}

Poly reduced_charpoly(const StructureAlgebra& A, const Vec& x) {
    const Field& F = A.field;
    if (A.has_split_model()) return berkowitz_charpoly(A.split_image(x), F);
    Poly full = berkowitz_charpoly(A.left_rep(x), F);
    return poly_monic_root(full, A.degree(), F);
}

FieldElement reduced_norm(const StructureAlgebra& A, const Vec& x) {
    // The reduced characteristic polynomial has even degree, so the constant
    // term is the norm with no sign adjustment.
    return reduced_charpoly(A, x).back();
}

FieldElement reduced_trace(const StructureAlgebra& A, const Vec& x) {
    return -reduced_charpoly(A, x)[1];
}

std::optional<Vec> invert(const StructureAlgebra& A, const Vec& x) {
    auto y = solve_linear(A.left_rep(x), A.unit());
    if (!y) return std::nullopt;
    if (!vec_eq(A.mul(*y, x), A.unit()) || !vec_eq(A.mul(x, *y), A.unit()))
        throw validation_error("one-sided inverse is not two-sided");
    return y;
}

std::vector<Vec> alt_space(const StructureAlgebra& A, const Involution& sigma) {
    Mat diff = mat_sub(mat_identity(A.field, A.dimension), sigma.action);
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < A.dimension; ++j) cols.push_back(mat_col(diff, j));
    return row_space_basis(std::move(cols));
}

std::vector<Vec> centralizer(const StructureAlgebra& A, const std::vector<Vec>& S) {
    std::size_t n = A.dimension;
    if (S.empty()) {
        std::vector<Vec> all;
        for (std::size_t i = 0; i < n; ++i) all.push_back(A.basis_element(i));
        return all;
    }
    Mat stacked;
    for (const Vec& s : S) {
        Mat d = mat_sub(A.left_rep(s), A.right_rep(s));
        for (auto& row : d) stacked.push_back(std::move(row));
    }
    return kernel_basis(std::move(stacked));
}

FieldElement discriminant(const StructureAlgebra& A, const Involution& sigma, std::uint64_t seed) {
    if (sigma.type != InvolutionType::orthogonal)
        throw validation_error("discriminant requires an orthogonal involution");
    const Field& F = A.field;
    std::vector<Vec> alt = alt_space(A, sigma);
    auto try_element = [&](const Vec& x) -> std::optional<FieldElement> {
        if (vec_is_zero(x)) return std::nullopt;
        FieldElement n = reduced_norm(A, x);
        if (n.is_zero()) return std::nullopt;
        return n;
    };
    std::optional<FieldElement> norm;
    for (const Vec& b : alt) {
        if ((norm = try_element(b))) break;
    }
    if (!norm) {
        for (std::size_t i = 0; i < alt.size() && !norm; ++i)
            for (std::size_t j = i + 1; j < alt.size() && !norm; ++j)
                norm = try_element(vec_add(alt[i], alt[j]));
    }
    if (!norm) {
        std::mt19937_64 rng(seed ^ 0x5f3c41a9d2e8b701ULL);
        for (int trial = 0; trial < 200 && !norm; ++trial) {
            Vec x = A.zero_element();
            for (const Vec& b : alt) x = vec_add(x, vec_scale(F.sample(rng, true), b));
            norm = try_element(x);
        }
    }
    if (!norm) throw validation_error("no invertible alternating element found");
    FieldElement sign = (A.degree() / 2) % 2 == 1 ? -F.one() : F.one();
    return (sign * *norm).square_class();
}

bool is_decomposable(const StructureAlgebra& A, const Involution& sigma, std::uint64_t seed) {
    return discriminant(A, sigma, seed).is_square();
}

Involution conjugate_involution(const StructureAlgebra& A, const Involution& sigma, const Vec& a) {
    auto ainv = invert(A, a);
    if (!ainv) throw validation_error("conjugating element is not invertible");
    Vec u = A.mul(a, sigma.apply(a));
    auto uinv = invert(A, u);
    if (!uinv) throw validation_error("conjugating element is not invertible");
    Mat action = mat_mul(A.left_rep(u), mat_mul(A.right_rep(*uinv), sigma.action));
    return Involution::make(A, std::move(action), "Int(" + A.element_str(a) + ")~" + sigma.label);
}

} // namespace pfaff
