#include "pfaff/linalg.hpp"

#include "pfaff/errors.hpp"

namespace pfaff {

Vec vec_zero(const Field& F, std::size_t n) { return Vec(n, F.zero()); }

Vec vec_add(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec vec_scale(const FieldElement& c, const Vec& a) {
    Vec r(a);
    for (auto& x : r) x *= c;
    return r;
}

bool vec_is_zero(const Vec& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

bool vec_eq(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

Mat mat_zero(const Field& F, std::size_t rows, std::size_t cols) {
    return Mat(rows, Vec(cols, F.zero()));
}

Mat mat_identity(const Field& F, std::size_t n) {
    Mat m = mat_zero(F, n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = F.one();
    return m;
}

Mat mat_add(const Mat& a, const Mat& b) {
    Mat r(a);
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r[i].size(); ++j) r[i][j] += b[i][j];
    return r;
}

Mat mat_sub(const Mat& a, const Mat& b) {
    Mat r(a);
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r[i].size(); ++j) r[i][j] -= b[i][j];
    return r;
}

Mat mat_scale(const FieldElement& c, const Mat& a) {
    Mat r(a);
    for (auto& row : r)
        for (auto& x : row) x *= c;
    return r;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    std::size_t n = a.size(), m = b[0].size(), k = b.size();
    const Field& F = a[0][0].field();
    Mat r = mat_zero(F, n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

Vec mat_vec(const Mat& a, const Vec& v) {
    const Field& F = a[0][0].field();
    Vec r = vec_zero(F, a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!a[i][j].is_zero() && !v[j].is_zero()) r[i] += a[i][j] * v[j];
    return r;
}

Mat mat_transpose(const Mat& a) {
    std::size_t n = a.size(), m = a[0].size();
    const Field& F = a[0][0].field();
    Mat r = mat_zero(F, m, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) r[j][i] = a[i][j];
    return r;
}

bool mat_eq(const Mat& a, const Mat& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!vec_eq(a[i], b[i])) return false;
    return true;
}

bool mat_is_zero(const Mat& a) {
    for (const auto& row : a)
        if (!vec_is_zero(row)) return false;
    return true;
}

namespace {

// Row echelon reduction in place; returns pivot columns. When track != nullptr the
// same row operations are applied to it (used for inverses and solving).
std::vector<std::size_t> echelonize(Mat& a, Mat* track) {
    std::vector<std::size_t> pivots;
    if (a.empty()) return pivots;
    std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (!a[i][c].is_zero()) { pivot = i; break; }
        if (pivot == rows) continue;
        std::swap(a[pivot], a[r]);
        if (track) std::swap((*track)[pivot], (*track)[r]);
        FieldElement inv = a[r][c].inverse();
        for (auto& x : a[r]) x *= inv;
        if (track)
            for (auto& x : (*track)[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            FieldElement f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
            if (track)
                for (std::size_t j = 0; j < (*track)[i].size(); ++j)
                    (*track)[i][j] -= f * (*track)[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

FieldElement det(Mat a) {
    if (a.empty()) throw field_error("determinant of empty matrix");
    const Field& F = a[0][0].field();
    std::size_t n = a.size();
    FieldElement result = F.one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = n;
        for (std::size_t i = c; i < n; ++i)
            if (!a[i][c].is_zero()) { pivot = i; break; }
        if (pivot == n) return F.zero();
        if (pivot != c) {
            std::swap(a[pivot], a[c]);
            result = -result;
        }
        result *= a[c][c];
        FieldElement inv = a[c][c].inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c].is_zero()) continue;
            FieldElement f = a[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return result;
}

std::size_t rank(Mat a) { return echelonize(a, nullptr).size(); }

std::optional<Vec> solve_linear(Mat a, Vec b) {
    std::size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
    const Field& F = a[0][0].field();
    Mat rhs(rows, Vec(1, F.zero()));
    for (std::size_t i = 0; i < rows; ++i) rhs[i][0] = b[i];
    std::vector<std::size_t> pivots = echelonize(a, &rhs);
    Vec x = vec_zero(F, cols);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = rhs[r][0];
    // Consistency: rows past the pivot rows must have zero right-hand side.
    for (std::size_t r = pivots.size(); r < rows; ++r)
        if (!rhs[r][0].is_zero()) return std::nullopt;
    return x;
}

std::vector<Vec> kernel_basis(Mat a) {
    std::size_t cols = a.empty() ? 0 : a[0].size();
    const Field& F = a[0][0].field();
    std::vector<std::size_t> pivots = echelonize(a, nullptr);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        Vec v = vec_zero(F, cols);
        v[free] = F.one();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Mat> mat_inverse(Mat a) {
    std::size_t n = a.size();
    const Field& F = a[0][0].field();
    Mat inv = mat_identity(F, n);
    std::vector<std::size_t> pivots = echelonize(a, &inv);
    if (pivots.size() != n) return std::nullopt;
    return inv;
}

std::vector<Vec> row_space_basis(std::vector<Vec> rows) {
    if (rows.empty()) return {};
    Mat m(rows.begin(), rows.end());
    std::vector<std::size_t> pivots = echelonize(m, nullptr);
    std::vector<Vec> basis;
    for (std::size_t r = 0; r < pivots.size(); ++r) basis.push_back(m[r]);
    return basis;
}

bool in_row_space(const std::vector<Vec>& echelon, const Vec& v) {
    if (vec_is_zero(v)) return true;
    Vec w = v;
    for (const auto& row : echelon) {
        std::size_t lead = row.size();
        for (std::size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero()) { lead = j; break; }
        if (lead == row.size()) continue;
        if (!w[lead].is_zero()) {
            FieldElement f = w[lead] * row[lead].inverse();
            for (std::size_t j = 0; j < w.size(); ++j) w[j] -= f * row[j];
        }
    }
    return vec_is_zero(w);
}

std::vector<FieldElement> berkowitz_charpoly(const Mat& a, const Field& F) {
    std::size_t n = a.size();
    if (n == 0) return {F.one()};
    // Stage m processes the leading principal (m+1)x(m+1) block; vec holds the
    // characteristic polynomial coefficients of the current block, descending.
    std::vector<FieldElement> vec{F.one(), -a[0][0]};
    for (std::size_t m = 1; m < n; ++m) {
        // Toeplitz column entries t[0..m+1]: 1, -a_mm, -(R w), -(R M w), ...
        // with R the row a[m][0..m-1], C the column a[0..m-1][m], M the m x m block.
        std::vector<FieldElement> t;
        t.reserve(m + 2);
        t.push_back(F.one());
        t.push_back(-a[m][m]);
        Vec w(m, F.zero());
        for (std::size_t i = 0; i < m; ++i) w[i] = a[i][m];
        for (std::size_t step = 0; step + 2 <= m + 1; ++step) {
            FieldElement dot = F.zero();
            for (std::size_t i = 0; i < m; ++i) dot += a[m][i] * w[i];
            t.push_back(-dot);
            if (step + 3 > m + 1) break;
            Vec next(m, F.zero());
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = 0; j < m; ++j) {
                    if (a[i][j].is_zero() || w[j].is_zero()) continue;
                    next[i] += a[i][j] * w[j];
                }
            }
            w = std::move(next);
        }
        std::vector<FieldElement> out(vec.size() + 1, F.zero());
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = 0; j < vec.size(); ++j) {
                if (i + j >= out.size()) continue;
                if (!t[i].is_zero() && !vec[j].is_zero()) out[i + j] += t[i] * vec[j];
            }
        vec = std::move(out);
    }
    return vec;
}

} // namespace pfaff
