#pragma once

#include <optional>
#include <vector>

#include "pfaff/field.hpp"

namespace pfaff {

using Vec = std::vector<FieldElement>;
using Mat = std::vector<Vec>;

Vec vec_zero(const Field& F, std::size_t n);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const FieldElement& c, const Vec& a);
bool vec_is_zero(const Vec& a);
bool vec_eq(const Vec& a, const Vec& b);

Mat mat_zero(const Field& F, std::size_t rows, std::size_t cols);
Mat mat_identity(const Field& F, std::size_t n);
Mat mat_add(const Mat& a, const Mat& b);
Mat mat_sub(const Mat& a, const Mat& b);
Mat mat_scale(const FieldElement& c, const Mat& a);
Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_vec(const Mat& a, const Vec& v);
Mat mat_transpose(const Mat& a);
bool mat_eq(const Mat& a, const Mat& b);
bool mat_is_zero(const Mat& a);

// Exact Gaussian elimination; pivots are the first nonzero entries scanned in order.
FieldElement det(Mat a);
std::size_t rank(Mat a);

// One solution of a*x = b if consistent.
std::optional<Vec> solve_linear(Mat a, Vec b);

// Basis of the right null space, deterministic order.
std::vector<Vec> kernel_basis(Mat a);

std::optional<Mat> mat_inverse(Mat a);

// Echelon basis of the span of the given row vectors.
std::vector<Vec> row_space_basis(std::vector<Vec> rows);

// True when v lies in the span of the echelon basis rows.
bool in_row_space(const std::vector<Vec>& echelon, const Vec& v);

// Division-free characteristic polynomial of a square matrix.
// Coefficients descend from the leading term: out[0] = 1, out[n] = det(-a).
std::vector<FieldElement> berkowitz_charpoly(const Mat& a, const Field& F);

} // namespace pfaff
