#pragma once

#include <optional>
#include <vector>

#include "dvr/field.hpp"

namespace dvr {

using Row = std::vector<Scalar>;
using Matrix = std::vector<Row>;

Matrix zero_matrix(Field f, size_t rows, size_t cols);
// In-place reduced row echelon form; returns pivot columns.
std::vector<size_t> rref(Matrix& m);
size_t rank(Matrix m);
// Basis of {x : m x = 0}.
std::vector<Row> nullspace(Matrix m, size_t cols);
// Some solution of m x = b, if any.
std::optional<Row> solve(const Matrix& m, const Row& b);
Scalar determinant(Matrix m);
std::optional<Matrix> inverse(const Matrix& m);

}  // namespace dvr
