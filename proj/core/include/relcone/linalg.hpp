#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relcone/cyclotomic.hpp"

namespace relcone {

using Vector = std::vector<Cyclotomic>;
// Row-major; every row has the same length.
using Matrix = std::vector<Vector>;

bool is_zero(const Vector& v);
Vector unit_vector(std::size_t n, std::size_t i);
Matrix identity(std::size_t n);

Vector operator*(const Matrix& m, const Vector& v);
Matrix operator*(const Matrix& a, const Matrix& b);

/// Reduced row-echelon form with zero rows dropped. Two row sets span the
/// same subspace iff their reduced forms are equal.
Matrix rref(Matrix rows);
std::size_t rank(const Matrix& rows);

/// Gauss-Jordan inverse; nullopt for singular input.
std::optional<Matrix> inverse(const Matrix& m);

/// Scales v so that its first nonzero entry is 1.
Vector normalized_leading_one(Vector v);

std::string to_string(const Vector& v);

}  // namespace relcone
