#include "relcone/linalg.hpp"

#include <stdexcept>

namespace relcone {

bool is_zero(const Vector& v) {
    for (const auto& x : v) {
        if (!x.is_zero()) return false;
    }
    return true;
}

Vector unit_vector(std::size_t n, std::size_t i) {
    Vector v(n);
    v.at(i) = Cyclotomic(1);
    return v;
}

Matrix identity(std::size_t n) {
    Matrix m;
    for (std::size_t i = 0; i < n; ++i) m.push_back(unit_vector(n, i));
    return m;
}

Vector operator*(const Matrix& m, const Vector& v) {
    Vector out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (!m[i][j].is_zero() && !v[j].is_zero()) out[i] += m[i][j] * v[j];
        }
    }
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.empty()) return {};
    const std::size_t cols = b.empty() ? 0 : b[0].size();
    Matrix out(a.size(), Vector(cols));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b.size()) throw std::invalid_argument("matrix dimension mismatch");
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < cols; ++j) {
                if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return out;
}

Matrix rref(Matrix rows) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows[0].size();
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < rows.size(); ++col) {
        std::size_t found = pivot_row;
        while (found < rows.size() && rows[found][col].is_zero()) ++found;
        if (found == rows.size()) continue;
        std::swap(rows[pivot_row], rows[found]);
        const Cyclotomic inv = rows[pivot_row][col].inverse();
        for (auto& x : rows[pivot_row]) x *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot_row || rows[r][col].is_zero()) continue;
            const Cyclotomic f = rows[r][col];
            for (std::size_t j = col; j < cols; ++j) {
                if (!rows[pivot_row][j].is_zero()) rows[r][j] -= f * rows[pivot_row][j];
            }
        }
        ++pivot_row;
    }
    rows.resize(pivot_row);
    return rows;
}

std::size_t rank(const Matrix& rows) { return rref(rows).size(); }

std::optional<Matrix> inverse(const Matrix& m) {
    const std::size_t n = m.size();
    Matrix aug(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw std::invalid_argument("inverse of a non-square matrix");
        aug[i] = m[i];
        aug[i].resize(2 * n);
        aug[i][n + i] = Cyclotomic(1);
    }
    Matrix reduced = rref(std::move(aug));
    if (reduced.size() < n) return std::nullopt;
    Matrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!reduced[i][i].is_one()) return std::nullopt;
        out[i] = Vector(reduced[i].begin() + n, reduced[i].end());
    }
    return out;
}

Vector normalized_leading_one(Vector v) {
    for (const auto& x : v) {
        if (x.is_zero()) continue;
        const Cyclotomic inv = x.inverse();
        for (auto& y : v) y *= inv;
        break;
    }
    return v;
}

std::string to_string(const Vector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].str();
    }
    return out + ")";
}

}  // namespace relcone
