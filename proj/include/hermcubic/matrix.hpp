#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hermcubic/field.hpp"

namespace hermcubic {

using Vec = std::vector<Elem>;

/// Dense row-major matrix over F_{q^2}. Arithmetic goes through a FieldCtx.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = kOne;
    return m;
  }

  static Matrix from_rows(const std::vector<Vec>& rows);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  Elem& operator()(int r, int c) noexcept { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  Elem operator()(int r, int c) const noexcept { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  std::span<Elem> row(int r) noexcept { return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)}; }
  std::span<const Elem> row(int r) const noexcept {
    return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
  }

  bool is_zero() const noexcept;
  void swap_rows(int a, int b) noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Elem> data_;
};

Elem dot(const FieldCtx& ctx, std::span<const Elem> a, std::span<const Elem> b) noexcept;

Matrix multiply(const FieldCtx& ctx, const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
/// Entrywise Frobenius, the H^{(q)} of a matrix.
Matrix conjugate(const FieldCtx& ctx, const Matrix& a);
/// conjugate(transpose(a)).
Matrix adjoint(const FieldCtx& ctx, const Matrix& a);

struct Echelon {
  Matrix rref;              // reduced row-echelon form, zero rows removed
  std::vector<int> pivots;  // pivot column of each row
  int rank() const noexcept { return static_cast<int>(pivots.size()); }
};

Echelon row_reduce(const FieldCtx& ctx, Matrix a);
int rank(const FieldCtx& ctx, const Matrix& a);

/// Rows form a basis (in RREF) of {x : a x = 0}.
Matrix null_space(const FieldCtx& ctx, const Matrix& a);

std::optional<Matrix> inverse(const FieldCtx& ctx, const Matrix& a);

}  // namespace hermcubic
