#include "hermcubic/matrix.hpp"

#include <algorithm>

#include "hermcubic/errors.hpp"

namespace hermcubic {

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return {};
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int r = 0; r < m.rows(); ++r) {
    if (static_cast<int>(rows[r].size()) != m.cols()) {
      throw Error(ErrorCode::WrongDimension, "ragged rows");
    }
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == kZero; });
}

void Matrix::swap_rows(int a, int b) noexcept {
  if (a == b) return;
  std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
}

Elem dot(const FieldCtx& ctx, std::span<const Elem> a, std::span<const Elem> b) noexcept {
  Elem s = kZero;
  for (std::size_t i = 0; i < a.size(); ++i) s = ctx.add(s, ctx.mul(a[i], b[i]));
  return s;
}

Matrix multiply(const FieldCtx& ctx, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::WrongDimension, "multiply: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const Elem aik = a(i, k);
      if (aik == kZero) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) = ctx.add(c(i, j), ctx.mul(aik, b(k, j)));
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix conjugate(const FieldCtx& ctx, const Matrix& a) {
  Matrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = ctx.frobenius(a(i, j));
  return c;
}

Matrix adjoint(const FieldCtx& ctx, const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = ctx.frobenius(a(i, j));
  return t;
}

Echelon row_reduce(const FieldCtx& ctx, Matrix a) {
  Echelon out;
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < a.rows(); ++i) {
      if (a(i, c) != kZero) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    a.swap_rows(r, piv);
    const Elem scale = ctx.inv(a(r, c));
    for (int j = c; j < a.cols(); ++j) a(r, j) = ctx.mul(a(r, j), scale);
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      const Elem f = a(i, c);
      if (f == kZero) continue;
      const Elem nf = ctx.neg(f);
      for (int j = c; j < a.cols(); ++j) a(i, j) = ctx.add(a(i, j), ctx.mul(nf, a(r, j)));
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rref = Matrix(r, a.cols());
  for (int i = 0; i < r; ++i) std::copy(a.row(i).begin(), a.row(i).end(), out.rref.row(i).begin());
  return out;
}

int rank(const FieldCtx& ctx, const Matrix& a) { return row_reduce(ctx, a).rank(); }

Matrix null_space(const FieldCtx& ctx, const Matrix& a) {
  const Echelon e = row_reduce(ctx, a);
  const int n = a.cols();
  std::vector<char> is_pivot(n, 0);
  for (int c : e.pivots) is_pivot[c] = 1;
  std::vector<int> free_cols;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  Matrix basis(static_cast<int>(free_cols.size()), n);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const int f = free_cols[k];
    basis(static_cast<int>(k), f) = kOne;
    for (int r = 0; r < e.rank(); ++r) basis(static_cast<int>(k), e.pivots[r]) = ctx.neg(e.rref(r, f));
  }
  return row_reduce(ctx, basis).rref;
}

std::optional<Matrix> inverse(const FieldCtx& ctx, const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::WrongDimension, "inverse of non-square matrix");
  const int n = a.rows();
  Matrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = kOne;
  }
  const Echelon e = row_reduce(ctx, aug);
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = e.rref(i, n + j);
  return inv;
}

}  // namespace hermcubic
