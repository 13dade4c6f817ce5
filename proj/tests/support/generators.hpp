#pragma once

#include <vector>

#include "hermcubic/field.hpp"
#include "hermcubic/hermitian.hpp"
#include "hermcubic/matrix.hpp"
#include "hermcubic/projgeom.hpp"
#include "oracle.hpp"

namespace gen {

using namespace hermcubic;

inline Elem subfield_element(const FieldCtx& ctx, Rng& rng) {
  const auto sub = ctx.subfield_elements();
  return sub[rng() % sub.size()];
}

/// Uniform Hermitian matrix (diagonal in F_q, h_ji = h_ij^q), redrawn if zero.
inline Matrix hermitian_matrix(const FieldCtx& ctx, int len, Rng& rng) {
  for (;;) {
    Matrix h(len, len);
    for (int i = 0; i < len; ++i) {
      h(i, i) = subfield_element(ctx, rng);
      for (int j = i + 1; j < len; ++j) {
        h(i, j) = random_element(ctx, rng);
        h(j, i) = ctx.frobenius(h(i, j));
      }
    }
    if (!h.is_zero()) return h;
  }
}

inline Matrix invertible_matrix(const FieldCtx& ctx, int len, Rng& rng) {
  for (;;) {
    Matrix m(len, len);
    for (int i = 0; i < len; ++i)
      for (int j = 0; j < len; ++j) m(i, j) = random_element(ctx, rng);
    if (rank(ctx, m) == len) return m;
  }
}

/// P D P^{(q)T} with D = diag(1..1, 0..0) of rank r and P invertible: a random form of rank r.
inline HermitianForm form_of_rank(const FieldCtx& ctx, int n, int r, Rng& rng) {
  const Matrix p = invertible_matrix(ctx, n + 1, rng);
  Matrix d(n + 1, n + 1);
  for (int i = 0; i < r; ++i) d(i, i) = kOne;
  return HermitianForm(ctx, multiply(ctx, multiply(ctx, p, d), adjoint(ctx, p)));
}

inline HermitianForm nondegenerate_form(const FieldCtx& ctx, int n, Rng& rng) { return form_of_rank(ctx, n, n + 1, rng); }

inline oracle::Mat to_oracle(const Matrix& m) {
  oracle::Mat out(m.rows(), std::vector<int>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).index;
  return out;
}

inline std::vector<int> to_oracle(const Vec& v) {
  std::vector<int> out;
  for (Elem e : v) out.push_back(e.index);
  return out;
}

/// Three distinct random hyperplanes.
inline std::vector<Hyperplane> hyperplane_triple(const FieldCtx& ctx, int n, Rng& rng) {
  for (;;) {
    std::vector<Hyperplane> hs;
    for (int i = 0; i < 3; ++i) hs.push_back(make_hyperplane(ctx, random_nonzero_vector(ctx, n + 1, rng)));
    if (hs[0] != hs[1] && hs[0] != hs[2] && hs[1] != hs[2]) return hs;
  }
}

}  // namespace gen
