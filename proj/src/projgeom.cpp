#include "hermcubic/projgeom.hpp"

#include <algorithm>
#include <string>

#include "hermcubic/errors.hpp"

namespace hermcubic {

Vec normalize(const FieldCtx& ctx, Vec v) {
  auto it = std::find_if(v.begin(), v.end(), [](Elem e) { return e != kZero; });
  if (it == v.end()) throw Error(ErrorCode::InvalidArgument, "zero vector has no projective class");
  const Elem s = ctx.inv(*it);
  for (; it != v.end(); ++it) *it = ctx.mul(*it, s);
  return v;
}

ProjPoint make_point(const FieldCtx& ctx, Vec coords) { return ProjPoint{normalize(ctx, std::move(coords))}; }

Hyperplane make_hyperplane(const FieldCtx& ctx, Vec covector) {
  return Hyperplane{normalize(ctx, std::move(covector))};
}

bool incident(const FieldCtx& ctx, const Hyperplane& h, std::span<const Elem> x) noexcept {
  return dot(ctx, h.covector, x) == kZero;
}

std::uint64_t projective_size(int n, std::uint64_t order) {
  if (n < 0) return 0;
  std::uint64_t total = 0;
  std::uint64_t pw = 1;
  for (int k = 0; k <= n; ++k) {
    total += pw;
    pw *= order;
  }
  return total;
}

ProjectiveSpace::ProjectiveSpace(FieldCtx ctx, int n) : ctx_(std::move(ctx)), n_(n) {
  if (n < 0) throw Error(ErrorCode::OutOfRange, "projective dimension must be >= 0");
  const std::uint64_t order = static_cast<std::uint64_t>(ctx_.order());
  offsets_.assign(static_cast<std::size_t>(n) + 2, 0);
  for (int k = 0; k <= n; ++k) {
    std::uint64_t block = 1;
    for (int i = 0; i < n - k; ++i) block *= order;
    offsets_[k + 1] = offsets_[k] + block;
  }
}

Vec ProjectiveSpace::coords_at(std::uint64_t index) const {
  if (index >= size()) throw Error(ErrorCode::OutOfRange, "point index out of range");
  int k = 0;
  while (offsets_[k + 1] <= index) ++k;
  std::uint64_t rem = index - offsets_[k];
  Vec x(static_cast<std::size_t>(n_) + 1, kZero);
  x[k] = kOne;
  const std::uint64_t order = static_cast<std::uint64_t>(ctx_.order());
  for (int j = n_; j > k; --j) {
    x[j] = Elem{static_cast<std::uint16_t>(rem % order)};
    rem /= order;
  }
  return x;
}

std::uint64_t ProjectiveSpace::index_of(std::span<const Elem> canonical) const {
  if (static_cast<int>(canonical.size()) != n_ + 1) throw Error(ErrorCode::WrongDimension, "index_of: wrong length");
  int k = 0;
  while (k <= n_ && canonical[k] == kZero) ++k;
  if (k > n_ || canonical[k] != kOne) throw Error(ErrorCode::InvalidArgument, "index_of: vector not canonical");
  std::uint64_t rem = 0;
  const std::uint64_t order = static_cast<std::uint64_t>(ctx_.order());
  for (int j = k + 1; j <= n_; ++j) rem = rem * order + canonical[j].index;
  return offsets_[k] + rem;
}

LinearSubspace LinearSubspace::span(const FieldCtx& ctx, int n, const Matrix& rows) {
  if (rows.rows() > 0 && rows.cols() != n + 1) throw Error(ErrorCode::WrongDimension, "span: wrong column count");
  LinearSubspace s;
  s.n_ = n;
  if (rows.rows() == 0) {
    s.basis_ = Matrix(0, n + 1);
    return s;
  }
  Echelon e = row_reduce(ctx, rows);
  s.basis_ = std::move(e.rref);
  s.pivots_ = std::move(e.pivots);
  return s;
}

LinearSubspace LinearSubspace::empty(int n) {
  LinearSubspace s;
  s.n_ = n;
  s.basis_ = Matrix(0, n + 1);
  return s;
}

LinearSubspace LinearSubspace::whole(int n) {
  LinearSubspace s;
  s.n_ = n;
  s.basis_ = Matrix::identity(n + 1);
  for (int i = 0; i <= n; ++i) s.pivots_.push_back(i);
  return s;
}

bool LinearSubspace::contains(const FieldCtx& ctx, std::span<const Elem> x) const {
  if (basis_.rows() == 0) return false;
  // Reduce x against the RREF rows; x is in the span iff the remainder vanishes.
  Vec r(x.begin(), x.end());
  for (int i = 0; i < basis_.rows(); ++i) {
    const Elem f = r[pivots_[i]];
    if (f == kZero) continue;
    const Elem nf = ctx.neg(f);
    for (int c = 0; c < basis_.cols(); ++c) r[c] = ctx.add(r[c], ctx.mul(nf, basis_(i, c)));
  }
  return std::all_of(r.begin(), r.end(), [](Elem e) { return e == kZero; });
}

Matrix LinearSubspace::annihilator(const FieldCtx& ctx) const {
  if (basis_.rows() == 0) return Matrix::identity(n_ + 1);
  return null_space(ctx, basis_);
}

std::uint64_t hyperplanes_through_count(int n, int q) {
  return projective_size(n - 1, static_cast<std::uint64_t>(q) * q);
}

std::vector<Hyperplane> hyperplanes_through(const FieldCtx& ctx, const ProjPoint& p) {
  const int n = p.dim();
  Matrix row(1, n + 1);
  std::copy(p.coords.begin(), p.coords.end(), row.row(0).begin());
  const Matrix k = null_space(ctx, row);  // covectors a with a.p = 0
  std::vector<Hyperplane> out;
  for_each_point_in(ctx, LinearSubspace::span(ctx, n, k),
                    [&](std::span<const Elem> a) { out.push_back(Hyperplane{Vec(a.begin(), a.end())}); });
  const ProjectiveSpace dual(ctx, n);
  std::sort(out.begin(), out.end(), [&](const Hyperplane& a, const Hyperplane& b) {
    return dual.index_of(a.covector) < dual.index_of(b.covector);
  });
  return out;
}

std::vector<Hyperplane> pencil_through(const FieldCtx& ctx, const LinearSubspace& s) {
  const int n = s.ambient_dim();
  if (s.dim() != n - 2) {
    throw Error(ErrorCode::WrongDimension, "pencil_through needs dim n-2, got " + std::to_string(s.dim()));
  }
  const Matrix ann = s.annihilator(ctx);
  std::vector<Hyperplane> out;
  for_each_point_in(ctx, LinearSubspace::span(ctx, n, ann),
                    [&](std::span<const Elem> a) { out.push_back(Hyperplane{Vec(a.begin(), a.end())}); });
  const ProjectiveSpace dual(ctx, n);
  std::sort(out.begin(), out.end(), [&](const Hyperplane& a, const Hyperplane& b) {
    return dual.index_of(a.covector) < dual.index_of(b.covector);
  });
  return out;
}

LinearSubspace intersect(const FieldCtx& ctx, std::span<const Hyperplane> hyperplanes) {
  if (hyperplanes.empty()) throw Error(ErrorCode::InvalidArgument, "intersect needs at least one hyperplane");
  const int n = hyperplanes.front().dim();
  Matrix stack(static_cast<int>(hyperplanes.size()), n + 1);
  for (int i = 0; i < stack.rows(); ++i) {
    if (hyperplanes[i].dim() != n) throw Error(ErrorCode::WrongDimension, "intersect: mixed dimensions");
    std::copy(hyperplanes[i].covector.begin(), hyperplanes[i].covector.end(), stack.row(i).begin());
  }
  return LinearSubspace::span(ctx, n, null_space(ctx, stack));
}

LinearSubspace intersect(const FieldCtx& ctx, std::initializer_list<Hyperplane> hyperplanes) {
  return intersect(ctx, std::span<const Hyperplane>(hyperplanes.begin(), hyperplanes.size()));
}

bool membership(const FieldCtx& ctx, const ProjPoint& p, const LinearSubspace& s) { return s.contains(ctx, p); }

Elem random_element(const FieldCtx& ctx, Rng& rng) {
  return Elem{static_cast<std::uint16_t>(rng() % static_cast<std::uint64_t>(ctx.order()))};
}

Vec random_nonzero_vector(const FieldCtx& ctx, int len, Rng& rng) {
  Vec v(static_cast<std::size_t>(len));
  do {
    for (auto& e : v) e = random_element(ctx, rng);
  } while (std::all_of(v.begin(), v.end(), [](Elem e) { return e == kZero; }));
  return v;
}

LinearSubspace random_subspace(const FieldCtx& ctx, int n, int m, Rng& rng) {
  if (m < -1 || m > n) throw Error(ErrorCode::OutOfRange, "random_subspace: dimension out of range");
  if (m < 0) return LinearSubspace::empty(n);
  for (;;) {
    Matrix rows(m + 1, n + 1);
    for (int r = 0; r <= m; ++r)
      for (int c = 0; c <= n; ++c) rows(r, c) = random_element(ctx, rng);
    LinearSubspace s = LinearSubspace::span(ctx, n, rows);
    if (s.dim() == m) return s;
  }
}

}  // namespace hermcubic
