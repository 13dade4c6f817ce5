#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "hermcubic/field.hpp"
#include "hermcubic/matrix.hpp"

namespace hermcubic {

using Rng = std::mt19937_64;

/// Point of P^n(F_{q^2}) in canonical form: first nonzero coordinate is 1.
struct ProjPoint {
  Vec coords;

  int dim() const noexcept { return static_cast<int>(coords.size()) - 1; }
  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
};

/// Hyperplane V(sum a_i x_i) with normalized covector (first nonzero entry 1).
struct Hyperplane {
  Vec covector;

  int dim() const noexcept { return static_cast<int>(covector.size()) - 1; }
  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

/// Scales v so that its first nonzero entry is 1. Throws InvalidArgument on the zero vector.
Vec normalize(const FieldCtx& ctx, Vec v);
ProjPoint make_point(const FieldCtx& ctx, Vec coords);
Hyperplane make_hyperplane(const FieldCtx& ctx, Vec covector);

bool incident(const FieldCtx& ctx, const Hyperplane& h, std::span<const Elem> x) noexcept;

/// |P^n(F_Q)| = (Q^{n+1}-1)/(Q-1); 0 for n < 0.
std::uint64_t projective_size(int n, std::uint64_t order);

/// Canonical ranking of P^n(F_{q^2}).
///
/// Points are grouped by the position k of their leading 1 (k = 0 first);
/// inside a group the trailing coordinates are read as base-q^2 digits with
/// x_n least significant. The same order ranks hyperplanes by covector.
class ProjectiveSpace {
 public:
  ProjectiveSpace(FieldCtx ctx, int n);

  int dim() const noexcept { return n_; }
  const FieldCtx& field() const noexcept { return ctx_; }
  std::uint64_t size() const noexcept { return offsets_.back(); }

  Vec coords_at(std::uint64_t index) const;
  ProjPoint point(std::uint64_t index) const { return ProjPoint{coords_at(index)}; }
  Hyperplane hyperplane(std::uint64_t index) const { return Hyperplane{coords_at(index)}; }
  /// Rank of a canonical vector.
  std::uint64_t index_of(std::span<const Elem> canonical) const;

  /// fn(index, coords) for each point with index in [begin, end).
  template <class Fn>
  void for_each(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
    if (begin >= end) return;
    Vec x = coords_at(begin);
    int lead = 0;
    while (x[lead] == kZero) ++lead;
    const std::uint16_t order = static_cast<std::uint16_t>(ctx_.order());
    for (std::uint64_t idx = begin;;) {
      fn(idx, std::span<const Elem>(x));
      if (++idx == end) break;
      int j = n_;
      while (j > lead) {
        if (x[j].index + 1 < order) {
          ++x[j].index;
          break;
        }
        x[j] = kZero;
        --j;
      }
      if (j == lead) {
        x[lead] = kZero;
        ++lead;
        x[lead] = kOne;
      }
    }
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for_each(0, size(), std::forward<Fn>(fn));
  }

 private:
  FieldCtx ctx_;
  int n_;
  std::vector<std::uint64_t> offsets_;  // offsets_[k] = first index with leading 1 at k
};

/// Linear subspace of P^n stored as the RREF of a spanning set; dim -1 is the empty subspace.
class LinearSubspace {
 public:
  static LinearSubspace span(const FieldCtx& ctx, int n, const Matrix& rows);
  static LinearSubspace empty(int n);
  static LinearSubspace whole(int n);

  int dim() const noexcept { return basis_.rows() - 1; }
  int ambient_dim() const noexcept { return n_; }
  const Matrix& basis() const noexcept { return basis_; }
  const std::vector<int>& pivots() const noexcept { return pivots_; }

  bool contains(const FieldCtx& ctx, std::span<const Elem> x) const;
  bool contains(const FieldCtx& ctx, const ProjPoint& p) const { return contains(ctx, p.coords); }
  /// Covectors vanishing on the subspace, as rows (n - dim of them).
  Matrix annihilator(const FieldCtx& ctx) const;

  friend bool operator==(const LinearSubspace&, const LinearSubspace&) = default;

 private:
  int n_ = 0;
  Matrix basis_;
  std::vector<int> pivots_;
};

/// fn(coords) for every point of the subspace, each in canonical form.
template <class Fn>
void for_each_point_in(const FieldCtx& ctx, const LinearSubspace& s, Fn&& fn) {
  if (s.dim() < 0) return;
  const Matrix& b = s.basis();
  const ProjectiveSpace params(ctx, s.dim());
  Vec x(static_cast<std::size_t>(b.cols()));
  params.for_each([&](std::uint64_t, std::span<const Elem> y) {
    std::fill(x.begin(), x.end(), kZero);
    for (int r = 0; r < b.rows(); ++r) {
      if (y[r] == kZero) continue;
      for (int c = 0; c < b.cols(); ++c) x[c] = ctx.add(x[c], ctx.mul(y[r], b(r, c)));
    }
    fn(std::span<const Elem>(x));
  });
}

/// (q^{2n}-1)/(q^2-1): hyperplanes through a point of P^n.
std::uint64_t hyperplanes_through_count(int n, int q);
std::vector<Hyperplane> hyperplanes_through(const FieldCtx& ctx, const ProjPoint& p);

/// The q^2+1 hyperplanes containing a codimension-2 subspace, in canonical order.
std::vector<Hyperplane> pencil_through(const FieldCtx& ctx, const LinearSubspace& s);

LinearSubspace intersect(const FieldCtx& ctx, std::span<const Hyperplane> hyperplanes);
LinearSubspace intersect(const FieldCtx& ctx, std::initializer_list<Hyperplane> hyperplanes);

bool membership(const FieldCtx& ctx, const ProjPoint& p, const LinearSubspace& s);

Elem random_element(const FieldCtx& ctx, Rng& rng);
Vec random_nonzero_vector(const FieldCtx& ctx, int len, Rng& rng);
LinearSubspace random_subspace(const FieldCtx& ctx, int n, int m, Rng& rng);

}  // namespace hermcubic
