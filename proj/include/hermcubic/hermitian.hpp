#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hermcubic/bitset.hpp"
#include "hermcubic/field.hpp"
#include "hermcubic/matrix.hpp"
#include "hermcubic/parallel.hpp"
#include "hermcubic/projgeom.hpp"

namespace hermcubic {

/// Hermitian form x^T H x^{(q)} on P^n(F_{q^2}), with H^T = H^{(q)} and H != 0.
class HermitianForm {
 public:
  /// Throws InvalidArgument if h is zero or not Hermitian.
  HermitianForm(FieldCtx ctx, Matrix h);

  /// x_0^{q+1} + ... + x_n^{q+1}.
  static HermitianForm standard(FieldCtx ctx, int n);
  /// x_0^{q+1} + ... + x_{r-1}^{q+1} on P^n, i.e. identity_r ⊕ 0.
  static HermitianForm of_rank(FieldCtx ctx, int n, int r);

  int dim() const noexcept { return h_.rows() - 1; }
  const FieldCtx& field() const noexcept { return ctx_; }
  const Matrix& matrix() const noexcept { return h_; }
  int rank() const noexcept { return rank_; }
  bool nondegenerate() const noexcept { return rank_ == h_.rows(); }
  bool diagonal() const noexcept { return diagonal_; }
  /// H^{-1}, present iff the form is non-degenerate.
  const std::optional<Matrix>& inverse_matrix() const noexcept { return inverse_; }

 private:
  FieldCtx ctx_;
  Matrix h_;
  int rank_ = 0;
  bool diagonal_ = false;
  std::optional<Matrix> inverse_;
};

Elem evaluate(const HermitianForm& f, std::span<const Elem> x);
inline Elem evaluate(const HermitianForm& f, const ProjPoint& p) { return evaluate(f, p.coords); }
inline bool contains(const HermitianForm& f, std::span<const Elem> x) { return evaluate(f, x) == kZero; }
inline bool contains(const HermitianForm& f, const ProjPoint& p) { return contains(f, p.coords); }

int rank(const HermitianForm& f);

/// Certificate that transform * H * transform^{(q)T} = diag(1,...,1,0,...,0) with `rank` ones.
struct CongruenceReduction {
  Matrix transform;
  int rank = 0;
};

CongruenceReduction congruence_reduce(const HermitianForm& f);

/// |U_n(F_{q^2})| for the non-degenerate variety; 0 for n <= 0.
std::uint64_t nondegenerate_count(int n, int q);

/// |Π_{n-r} U_{r-1}|, the point count of a rank-r form on P^n. Requires 1 <= r <= n+1.
std::uint64_t count_points_formula(int n, int q, int r);

/// Point count of a rank-r form on P^m, allowing r = 0 (the whole of P^m).
std::uint64_t section_size(int m, int q, int r);

/// Exact |V(f)(F_{q^2})| by scanning P^n. Throws BudgetExceeded.
std::uint64_t count_points_enum(const HermitianForm& f, const RunLimits& limits = {});

/// V(x^T H p^{(q)}). Throws NotOnVariety.
Hyperplane tangent_hyperplane(const HermitianForm& f, const ProjPoint& p);

enum class Tangency { Tangent, NonTangent };

constexpr const char* to_string(Tangency t) { return t == Tangency::Tangent ? "tangent" : "non-tangent"; }

struct TangencyReport {
  Tangency kind = Tangency::NonTangent;
  ProjPoint witness;  // point of tangency, or the external point whose polar is the hyperplane
};

/// Pole P = (H^{-1} a)^{(q)} of the hyperplane; tangent iff P lies on the variety. Throws Degenerate.
TangencyReport classify_hyperplane(const HermitianForm& f, const Hyperplane& h);

/// Gram matrix B H B^{(q)T} of the form restricted to the subspace with basis rows B.
Matrix restrict_form(const HermitianForm& f, const LinearSubspace& s);

/// Section Π_m ∩ U_n = Π_v U_s, with v + s = m - 1.
struct SectionType {
  int v = -1;
  int s = -1;
  int m = -1;

  /// Rank of the restricted form.
  int rank() const noexcept { return s + 1; }
  std::string label() const;
  friend bool operator==(const SectionType&, const SectionType&) = default;
};

SectionType section_type_from_rank(int m, int rank);
std::uint64_t section_point_count(const SectionType& t, int q);

/// Requires a non-degenerate form (Degenerate otherwise).
SectionType classify_section(const HermitianForm& f, const LinearSubspace& s);

/// q^2 |U_{n-2}| + 1 tangent hyperplanes through a point of the variety. Throws NotOnVariety.
std::uint64_t tangents_through_count(const HermitianForm& f, const ProjPoint& p);
/// Companion path: |{Q on the variety : P on T_Q}| by scanning P^n.
std::uint64_t tangents_through_enum(const HermitianForm& f, const ProjPoint& p, const RunLimits& limits = {});

/// Points of V(f)(F_{q^2}) listed once, in canonical order, plus a membership bitset
/// over the full canonical order of P^n.
class VarietyPoints {
 public:
  VarietyPoints(const HermitianForm& f, const RunLimits& limits = {});

  int dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return ambient_index_.size(); }
  std::span<const Elem> coords(std::size_t i) const noexcept {
    return {coords_.data() + i * static_cast<std::size_t>(n_ + 1), static_cast<std::size_t>(n_ + 1)};
  }
  std::uint64_t ambient_index(std::size_t i) const noexcept { return ambient_index_[i]; }
  const DenseBitset& membership() const noexcept { return membership_; }

 private:
  int n_ = 0;
  std::vector<Elem> coords_;
  std::vector<std::uint64_t> ambient_index_;
  DenseBitset membership_;
};

void check_budget(std::uint64_t evaluations, const RunLimits& limits, const char* what);

}  // namespace hermcubic
