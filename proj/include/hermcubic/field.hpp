#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace hermcubic {

/// Element of F_{q^2}, stored as a dense index into the tables of a FieldCtx.
///
/// Index i encodes the polynomial sum_k c_k x^k with c_k the base-p digits of i,
/// so index 0 is zero, index 1 is one and indices 0..p-1 form the prime field.
struct Elem {
  std::uint16_t index = 0;

  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

inline constexpr Elem kZero{0};
inline constexpr Elem kOne{1};

struct PrimePower {
  int p = 0;
  int e = 0;
};

std::optional<PrimePower> factor_prime_power(int q);

/// Lookup-table arithmetic for F_q inside F_{q^2}.
///
/// F_{q^2} is built as F_p[x]/(m) where m is the smallest monic primitive
/// polynomial of degree 2e, ordered by the integer sum_i c_i p^i of its
/// non-leading coefficients. The handle is cheap to copy and immutable.
class FieldCtx {
 public:
  static constexpr int kDefaultCap = 13;

  int q() const noexcept { return q_; }
  int order() const noexcept { return order_; }
  int characteristic() const noexcept;
  /// Degree of F_q over F_p.
  int extension_degree() const noexcept;
  /// Non-leading coefficients c_0..c_{2e-1} of the defining polynomial.
  const std::vector<int>& modulus() const noexcept;

  bool valid(Elem a) const noexcept { return a.index < order_; }

  Elem add(Elem a, Elem b) const noexcept { return Elem{add_[a.index * order_ + b.index]}; }
  Elem mul(Elem a, Elem b) const noexcept { return Elem{mul_[a.index * order_ + b.index]}; }
  Elem neg(Elem a) const noexcept { return Elem{neg_[a.index]}; }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  /// Multiplicative inverse; inv(0) is 0 and callers must not rely on it.
  Elem inv(Elem a) const noexcept { return Elem{inv_[a.index]}; }
  Elem div(Elem a, Elem b) const noexcept { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const noexcept;

  Elem frobenius(Elem a) const noexcept { return Elem{frob_[a.index]}; }
  Elem norm(Elem a) const noexcept { return mul(a, frobenius(a)); }
  Elem trace(Elem a) const noexcept { return add(a, frobenius(a)); }
  bool in_subfield(Elem a) const noexcept { return subfield_mask_[a.index] != 0; }

  /// Smallest-index lambda with lambda^{q+1} = d, for d a nonzero subfield element.
  Elem solve_norm(Elem d) const;

  /// Image of the integer k under Z -> F_p.
  Elem from_int(long long k) const noexcept;

  /// Multiplicative generator (the class of x).
  Elem generator() const noexcept;

  std::span<const Elem> subfield_elements() const noexcept;

 private:
  friend FieldCtx make_field(int q, int cap);
  struct Tables;

  std::shared_ptr<const Tables> tables_;
  int q_ = 0;
  int order_ = 0;
  const std::uint16_t* add_ = nullptr;
  const std::uint16_t* mul_ = nullptr;
  const std::uint16_t* neg_ = nullptr;
  const std::uint16_t* inv_ = nullptr;
  const std::uint16_t* frob_ = nullptr;
  const std::uint8_t* subfield_mask_ = nullptr;
};

/// Throws Error{NotPrimePower} or Error{ExceedsCap}.
FieldCtx make_field(int q, int cap = FieldCtx::kDefaultCap);

}  // namespace hermcubic
