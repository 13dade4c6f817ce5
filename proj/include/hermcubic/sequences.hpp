#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hermcubic {

using BigInt = boost::multiprecision::cpp_int;

/// 0 if n is even, 1 if n is odd.
struct Parity {
  int delta = 0;
  static Parity of(int n) { return Parity{n % 2 == 0 ? 0 : 1}; }
  bool even() const noexcept { return delta == 0; }
};

BigInt big_pow(long long base, int exp);

// Quadric threshold: A_4 = q^5 + q^4 + 4q^3 - 3q + 1 and its parity recursion.
BigInt a_rec(int n, int q);
BigInt a_closed(int n, int q);

// Cubic threshold: B_4 = 3(q^5 + 1) and its parity recursion.
BigInt b_rec(int n, int q);
BigInt b_closed(int n, int q);

/// |U_n(F_{q^2})| for a non-degenerate variety, n >= 0.
BigInt hermitian_count(int n, int q);
/// |P^n(F_{q^2})|, 0 for n < 0.
BigInt projective_count(int n, int q);

/// Cardinalities of the three codimension-2 section types of U_n.
struct ConeCounts {
  BigInt nondegenerate;  // |U_{n-2}|
  BigInt cone0;          // |Π_0 U_{n-3}|
  BigInt cone1;          // |Π_1 U_{n-4}|
  friend bool operator==(const ConeCounts&, const ConeCounts&) = default;
};

/// Parity-split closed forms; requires n >= 4.
ConeCounts cone_counts(int n, int q);

/// Largest possible |Σ ∩ U_n| over hyperplanes: |U_{n-1}| (n even), q^2|U_{n-2}|+1 (n odd).
BigInt hyperplane_section_bound(int n, int q);

/// B_{n-1} > q^{2n-5} + q^{2n-6} (n even) or B_{n-1} < 3q^{2n-5} + q^{2n-6} (n odd). Requires n >= 5.
bool check_corollary_inq(int n, int q);

struct InequalityCheck {
  BigInt lhs;
  BigInt rhs;
  bool holds = false;
  bool in_range = false;  // q >= 3; outside it the outcome is informational only
};

/// hyperplane_section_bound(n, q) + A_n < B_n. Requires n >= 4.
InequalityCheck check_lemma_ineq1(int n, int q);

struct BoundRow {
  int n = 0;
  BigInt a_rec, a_closed, b_rec, b_closed;
  BigInt hermitian, nondegenerate_codim2, cone0, cone1;
};

struct BoundTable {
  int q = 0;
  std::vector<BoundRow> rows;
};

BoundTable make_bound_table(int q, int n_min, int n_max);
/// Columns: q,n,A,B,U_n,U_n_minus_2,cone0,cone1
std::string to_csv(const BoundTable& table);

}  // namespace hermcubic
