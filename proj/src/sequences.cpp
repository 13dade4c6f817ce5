#include "hermcubic/sequences.hpp"

#include <sstream>

#include "hermcubic/errors.hpp"
#include "hermcubic/field.hpp"

namespace hermcubic {

namespace {

void require_q(int q) {
  if (!factor_prime_power(q)) throw Error(ErrorCode::NotPrimePower, "q=" + std::to_string(q));
}

void require_n(int n, int min, const char* what) {
  if (n < min) throw Error(ErrorCode::OutOfRange, std::string(what) + " needs n >= " + std::to_string(min));
}

}  // namespace

BigInt big_pow(long long base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

BigInt a_rec(int n, int q) {
  require_n(n, 4, "A_n");
  require_q(q);
  BigInt a = big_pow(q, 5) + big_pow(q, 4) + 4 * big_pow(q, 3) - 3 * BigInt(q) + 1;
  for (int k = 5; k <= n; ++k) {
    if (k % 2 == 0) {
      a = q * q * a - big_pow(q, k - 2);
    } else {
      a = q * q * a + big_pow(q, k - 2) + 2 * big_pow(q, k - 3);
    }
  }
  return a;
}

BigInt a_closed(int n, int q) {
  require_n(n, 4, "A_n");
  require_q(q);
  const BigInt a4 = big_pow(q, 5) + big_pow(q, 4) + 4 * big_pow(q, 3) - 3 * BigInt(q) + 1;
  BigInt sum = 0;
  for (int i = n - 2; i <= 2 * n - 7; ++i) sum += big_pow(q, i);
  const int delta = Parity::of(n).delta;
  return big_pow(q, 2 * n - 8) * a4 + sum + 2 * delta * big_pow(q, n - 3);
}

BigInt b_rec(int n, int q) {
  require_n(n, 4, "B_n");
  require_q(q);
  BigInt b = 3 * (big_pow(q, 5) + 1);
  for (int k = 5; k <= n; ++k) {
    if (k % 2 == 0) {
      b = q * q * b - big_pow(q, k - 2);
    } else {
      b = q * q * b + 3 * big_pow(q, k - 2) + big_pow(q, k - 3);
    }
  }
  return b;
}

BigInt b_closed(int n, int q) {
  require_n(n, 4, "B_n");
  require_q(q);
  BigInt b = 3 * big_pow(q, 2 * n - 8) * (big_pow(q, 5) + 1);
  if (n % 2 == 0) {
    for (int i = 1; i <= (n - 4) / 2; ++i) b += 3 * big_pow(q, 2 * i + n - 3);
  } else {
    for (int i = 1; i <= (n - 3) / 2; ++i) b += 3 * big_pow(q, 2 * i + n - 4);
    b += big_pow(q, n - 3);
  }
  return b;
}

BigInt hermitian_count(int n, int q) {
  require_n(n, 0, "|U_n|");
  const int sign = n % 2 == 0 ? 1 : -1;
  return (big_pow(q, n) - sign) * (big_pow(q, n + 1) + sign) / (q * q - 1);
}

BigInt projective_count(int n, int q) {
  if (n < 0) return 0;
  return (big_pow(q, 2 * n + 2) - 1) / (q * q - 1);
}

ConeCounts cone_counts(int n, int q) {
  require_n(n, 4, "cone_counts");
  require_q(q);
  const BigInt d = q * q - 1;
  const BigInt top = big_pow(q, 2 * n - 3);
  ConeCounts c;
  if (n % 2 == 0) {
    c.nondegenerate = (top - big_pow(q, n - 1) + big_pow(q, n - 2) - 1) / d;
    c.cone0 = (top + big_pow(q, n) - big_pow(q, n - 1) - 1) / d;
    c.cone1 = (top - big_pow(q, n + 1) + big_pow(q, n) - 1) / d;
  } else {
    c.nondegenerate = (top + big_pow(q, n - 1) - big_pow(q, n - 2) - 1) / d;
    c.cone0 = (top - big_pow(q, n) + big_pow(q, n - 1) - 1) / d;
    c.cone1 = (top + big_pow(q, n + 1) - big_pow(q, n) - 1) / d;
  }
  return c;
}

BigInt hyperplane_section_bound(int n, int q) {
  require_n(n, 2, "hyperplane_section_bound");
  if (n % 2 == 0) return hermitian_count(n - 1, q);
  return BigInt(q) * q * hermitian_count(n - 2, q) + 1;
}

bool check_corollary_inq(int n, int q) {
  require_n(n, 5, "check_corollary_inq");
  const BigInt b = b_rec(n - 1, q);
  if (n % 2 == 0) return b > big_pow(q, 2 * n - 5) + big_pow(q, 2 * n - 6);
  return b < 3 * big_pow(q, 2 * n - 5) + big_pow(q, 2 * n - 6);
}

InequalityCheck check_lemma_ineq1(int n, int q) {
  require_n(n, 4, "check_lemma_ineq1");
  InequalityCheck r;
  r.lhs = hyperplane_section_bound(n, q) + a_rec(n, q);
  r.rhs = b_rec(n, q);
  r.holds = r.lhs < r.rhs;
  r.in_range = q >= 3;
  return r;
}

BoundTable make_bound_table(int q, int n_min, int n_max) {
  require_n(n_min, 4, "make_bound_table");
  BoundTable t;
  t.q = q;
  for (int n = n_min; n <= n_max; ++n) {
    const ConeCounts c = cone_counts(n, q);
    t.rows.push_back(BoundRow{n, a_rec(n, q), a_closed(n, q), b_rec(n, q), b_closed(n, q), hermitian_count(n, q),
                              c.nondegenerate, c.cone0, c.cone1});
  }
  return t;
}

std::string to_csv(const BoundTable& table) {
  std::ostringstream out;
  out << "q,n,A,B,U_n,U_n_minus_2,cone0,cone1\n";
  for (const auto& r : table.rows) {
    out << table.q << ',' << r.n << ',' << r.a_rec << ',' << r.b_rec << ',' << r.hermitian << ','
        << r.nondegenerate_codim2 << ',' << r.cone0 << ',' << r.cone1 << '\n';
  }
  return out.str();
}

}  // namespace hermcubic
