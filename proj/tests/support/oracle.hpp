#pragma once

// Brute-force reference implementations used only by tests. They share no code with
// the library: field elements are coefficient vectors reduced by schoolbook division,
// and counts come from scanning affine space F^{n+1} rather than projective orbits.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracle {

struct Field {
  int p = 0;
  int k = 0;  // extension degree of F_{q^2} over F_p
  int q = 0;
  int order = 0;
  std::vector<int> mod;  // c_0..c_{k-1} of x^k + sum c_i x^i

  std::vector<int> digits(int idx) const {
    std::vector<int> d(k);
    for (int i = 0; i < k; ++i) {
      d[i] = idx % p;
      idx /= p;
    }
    return d;
  }
  int index(const std::vector<int>& d) const {
    int idx = 0;
    for (int i = k - 1; i >= 0; --i) idx = idx * p + d[i];
    return idx;
  }
  int add(int a, int b) const {
    auto x = digits(a), y = digits(b);
    for (int i = 0; i < k; ++i) x[i] = (x[i] + y[i]) % p;
    return index(x);
  }
  int neg(int a) const {
    auto x = digits(a);
    for (auto& c : x) c = (p - c) % p;
    return index(x);
  }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int mul(int a, int b) const {
    auto x = digits(a), y = digits(b);
    std::vector<int> prod(2 * k, 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    for (int d = 2 * k - 1; d >= k; --d) {
      const int c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      // x^d = x^{d-k} * x^k = -x^{d-k} * sum mod_i x^i
      for (int i = 0; i < k; ++i) prod[d - k + i] = ((prod[d - k + i] - c * mod[i]) % p + p) % p;
    }
    prod.resize(k);
    return index(prod);
  }
  int pow(int a, long long e) const {
    int r = 1;
    for (long long i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  int frob(int a) const { return pow(a, q); }
};

inline bool prime(int v) {
  if (v < 2) return false;
  for (int d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

/// F_{q^2} via the smallest monic polynomial (by sum c_i p^i) in which x has order q^2 - 1.
inline Field make_field(int q) {
  Field f;
  f.q = q;
  for (int p = 2; p <= q; ++p) {
    if (!prime(p)) continue;
    int v = q, e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    if (v == 1) {
      f.p = p;
      f.k = 2 * e;
      break;
    }
  }
  if (f.p == 0) throw std::invalid_argument("not a prime power");
  f.order = 1;
  for (int i = 0; i < f.k; ++i) f.order *= f.p;
  const int x = f.p;  // index of the class of x
  for (int cand = 0; cand < f.order; ++cand) {
    f.mod = f.digits(cand);
    if (f.mod[0] == 0) continue;
    // Order of x by repeated multiplication.
    int acc = x;
    int ord = 1;
    while (acc != 1 && ord < f.order) {
      acc = f.mul(acc, x);
      ++ord;
    }
    if (acc == 1 && ord == f.order - 1) return f;
  }
  throw std::logic_error("no primitive polynomial");
}

using Mat = std::vector<std::vector<int>>;

/// Projective count of x^T H x^{(q)} = 0 by scanning all nonzero vectors of F^{n+1}.
inline std::uint64_t hermitian_points(const Field& f, const Mat& h) {
  const int len = static_cast<int>(h.size());
  std::vector<int> x(len, 0);
  std::uint64_t zeros = 0;
  for (;;) {
    int total = 0;
    for (int i = 0; i < len; ++i)
      for (int j = 0; j < len; ++j) total = f.add(total, f.mul(f.mul(x[i], h[i][j]), f.frob(x[j])));
    if (total == 0) ++zeros;
    int pos = 0;
    while (pos < len && ++x[pos] == f.order) x[pos++] = 0;
    if (pos == len) break;
  }
  return (zeros - 1) / static_cast<std::uint64_t>(f.order - 1);
}

inline Mat identity(int len) {
  Mat m(len, std::vector<int>(len, 0));
  for (int i = 0; i < len; ++i) m[i][i] = 1;
  return m;
}

/// Points of the standard variety on which the product of the given linear forms vanishes,
/// scanning affine space.
inline std::uint64_t union_points(const Field& f, int n, const std::vector<std::vector<int>>& forms) {
  const int len = n + 1;
  std::vector<int> x(len, 0);
  std::uint64_t zeros = 0;
  for (;;) {
    int herm = 0;
    for (int i = 0; i < len; ++i) herm = f.add(herm, f.pow(x[i], f.q + 1));
    if (herm == 0) {
      int prod = 1;
      for (const auto& a : forms) {
        int l = 0;
        for (int i = 0; i < len; ++i) l = f.add(l, f.mul(a[i], x[i]));
        prod = f.mul(prod, l);
      }
      if (prod == 0) ++zeros;
    }
    int pos = 0;
    while (pos < len && ++x[pos] == f.order) x[pos++] = 0;
    if (pos == len) break;
  }
  return (zeros - 1) / static_cast<std::uint64_t>(f.order - 1);
}

}  // namespace oracle
