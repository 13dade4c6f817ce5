#include "hermcubic/field.hpp"

#include <string>

#include "hermcubic/errors.hpp"

namespace hermcubic {

namespace {

// Hard ceiling independent of the configurable cap: tables are order^2 entries.
constexpr int kHardQLimit = 64;

bool is_prime(int v) {
  if (v < 2) return false;
  for (int d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

int ipow(int base, int exp) {
  int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

std::optional<PrimePower> factor_prime_power(int q) {
  if (q < 2) return std::nullopt;
  int p = 2;
  while (q % p != 0) ++p;
  if (!is_prime(p)) return std::nullopt;
  int e = 0;
  int rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) return std::nullopt;
  return PrimePower{p, e};
}

struct FieldCtx::Tables {
  int p = 0;
  int e = 0;
  std::vector<int> modulus;
  std::vector<std::uint16_t> add, mul, neg, inv, frob;
  std::vector<std::uint8_t> subfield_mask;
  std::vector<std::uint16_t> log, antilog;
  std::vector<Elem> subfield;
  std::vector<std::uint16_t> norm_root;  // indexed by subfield element, 0 if not a norm
};

int FieldCtx::characteristic() const noexcept { return tables_->p; }
int FieldCtx::extension_degree() const noexcept { return tables_->e; }
const std::vector<int>& FieldCtx::modulus() const noexcept { return tables_->modulus; }
std::span<const Elem> FieldCtx::subfield_elements() const noexcept { return tables_->subfield; }
Elem FieldCtx::generator() const noexcept { return Elem{tables_->antilog[1]}; }

Elem FieldCtx::pow(Elem a, std::uint64_t k) const noexcept {
  if (k == 0) return kOne;
  if (a == kZero) return kZero;
  const std::uint64_t group = static_cast<std::uint64_t>(order_ - 1);
  const std::uint64_t l = (static_cast<std::uint64_t>(tables_->log[a.index]) * (k % group)) % group;
  return Elem{tables_->antilog[l]};
}

Elem FieldCtx::solve_norm(Elem d) const {
  if (d == kZero || !in_subfield(d)) {
    throw Error(ErrorCode::InvalidArgument, "solve_norm needs a nonzero subfield element");
  }
  const std::uint16_t root = tables_->norm_root[d.index];
  if (root == 0) {
    throw Error(ErrorCode::InternalInvariant, "norm map is not surjective onto F_q^*");
  }
  return Elem{root};
}

Elem FieldCtx::from_int(long long k) const noexcept {
  const long long p = tables_->p;
  long long r = k % p;
  if (r < 0) r += p;
  return Elem{static_cast<std::uint16_t>(r)};
}

FieldCtx make_field(int q, int cap) {
  const auto pp = factor_prime_power(q);
  if (!pp) throw Error(ErrorCode::NotPrimePower, "q=" + std::to_string(q) + " is not a prime power");
  if (q > cap || q > kHardQLimit) {
    throw Error(ErrorCode::ExceedsCap, "q=" + std::to_string(q) + " exceeds cap " + std::to_string(cap));
  }

  auto t = std::make_shared<FieldCtx::Tables>();
  t->p = pp->p;
  t->e = pp->e;
  const int p = pp->p;
  const int k = 2 * pp->e;
  const int order = ipow(p, k);

  auto digits_to_index = [&](const std::vector<int>& c) {
    int idx = 0;
    for (int i = k - 1; i >= 0; --i) idx = idx * p + c[i];
    return idx;
  };

  // Search for the smallest monic primitive polynomial x^k + sum c_i x^i.
  std::vector<std::uint16_t> antilog(order - 1);
  bool found = false;
  for (int code = 0; code < order && !found; ++code) {
    std::vector<int> c(k);
    for (int i = 0, v = code; i < k; ++i, v /= p) c[i] = v % p;
    if (c[0] == 0) continue;

    std::vector<int> state(k, 0);
    state[0] = 1;
    bool primitive = true;
    for (int s = 0; s < order - 1; ++s) {
      const int idx = digits_to_index(state);
      if (idx == 0 || (s > 0 && idx == 1)) {
        primitive = false;
        break;
      }
      antilog[s] = static_cast<std::uint16_t>(idx);
      // multiply by x, reducing x^k = -sum c_i x^i
      const int top = state[k - 1];
      for (int i = k - 1; i > 0; --i) state[i] = ((state[i - 1] - top * c[i]) % p + p) % p;
      state[0] = ((-top * c[0]) % p + p) % p;
    }
    if (primitive && digits_to_index(state) == 1) {
      t->modulus = c;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::InternalInvariant, "no primitive polynomial found");

  t->antilog = antilog;
  t->log.assign(order, 0);
  for (int s = 0; s < order - 1; ++s) t->log[antilog[s]] = static_cast<std::uint16_t>(s);

  const int n2 = order * order;
  t->add.resize(n2);
  t->mul.resize(n2);
  t->neg.resize(order);
  t->inv.resize(order);
  t->frob.resize(order);
  t->subfield_mask.assign(order, 0);

  std::vector<int> da(k), db(k), ds(k);
  for (int a = 0; a < order; ++a) {
    for (int i = 0, v = a; i < k; ++i, v /= p) da[i] = v % p;
    for (int b = 0; b < order; ++b) {
      for (int i = 0, v = b; i < k; ++i, v /= p) db[i] = v % p;
      for (int i = 0; i < k; ++i) ds[i] = (da[i] + db[i]) % p;
      t->add[a * order + b] = static_cast<std::uint16_t>(digits_to_index(ds));
      if (a == 0 || b == 0) {
        t->mul[a * order + b] = 0;
      } else {
        t->mul[a * order + b] = antilog[(t->log[a] + t->log[b]) % (order - 1)];
      }
    }
    for (int i = 0; i < k; ++i) ds[i] = (p - da[i]) % p;
    t->neg[a] = static_cast<std::uint16_t>(digits_to_index(ds));
    if (a == 0) {
      t->inv[a] = 0;
      t->frob[a] = 0;
    } else {
      const int l = t->log[a];
      t->inv[a] = antilog[(order - 1 - l) % (order - 1)];
      t->frob[a] = antilog[(static_cast<long long>(l) * q) % (order - 1)];
    }
    if (t->frob[a] == a) {
      t->subfield_mask[a] = 1;
      t->subfield.push_back(Elem{static_cast<std::uint16_t>(a)});
    }
  }

  t->norm_root.assign(order, 0);
  for (int a = 1; a < order; ++a) {
    const int nrm = t->mul[a * order + t->frob[a]];
    if (t->norm_root[nrm] == 0) t->norm_root[nrm] = static_cast<std::uint16_t>(a);
  }

  FieldCtx ctx;
  ctx.q_ = q;
  ctx.order_ = order;
  ctx.add_ = t->add.data();
  ctx.mul_ = t->mul.data();
  ctx.neg_ = t->neg.data();
  ctx.inv_ = t->inv.data();
  ctx.frob_ = t->frob.data();
  ctx.subfield_mask_ = t->subfield_mask.data();
  ctx.tables_ = std::move(t);
  return ctx;
}

}  // namespace hermcubic
