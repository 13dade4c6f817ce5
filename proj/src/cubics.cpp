#include "hermcubic/cubics.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <sstream>

#include "hermcubic/errors.hpp"
#include "hermcubic/sequences.hpp"

namespace hermcubic {

namespace {

void monomials_rec(int var, int n, int remaining, Exponents& cur, std::vector<Exponents>& out) {
  if (var == n) {
    cur[var] = static_cast<std::uint8_t>(remaining);
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[var] = static_cast<std::uint8_t>(e);
    monomials_rec(var + 1, n, remaining - e, cur, out);
  }
}

Vec unit(int len, int i) {
  Vec v(static_cast<std::size_t>(len), kZero);
  v[i] = kOne;
  return v;
}

LinearSubspace hyperplane_subspace(const FieldCtx& ctx, const Hyperplane& h) {
  Matrix row(1, h.dim() + 1);
  std::copy(h.covector.begin(), h.covector.end(), row.row(0).begin());
  return LinearSubspace::span(ctx, h.dim(), null_space(ctx, row));
}

std::uint64_t section_count(const HermitianForm& f, const LinearSubspace& s) {
  return section_point_count(classify_section(f, s), f.field().q());
}

}  // namespace

std::vector<Exponents> monomials(int n, int degree) {
  if (n < 0 || degree < 0) throw Error(ErrorCode::OutOfRange, "monomials: negative size");
  std::vector<Exponents> out;
  Exponents cur(static_cast<std::size_t>(n) + 1, 0);
  monomials_rec(0, n, degree, cur, out);
  return out;
}

HomogeneousPolynomial::HomogeneousPolynomial(FieldCtx ctx, int n, int degree, const TermMap& terms)
    : ctx_(std::move(ctx)), n_(n), degree_(degree) {
  if (n < 0 || degree < 1) throw Error(ErrorCode::OutOfRange, "polynomial needs n >= 0 and degree >= 1");
  for (const auto& [e, c] : terms) {
    if (static_cast<int>(e.size()) != n + 1) throw Error(ErrorCode::InvalidArgument, "exponent vector has wrong length");
    if (std::accumulate(e.begin(), e.end(), 0) != degree) {
      throw Error(ErrorCode::InvalidArgument, "monomial is not of the stated degree");
    }
    if (!ctx_.valid(c)) throw Error(ErrorCode::InvalidArgument, "coefficient outside the field");
    if (c != kZero) terms_.emplace(e, c);
  }
  if (terms_.empty()) throw Error(ErrorCode::InvalidArgument, "zero polynomial");
  const Elem scale = ctx_.inv(terms_.begin()->second);
  for (auto& [e, c] : terms_) {
    c = ctx_.mul(c, scale);
    coefs_.push_back(c);
    for (int v = 0; v <= n; ++v)
      for (int k = 0; k < e[v]; ++k) vars_.push_back(static_cast<std::uint8_t>(v));
  }
}

TermMap linear_terms(const Vec& covector) {
  TermMap t;
  const int len = static_cast<int>(covector.size());
  for (int i = 0; i < len; ++i) {
    if (covector[i] == kZero) continue;
    Exponents e(static_cast<std::size_t>(len), 0);
    e[i] = 1;
    t.emplace(std::move(e), covector[i]);
  }
  return t;
}

TermMap multiply_terms(const FieldCtx& ctx, const TermMap& a, const TermMap& b) {
  TermMap out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
      auto [it, inserted] = out.emplace(std::move(e), ctx.mul(ca, cb));
      if (!inserted) it->second = ctx.add(it->second, ctx.mul(ca, cb));
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == kZero; });
  return out;
}

TermMap add_terms(const FieldCtx& ctx, const TermMap& a, const TermMap& b) {
  TermMap out = a;
  for (const auto& [e, c] : b) {
    auto [it, inserted] = out.emplace(e, c);
    if (!inserted) it->second = ctx.add(it->second, c);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == kZero; });
  return out;
}

HomogeneousPolynomial HomogeneousPolynomial::product_of_linear_forms(FieldCtx ctx, std::span<const Hyperplane> factors) {
  if (factors.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one linear factor");
  const int n = factors.front().dim();
  TermMap acc{{Exponents(static_cast<std::size_t>(n) + 1, 0), kOne}};
  for (const auto& h : factors) acc = multiply_terms(ctx, acc, linear_terms(h.covector));
  return HomogeneousPolynomial(std::move(ctx), n, static_cast<int>(factors.size()), acc);
}

HomogeneousPolynomial HomogeneousPolynomial::random(FieldCtx ctx, int n, int degree, Rng& rng) {
  const auto basis = monomials(n, degree);
  for (;;) {
    TermMap t;
    for (const auto& e : basis) t.emplace(e, random_element(ctx, rng));
    if (std::any_of(t.begin(), t.end(), [](const auto& kv) { return kv.second != kZero; })) {
      return HomogeneousPolynomial(ctx, n, degree, t);
    }
  }
}

bool HomogeneousPolynomial::vanishes_on(const LinearSubspace& s) const {
  bool all_zero = true;
  for_each_point_in(ctx_, s, [&](std::span<const Elem> x) {
    if (all_zero && evaluate(x) != kZero) all_zero = false;
  });
  return all_zero;
}

std::string HomogeneousPolynomial::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    bool need_star = false;
    if (c != kOne) {
      out << '[' << c.index << ']';
      need_star = true;
    }
    for (int v = 0; v <= n_; ++v) {
      if (e[v] == 0) continue;
      if (need_star) out << '*';
      out << 'x' << v;
      if (e[v] > 1) out << '^' << static_cast<int>(e[v]);
      need_star = true;
    }
  }
  return out.str();
}

std::optional<Hyperplane> find_linear_factor(const HomogeneousPolynomial& c, const RunLimits& limits) {
  const FieldCtx& ctx = c.field();
  const int n = c.dim();
  const int order = ctx.order();
  if (c.degree() >= order) throw Error(ErrorCode::PreconditionViolated, "divisibility test needs degree < q^2");
  const ProjectiveSpace dual(ctx, n);
  check_budget(dual.size(), limits, "find_linear_factor");

  // Prefilter: if L | C then C vanishes at the point where V(L) meets a fixed line
  // u,w with C not identically zero on it.
  bool filter_active = false;
  Vec u, w;
  std::vector<char> zero_on_line;
  const ProjectiveSpace line_params(ctx, 1);
  auto try_line = [&](const Vec& cu, const Vec& cw) {
    std::vector<char> zeros(static_cast<std::size_t>(order) + 1, 0);
    bool any_nonzero = false;
    Vec x(static_cast<std::size_t>(n) + 1);
    line_params.for_each([&](std::uint64_t idx, std::span<const Elem> st) {
      for (int i = 0; i <= n; ++i) x[i] = ctx.add(ctx.mul(st[0], cu[i]), ctx.mul(st[1], cw[i]));
      if (c.evaluate(x) == kZero) {
        zeros[idx] = 1;
      } else {
        any_nonzero = true;
      }
    });
    if (!any_nonzero) return false;
    u = cu;
    w = cw;
    zero_on_line = std::move(zeros);
    filter_active = true;
    return true;
  };
  for (int i = 0; i <= n && !filter_active; ++i)
    for (int j = i + 1; j <= n && !filter_active; ++j) try_line(unit(n + 1, i), unit(n + 1, j));
  Rng line_rng(0x5eed1u);
  for (int attempt = 0; attempt < 64 && !filter_active; ++attempt) {
    try_line(random_nonzero_vector(ctx, n + 1, line_rng), random_nonzero_vector(ctx, n + 1, line_rng));
  }

  constexpr int kTestPoints = 4;
  Rng test_rng(0x7e57u);
  std::vector<Vec> tests(kTestPoints);
  for (auto& t : tests) {
    t.resize(static_cast<std::size_t>(n) + 1);
    for (auto& e : t) e = random_element(ctx, test_rng);
  }

  const int workers = limits.resolved_workers();
  std::vector<std::uint64_t> first(static_cast<std::size_t>(workers), dual.size());
  parallel_ranges(dual.size(), workers, [&](int wk, std::uint64_t begin, std::uint64_t end) {
    Vec x(static_cast<std::size_t>(n) + 1);
    dual.for_each(begin, end, [&](std::uint64_t idx, std::span<const Elem> a) {
      if (first[wk] != dual.size()) return;
      if (filter_active) {
        const Elem s = dot(ctx, a, w);
        const Elem t = ctx.neg(dot(ctx, a, u));
        if (s != kZero || t != kZero) {
          const std::size_t pos = s != kZero ? ctx.div(t, s).index : static_cast<std::size_t>(order);
          if (!zero_on_line[pos]) return;
        }
      }
      int pivot = 0;
      while (a[pivot] == kZero) ++pivot;  // a[pivot] == 1
      for (const auto& t : tests) {
        Elem acc = kZero;
        for (int j = 0; j <= n; ++j) {
          x[j] = t[j];
          if (j != pivot) acc = ctx.add(acc, ctx.mul(a[j], t[j]));
        }
        x[pivot] = ctx.neg(acc);
        if (c.evaluate(x) != kZero) return;
      }
      const Hyperplane h{Vec(a.begin(), a.end())};
      if (c.vanishes_on(hyperplane_subspace(ctx, h))) first[wk] = idx;
    });
  });
  const std::uint64_t best = *std::min_element(first.begin(), first.end());
  if (best == dual.size()) return std::nullopt;
  return dual.hyperplane(best);
}

std::string Arrangement::tangency_pattern() const {
  std::string s;
  for (Tangency t : tangency) s += (t == Tangency::Tangent ? 'T' : 'N');
  std::sort(s.begin(), s.end());
  return s;
}

Arrangement make_arrangement(const HermitianForm& f, std::vector<Hyperplane> hyperplanes) {
  const FieldCtx& ctx = f.field();
  if (hyperplanes.empty()) throw Error(ErrorCode::InvalidArgument, "arrangement needs hyperplanes");
  Arrangement a;
  a.n = f.dim();
  a.q = ctx.q();
  for (auto& h : hyperplanes) {
    if (h.dim() != a.n) throw Error(ErrorCode::WrongDimension, "hyperplane dimension differs from the form");
    h = make_hyperplane(ctx, std::move(h.covector));
  }
  for (std::size_t i = 0; i < hyperplanes.size(); ++i)
    for (std::size_t j = i + 1; j < hyperplanes.size(); ++j)
      if (hyperplanes[i] == hyperplanes[j]) throw Error(ErrorCode::DuplicateHyperplanes, "arrangement members must differ");
  for (const auto& h : hyperplanes) a.tangency.push_back(classify_hyperplane(f, h).kind);
  a.common = intersect(ctx, hyperplanes);
  a.common_section = classify_section(f, a.common);
  a.hyperplanes = std::move(hyperplanes);
  return a;
}

HomogeneousPolynomial expand(const Arrangement& a, const FieldCtx& ctx) {
  return HomogeneousPolynomial::product_of_linear_forms(ctx, a.hyperplanes);
}

IntersectionReport intersect_count_arrangement(const Arrangement& a, const HermitianForm& f) {
  if (a.degree() != 3) throw Error(ErrorCode::InvalidArgument, "inclusion-exclusion path is implemented for three hyperplanes");
  const FieldCtx& ctx = f.field();
  IntersectionReport r;
  r.method = CountMethod::InclusionExclusion;
  std::uint64_t sum_singles = 0;
  for (const auto& h : a.hyperplanes) {
    r.singles.push_back(section_count(f, intersect(ctx, {h})));
    sum_singles += r.singles.back();
  }
  r.common = section_point_count(a.common_section, ctx.q());
  if (a.pencil()) {
    // All pairwise intersections equal the common Π_{n-2}.
    r.pencil = true;
    r.pairs.assign(3, r.common);
    r.count = sum_singles - 2 * r.common;
    return r;
  }
  const auto& h = a.hyperplanes;
  r.pairs = {section_count(f, intersect(ctx, {h[0], h[1]})), section_count(f, intersect(ctx, {h[0], h[2]})),
             section_count(f, intersect(ctx, {h[1], h[2]}))};
  r.count = sum_singles - (r.pairs[0] + r.pairs[1] + r.pairs[2]) + r.common;
  return r;
}

std::uint64_t intersect_count_enum(const HomogeneousPolynomial& c, const HermitianForm& f, const RunLimits& limits) {
  if (c.dim() != f.dim()) throw Error(ErrorCode::WrongDimension, "polynomial and form live in different spaces");
  const ProjectiveSpace space(f.field(), f.dim());
  check_budget(space.size(), limits, "intersect_count_enum");
  const int workers = limits.resolved_workers();
  std::vector<std::uint64_t> partial(static_cast<std::size_t>(workers), 0);
  parallel_ranges(space.size(), workers, [&](int w, std::uint64_t begin, std::uint64_t end) {
    std::uint64_t k = 0;
    space.for_each(begin, end, [&](std::uint64_t, std::span<const Elem> x) {
      if (evaluate(f, x) == kZero && c.evaluate(x) == kZero) ++k;
    });
    partial[w] = k;
  });
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

std::uint64_t intersect_count_enum(const HomogeneousPolynomial& c, const VarietyPoints& points, const RunLimits& limits) {
  if (c.dim() != points.dim()) throw Error(ErrorCode::WrongDimension, "polynomial and variety live in different spaces");
  check_budget(points.size(), limits, "intersect_count_enum");
  const int workers = limits.resolved_workers();
  std::vector<std::uint64_t> partial(static_cast<std::size_t>(workers), 0);
  parallel_ranges(points.size(), workers, [&](int w, std::uint64_t begin, std::uint64_t end) {
    std::uint64_t k = 0;
    for (std::uint64_t i = begin; i < end; ++i)
      if (c.evaluate(points.coords(i)) == kZero) ++k;
    partial[w] = k;
  });
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

Arrangement build_extremal(const HermitianForm& f) {
  const int n = f.dim();
  if (n < 4) throw Error(ErrorCode::OutOfRange, "build_extremal needs n >= 4");
  if (!f.nondegenerate()) throw Error(ErrorCode::Degenerate, "build_extremal needs a non-degenerate form");
  const FieldCtx& ctx = f.field();
  const Tangency wanted = n % 2 == 0 ? Tangency::NonTangent : Tangency::Tangent;
  constexpr int kMaxPencils = 64;

  std::vector<LinearSubspace> seen;
  std::ostringstream scanned;
  int pencils = 0;

  auto try_pencil = [&](const LinearSubspace& pi) -> std::optional<Arrangement> {
    if (pi.dim() != n - 2) return std::nullopt;
    if (std::find(seen.begin(), seen.end(), pi) != seen.end()) return std::nullopt;
    seen.push_back(pi);
    if (classify_section(f, pi).v != -1) return std::nullopt;
    ++pencils;
    std::vector<Hyperplane> chosen;
    int matching = 0;
    for (const auto& h : pencil_through(ctx, pi)) {
      if (classify_hyperplane(f, h).kind != wanted) continue;
      ++matching;
      if (chosen.size() < 3) chosen.push_back(h);
    }
    if (pencils <= 4) scanned << (pencils > 1 ? ", " : "") << matching;
    if (chosen.size() < 3) return std::nullopt;
    return make_arrangement(f, std::move(chosen));
  };

  // Coordinate-like candidates first: V(x_i) ∩ V(x_j).
  for (int i = 0; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (auto a = try_pencil(intersect(ctx, {Hyperplane{unit(n + 1, i)}, Hyperplane{unit(n + 1, j)}}))) return *a;
    }
  }
  // Then pairs of non-tangent hyperplanes in canonical order.
  const ProjectiveSpace dual(ctx, n);
  std::vector<Hyperplane> nontangent;
  for (std::uint64_t idx = 0; idx < dual.size() && nontangent.size() < 24; ++idx) {
    Hyperplane h = dual.hyperplane(idx);
    if (classify_hyperplane(f, h).kind == Tangency::NonTangent) nontangent.push_back(std::move(h));
  }
  for (std::size_t i = 0; i < nontangent.size() && pencils < kMaxPencils; ++i) {
    for (std::size_t j = i + 1; j < nontangent.size() && pencils < kMaxPencils; ++j) {
      if (auto a = try_pencil(intersect(ctx, {nontangent[i], nontangent[j]}))) return *a;
    }
  }
  throw Error(ErrorCode::InsufficientPencilMembers,
              "scanned " + std::to_string(pencils) + " pencils over non-degenerate Pi_{n-2}; " +
                  std::string(to_string(wanted)) + " members per pencil: " + scanned.str() + (pencils > 4 ? ", ..." : "") +
                  " (need 3)");
}

std::uint64_t max_formula(int n, int q) {
  if (n < 4) throw Error(ErrorCode::OutOfRange, "max_formula needs n >= 4");
  if (n % 2 == 0) return 3 * nondegenerate_count(n - 1, q) - 2 * nondegenerate_count(n - 2, q);
  return (3 * static_cast<std::uint64_t>(q) * q - 2) * nondegenerate_count(n - 2, q) + 3;
}

std::uint64_t all_tangent_pencil_value(int n, int q) {
  if (n < 4 || n % 2 != 0) throw Error(ErrorCode::OutOfRange, "all_tangent_pencil_value needs even n >= 4");
  const BigInt v = (big_pow(q, 2 * n - 3) * (3 * q * q - 2) - big_pow(q, n) * (q - 1) - 1) / (q * q - 1);
  return static_cast<std::uint64_t>(v);
}

std::uint64_t affine_lachaud_bound(int n, int q, int degree) {
  if (n < 3) throw Error(ErrorCode::OutOfRange, "affine bound needs n >= 3");
  std::uint64_t b = static_cast<std::uint64_t>(degree - 1) * static_cast<std::uint64_t>(q + 1);
  for (int i = 0; i < 2 * n - 6; ++i) b *= static_cast<std::uint64_t>(q);
  return b;
}

LachaudCheck check_affine_lachaud(const HomogeneousPolynomial& c, const HermitianForm& f, const Hyperplane& sigma,
                                  const LinearSubspace& pi) {
  const FieldCtx& ctx = f.field();
  const int n = f.dim();
  if (n < 3) throw Error(ErrorCode::PreconditionViolated, "needs n >= 3");
  if (c.dim() != n || sigma.dim() != n || pi.ambient_dim() != n) throw Error(ErrorCode::PreconditionViolated, "dimension mismatch");
  if (c.degree() > ctx.q()) throw Error(ErrorCode::PreconditionViolated, "needs degree <= q");
  if (!f.nondegenerate()) throw Error(ErrorCode::PreconditionViolated, "needs a non-degenerate form");
  if (pi.dim() != n - 2) throw Error(ErrorCode::PreconditionViolated, "Pi must have dimension n-2");
  for (int r = 0; r < pi.basis().rows(); ++r) {
    if (!incident(ctx, sigma, pi.basis().row(r))) throw Error(ErrorCode::PreconditionViolated, "Pi is not inside Sigma");
  }
  if (!c.vanishes_on(pi)) throw Error(ErrorCode::PreconditionViolated, "Pi is not inside the hypersurface");
  const LinearSubspace sigma_space = hyperplane_subspace(ctx, sigma);
  if (c.vanishes_on(sigma_space)) throw Error(ErrorCode::PreconditionViolated, "Sigma is contained in the hypersurface");

  LachaudCheck r;
  for_each_point_in(ctx, sigma_space, [&](std::span<const Elem> x) {
    if (evaluate(f, x) != kZero || c.evaluate(x) != kZero) return;
    if (!pi.contains(ctx, x)) ++r.count;
  });
  r.bound = affine_lachaud_bound(n, ctx.q(), c.degree());
  r.holds = r.count <= r.bound;
  return r;
}

LachaudInstance make_lachaud_instance(const FieldCtx& ctx, int n, int degree, bool split_residual, Rng& rng) {
  if (degree < 2) throw Error(ErrorCode::OutOfRange, "instance degree must be >= 2");
  for (;;) {
    const Hyperplane sigma = make_hyperplane(ctx, random_nonzero_vector(ctx, n + 1, rng));
    const Hyperplane other = make_hyperplane(ctx, random_nonzero_vector(ctx, n + 1, rng));
    if (sigma == other) continue;

    const TermMap g1 = HomogeneousPolynomial::random(ctx, n, degree - 1, rng).terms();
    TermMap g2;
    if (split_residual) {
      std::vector<Hyperplane> factors;
      for (int k = 0; k < degree - 1; ++k) factors.push_back(make_hyperplane(ctx, random_nonzero_vector(ctx, n + 1, rng)));
      g2 = HomogeneousPolynomial::product_of_linear_forms(ctx, factors).terms();
    } else {
      g2 = HomogeneousPolynomial::random(ctx, n, degree - 1, rng).terms();
    }
    const TermMap sum = add_terms(ctx, multiply_terms(ctx, linear_terms(sigma.covector), g1),
                                  multiply_terms(ctx, linear_terms(other.covector), g2));
    if (sum.empty()) continue;
    HomogeneousPolynomial surface(ctx, n, degree, sum);
    if (surface.vanishes_on(hyperplane_subspace(ctx, sigma))) continue;
    return LachaudInstance{std::move(surface), sigma, intersect(ctx, {sigma, other})};
  }
}

}  // namespace hermcubic
