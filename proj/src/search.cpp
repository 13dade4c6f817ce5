#include "hermcubic/search.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <random>

#include "hermcubic/errors.hpp"
#include "hermcubic/sequences.hpp"

namespace hermcubic {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t choose2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }
std::uint64_t choose3(std::uint64_t n) { return n < 3 ? 0 : n * (n - 1) / 2 * (n - 2) / 3; }

int rank2(const FieldCtx& ctx, Elem g00, Elem g01, Elem g11) {
  const Elem det = ctx.sub(ctx.mul(g00, g11), ctx.norm(g01));
  if (det != kZero) return 2;
  return (g00 != kZero || g01 != kZero || g11 != kZero) ? 1 : 0;
}

int rank3(const FieldCtx& ctx, std::array<std::array<Elem, 3>, 3> m) {
  int r = 0;
  for (int col = 0; col < 3 && r < 3; ++col) {
    int piv = r;
    while (piv < 3 && m[piv][col] == kZero) ++piv;
    if (piv == 3) continue;
    std::swap(m[piv], m[r]);
    const Elem inv = ctx.inv(m[r][col]);
    for (int i = r + 1; i < 3; ++i) {
      if (m[i][col] == kZero) continue;
      const Elem factor = ctx.mul(m[i][col], inv);
      for (int c = col; c < 3; ++c) m[i][c] = ctx.sub(m[i][c], ctx.mul(factor, m[r][c]));
    }
    ++r;
  }
  return r;
}

}  // namespace

PoleGram::PoleGram(const HermitianForm& f) : ctx_(f.field()), n_(f.dim()) {
  if (!f.nondegenerate()) throw Error(ErrorCode::Degenerate, "pole Gram needs a non-degenerate form");
  if (n_ < 3) throw Error(ErrorCode::OutOfRange, "triple counts need n >= 3");
  const ProjectiveSpace dual(ctx_, n_);
  count_ = dual.size();
  const Matrix& hinv = *f.inverse_matrix();
  const int len = n_ + 1;
  hyperplanes_.reserve(count_);
  poles_.resize(count_ * len);
  diag_.resize(count_);
  dual.for_each([&](std::uint64_t idx, std::span<const Elem> a) {
    hyperplanes_.push_back(Hyperplane{Vec(a.begin(), a.end())});
    Elem* pole = poles_.data() + idx * len;
    for (int r = 0; r < len; ++r) pole[r] = ctx_.frobenius(dot(ctx_, hinv.row(r), a));
    diag_[idx] = gram(idx, idx);
  });
  const int q = ctx_.q();
  single_tangent_ = section_size(n_ - 1, q, n_ - 1);
  single_nontangent_ = section_size(n_ - 1, q, n_);
  pair_by_rank_.resize(3);
  for (int g = 0; g <= 2; ++g) pair_by_rank_[g] = section_size(n_ - 2, q, std::max(0, n_ - 3 + g));
  triple_by_rank_.resize(4);
  for (int g = 0; g <= 3; ++g) triple_by_rank_[g] = section_size(n_ - 3, q, std::max(0, n_ - 5 + g));
}

Elem PoleGram::gram(std::uint64_t a, std::uint64_t b) const noexcept {
  const std::size_t len = static_cast<std::size_t>(n_) + 1;
  return dot(ctx_, std::span<const Elem>(poles_.data() + a * len, len), hyperplanes_[b].covector);
}

std::uint64_t PoleGram::pair(std::uint64_t a, std::uint64_t b) const noexcept {
  return pair_by_rank_[rank2(ctx_, diag_[a], gram(a, b), diag_[b])];
}

int PoleGram::pair_rank(std::uint64_t a, std::uint64_t b) const noexcept {
  return std::max(0, n_ - 3 + rank2(ctx_, diag_[a], gram(a, b), diag_[b]));
}

PoleGram::PairCtx PoleGram::pair_ctx(std::uint64_t a, std::uint64_t b) const {
  PairCtx p;
  p.a = a;
  p.b = b;
  p.g_ab = gram(a, b);
  p.count = pair_by_rank_[rank2(ctx_, diag_[a], p.g_ab, diag_[b])];
  p.r0 = hyperplanes_[a].covector;
  p.p0 = 0;
  while (p.r0[p.p0] == kZero) ++p.p0;  // canonical: r0[p0] == 1
  p.r1 = hyperplanes_[b].covector;
  const Elem f = p.r1[p.p0];
  for (int i = 0; i <= n_; ++i) p.r1[i] = ctx_.sub(p.r1[i], ctx_.mul(f, p.r0[i]));
  p.p1 = 0;
  while (p.r1[p.p1] == kZero) ++p.p1;  // distinct hyperplanes, so r1 != 0
  const Elem inv = ctx_.inv(p.r1[p.p1]);
  for (auto& e : p.r1) e = ctx_.mul(e, inv);
  return p;
}

PoleGram::Triple PoleGram::triple(const PairCtx& p, std::uint64_t c) const noexcept {
  const Vec& ac = hyperplanes_[c].covector;
  const Elem f0 = ac[p.p0];
  const Elem f1 = ctx_.sub(ac[p.p1], ctx_.mul(f0, p.r0[p.p1]));
  bool dependent = true;
  for (int i = 0; i <= n_ && dependent; ++i) {
    const Elem v = ctx_.sub(ctx_.sub(ac[i], ctx_.mul(f0, p.r0[i])), ctx_.mul(f1, p.r1[i]));
    dependent = v == kZero;
  }
  const std::uint64_t singles = single(p.a) + single(p.b) + single(c);
  if (dependent) return Triple{singles - 2 * p.count, true};
  const Elem g_ac = gram(p.a, c);
  const Elem g_bc = gram(p.b, c);
  const std::uint64_t p_ac = pair_by_rank_[rank2(ctx_, diag_[p.a], g_ac, diag_[c])];
  const std::uint64_t p_bc = pair_by_rank_[rank2(ctx_, diag_[p.b], g_bc, diag_[c])];
  const int g3 = rank3(ctx_, {{{diag_[p.a], p.g_ab, g_ac},
                               {ctx_.frobenius(p.g_ab), diag_[p.b], g_bc},
                               {ctx_.frobenius(g_ac), ctx_.frobenius(g_bc), diag_[c]}}});
  return Triple{singles - p.count - p_ac - p_bc + triple_by_rank_[g3], false};
}

PoleGram::Triple PoleGram::triple(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
  return triple(pair_ctx(a, b), c);
}

namespace {

// Triples (anchor, others[j], others[k]) with j < k.
struct Family {
  std::uint64_t anchor = 0;
  std::vector<std::uint32_t> others;
};

struct WorkItem {
  std::uint32_t family = 0;
  std::uint32_t j = 0;
};

using TripleIdx = std::array<std::uint32_t, 3>;

std::uint64_t verify_count(const HermitianForm& f, const VarietyPoints& points, const Arrangement& a,
                           const RunLimits& limits, std::uint64_t formula, std::uint64_t* enumerated) {
  const std::uint64_t incl_excl = intersect_count_arrangement(a, f).count;
  *enumerated = intersect_count_enum(expand(a, f.field()), points, limits);
  return (incl_excl == formula && *enumerated == formula) ? 0 : 1;
}

Arrangement arrangement_of(const HermitianForm& f, const PoleGram& pg, const TripleIdx& t) {
  return make_arrangement(f, {pg.hyperplane(t[0]), pg.hyperplane(t[1]), pg.hyperplane(t[2])});
}

SearchReport run_families(const HermitianForm& f, const PoleGram& pg, const std::vector<Family>& families,
                          std::uint64_t total, const RunLimits& limits, const TripleSearchOptions& opts,
                          const char* mode, Clock::time_point start) {
  const int n = f.dim();
  const int q = f.field().q();
  std::vector<WorkItem> items;
  for (std::uint32_t fi = 0; fi < families.size(); ++fi)
    for (std::uint32_t j = 0; j + 1 < families[fi].others.size(); ++j) items.push_back({fi, j});

  std::uint64_t bound = 0;
  for (std::uint64_t i = 0; i < pg.size(); ++i) bound = std::max(bound, pg.single(i));
  bound = 3 * bound + 1;

  struct Partial {
    std::vector<std::uint64_t> hist;
    std::uint64_t best = 0;
    std::vector<TripleIdx> argmax;
  };
  const int workers = limits.resolved_workers();
  std::vector<Partial> parts(static_cast<std::size_t>(workers));
  parallel_ranges(items.size(), workers, [&](int w, std::uint64_t begin, std::uint64_t end) {
    Partial& part = parts[w];
    part.hist.assign(bound, 0);
    for (std::uint64_t it = begin; it < end; ++it) {
      const Family& fam = families[items[it].family];
      const std::uint32_t jj = items[it].j;
      const std::uint32_t b = fam.others[jj];
      const auto pc = pg.pair_ctx(fam.anchor, b);
      for (std::size_t kk = jj + 1; kk < fam.others.size(); ++kk) {
        const std::uint32_t c = fam.others[kk];
        const std::uint64_t v = pg.triple(pc, c).count;
        ++part.hist[v];
        if (v < part.best) continue;
        if (v > part.best) {
          part.best = v;
          part.argmax.clear();
        }
        TripleIdx t{static_cast<std::uint32_t>(fam.anchor), b, c};
        std::sort(t.begin(), t.end());
        part.argmax.push_back(t);
      }
    }
  });

  SearchReport r;
  r.n = n;
  r.q = q;
  r.mode = mode;
  r.triples = total;
  std::vector<std::uint64_t> hist(bound, 0);
  for (const auto& p : parts) {
    r.global_max = std::max(r.global_max, p.best);
    for (std::size_t v = 0; v < p.hist.size(); ++v) hist[v] += p.hist[v];
  }
  std::vector<TripleIdx> argmax;
  for (const auto& p : parts)
    if (p.best == r.global_max) argmax.insert(argmax.end(), p.argmax.begin(), p.argmax.end());
  std::sort(argmax.begin(), argmax.end());
  for (std::size_t v = 0; v < hist.size(); ++v)
    if (hist[v] != 0) r.histogram[v] = hist[v];
  r.formula_resolved = total;
  r.enumeration_resolved = 0;
  if (n >= 4) {
    r.max_formula_value = max_formula(n, q);
    r.reaches_max_formula = r.global_max >= r.max_formula_value;
  }

  const VarietyPoints points(f, limits);
  r.argmax_verified = true;
  for (const auto& t : argmax) {
    ArgmaxEntry e{arrangement_of(f, pg, t), r.global_max, 0};
    if (verify_count(f, points, e.arrangement, limits, r.global_max, &e.enumerated_count) != 0) r.argmax_verified = false;
    const std::string key = e.arrangement.tangency_pattern() + (e.arrangement.pencil() ? " pencil " : " codim3 ") +
                            e.arrangement.common_section.label();
    ++r.argmax_structure[key];
    r.argmax.push_back(std::move(e));
  }

  Rng rng(opts.seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, pg.size() - 1);
  const std::uint64_t samples = std::min<std::uint64_t>(opts.cross_check_samples, choose3(pg.size()));
  for (std::uint64_t s = 0; s < samples; ++s) {
    TripleIdx t;
    do {
      t = {static_cast<std::uint32_t>(pick(rng)), static_cast<std::uint32_t>(pick(rng)),
           static_cast<std::uint32_t>(pick(rng))};
    } while (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]);
    const std::uint64_t formula = pg.triple(t[0], t[1], t[2]).count;
    std::uint64_t enumerated = 0;
    r.cross_check_mismatches += verify_count(f, points, arrangement_of(f, pg, t), limits, formula, &enumerated);
    ++r.cross_checked;
  }
  r.wall_time_s = seconds_since(start);
  return r;
}

}  // namespace

SearchReport exhaustive_triples(const HermitianForm& f, const RunLimits& limits, const TripleSearchOptions& opts) {
  const auto start = Clock::now();
  const std::uint64_t hyperplanes = projective_size(f.dim(), static_cast<std::uint64_t>(f.field().order()));
  const std::uint64_t total = choose3(hyperplanes);
  check_budget(total, limits, "exhaustive_triples");
  const PoleGram pg(f);
  std::vector<Family> families;
  for (std::uint64_t i = 0; i + 2 < pg.size(); ++i) {
    Family fam{i, {}};
    for (std::uint64_t j = i + 1; j < pg.size(); ++j) fam.others.push_back(static_cast<std::uint32_t>(j));
    families.push_back(std::move(fam));
  }
  return run_families(f, pg, families, total, limits, opts, "exhaustive", start);
}

SearchReport anchored_triples(const HermitianForm& f, const RunLimits& limits, const TripleSearchOptions& opts) {
  const auto start = Clock::now();
  const std::uint64_t hyperplanes = projective_size(f.dim(), static_cast<std::uint64_t>(f.field().order()));
  const std::uint64_t total = choose2(hyperplanes - 1) + choose2(hyperplanes - 2);
  check_budget(total, limits, "anchored_triples");
  const PoleGram pg(f);
  std::uint64_t tangent = pg.size();
  std::uint64_t nontangent = pg.size();
  for (std::uint64_t i = 0; i < pg.size() && (tangent == pg.size() || nontangent == pg.size()); ++i) {
    if (pg.tangent(i)) {
      if (tangent == pg.size()) tangent = i;
    } else if (nontangent == pg.size()) {
      nontangent = i;
    }
  }
  if (tangent == pg.size() || nontangent == pg.size()) {
    throw Error(ErrorCode::InternalInvariant, "both tangency classes must be non-empty");
  }
  std::vector<Family> families(2);
  families[0].anchor = tangent;
  families[1].anchor = nontangent;
  for (std::uint64_t i = 0; i < pg.size(); ++i) {
    if (i != tangent) families[0].others.push_back(static_cast<std::uint32_t>(i));
    if (i != tangent && i != nontangent) families[1].others.push_back(static_cast<std::uint32_t>(i));
  }
  return run_families(f, pg, families, total, limits, opts, "anchored", start);
}

IncidenceReport incidence_double_count(const HermitianForm& f, const RunLimits& limits) {
  const auto start = Clock::now();
  if (!f.nondegenerate()) throw Error(ErrorCode::Degenerate, "incidence count needs a non-degenerate form");
  const FieldCtx& ctx = f.field();
  const int n = f.dim();
  const int q = ctx.q();
  const ProjectiveSpace dual(ctx, n);
  const VarietyPoints points(f, limits);
  check_budget(dual.size() * points.size(), limits, "incidence_double_count");

  const int workers = limits.resolved_workers();
  struct Partial {
    std::vector<std::uint64_t> tangents, all, nontangent;
    std::uint64_t tangent_planes = 0, right = 0;
  };
  std::vector<Partial> parts(static_cast<std::size_t>(workers));
  parallel_ranges(dual.size(), workers, [&](int w, std::uint64_t begin, std::uint64_t end) {
    Partial& part = parts[w];
    part.tangents.assign(points.size(), 0);
    part.all.assign(points.size(), 0);
    part.nontangent.assign(points.size(), 0);
    DenseBitset on_plane(points.size());
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const Hyperplane h = dual.hyperplane(idx);
      const bool tangent = classify_hyperplane(f, h).kind == Tangency::Tangent;
      on_plane = DenseBitset(points.size());
      for (std::size_t p = 0; p < points.size(); ++p)
        if (incident(ctx, h, points.coords(p))) on_plane.set(p);
      for (std::size_t p = 0; p < points.size(); ++p) {
        if (!on_plane.test(p)) continue;
        ++part.all[p];
        ++(tangent ? part.tangents[p] : part.nontangent[p]);
      }
      if (tangent) {
        ++part.tangent_planes;
      } else {
        part.right += on_plane.count();
      }
    }
  });

  IncidenceReport r;
  r.n = n;
  r.q = q;
  r.points = points.size();
  r.hyperplanes = dual.size();
  r.expected_tangents_per_point = static_cast<std::uint64_t>(q) * q * nondegenerate_count(n - 2, q) + 1;
  r.expected_hyperplanes_per_point = projective_size(n - 1, static_cast<std::uint64_t>(ctx.order()));
  for (std::size_t p = 0; p < points.size(); ++p) {
    std::uint64_t t = 0, a = 0, nt = 0;
    for (const auto& part : parts) {
      if (part.all.empty()) continue;
      t += part.tangents[p];
      a += part.all[p];
      nt += part.nontangent[p];
    }
    ++r.tangents_per_point[t];
    ++r.hyperplanes_per_point[a];
    r.left_sum += nt;
  }
  for (const auto& part : parts) {
    r.tangent_hyperplanes += part.tangent_planes;
    r.right_sum += part.right;
  }
  r.nontangent_hyperplanes = r.hyperplanes - r.tangent_hyperplanes;
  r.tangent_uniform = r.tangents_per_point.size() == 1 &&
                      r.tangents_per_point.begin()->first == r.expected_tangents_per_point;
  r.sums_agree = r.left_sum == r.right_sum;
  r.wall_time_s = seconds_since(start);
  return r;
}

RandomSampleReport random_cubic_sample(const HermitianForm& f, std::uint64_t trials, std::uint64_t seed,
                                       const RunLimits& limits) {
  const auto start = Clock::now();
  if (!f.nondegenerate()) throw Error(ErrorCode::Degenerate, "sampling needs a non-degenerate form");
  const FieldCtx& ctx = f.field();
  const int n = f.dim();
  RandomSampleReport r;
  r.n = n;
  r.q = ctx.q();
  r.trials = trials;
  r.seed = seed;
  r.threshold = static_cast<std::uint64_t>(b_rec(n, ctx.q()));
  r.in_range = ctx.q() >= 7;
  const std::uint64_t per_trial = projective_size(n, static_cast<std::uint64_t>(ctx.order()));
  check_budget(2 * per_trial, limits, "random_cubic_sample (per trial)");
  const VarietyPoints points(f, limits);

  Rng rng(seed);
  std::uint64_t accepted = 0;
  while (accepted < trials) {
    const auto c = HomogeneousPolynomial::random(ctx, n, 3, rng);
    ++r.drawn;
    if (find_linear_factor(c, limits)) {
      ++r.discarded_linear_factor;
      continue;
    }
    ++accepted;
    const std::uint64_t k = intersect_count_enum(c, points, limits);
    ++r.histogram[k];
    r.max_observed = std::max(r.max_observed, k);
    if (k > r.threshold) r.exceedances.push_back(Exceedance{c.to_string(), k});
  }
  r.wall_time_s = seconds_since(start);
  return r;
}

}  // namespace hermcubic
