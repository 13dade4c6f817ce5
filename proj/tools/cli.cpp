#include "cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hermcubic/cubics.hpp"
#include "hermcubic/errors.hpp"
#include "hermcubic/hermitian.hpp"
#include "hermcubic/report.hpp"
#include "hermcubic/search.hpp"
#include "hermcubic/sequences.hpp"

namespace hermcubic::cli {

namespace {

struct RunConfig {
  int q = 0;
  int n = 0;
  std::uint64_t budget = RunLimits::kDefaultBudget;
  int workers = 0;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string output;

  RunLimits limits() const { return RunLimits{budget, workers}; }
};

// Collects assertion outcomes; informational entries never affect the exit code.
class Checks {
 public:
  void check(const std::string& name, bool pass, Json detail = {}) {
    if (!pass) failures_.push_back(name);
    checks_.push_back({{"name", name}, {"pass", pass}, {"detail", std::move(detail)}});
  }
  void inform(const std::string& name, bool holds, Json detail = {}) {
    informational_.push_back({{"name", name}, {"holds", holds}, {"detail", std::move(detail)}});
  }
  bool pass() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }
  Json checks() const { return checks_; }
  Json informational() const { return informational_; }

 private:
  Json checks_ = Json::array();
  Json informational_ = Json::array();
  std::vector<std::string> failures_;
};

struct Outcome {
  Json result;
  Checks checks;
  std::string csv;  // empty when the command has no CSV form
};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

bool usage_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotPrimePower:
    case ErrorCode::ExceedsCap:
    case ErrorCode::InvalidArgument:
    case ErrorCode::OutOfRange:
    case ErrorCode::BudgetExceeded:
    case ErrorCode::WrongDimension:
    case ErrorCode::UnknownSuite:
    case ErrorCode::UnknownMode:
      return true;
    default:
      return false;
  }
}

std::uint64_t histogram_total(const std::map<std::uint64_t, std::uint64_t>& h) {
  std::uint64_t t = 0;
  for (const auto& [v, c] : h) t += c;
  return t;
}

Outcome cmd_count(const RunConfig& cfg, int rank_opt) {
  const FieldCtx ctx = make_field(cfg.q);
  if (cfg.n < 0) throw Error(ErrorCode::OutOfRange, "n must be >= 0");
  const int r = rank_opt > 0 ? rank_opt : cfg.n + 1;
  const std::uint64_t formula = count_points_formula(cfg.n, cfg.q, r);
  const HermitianForm f = HermitianForm::of_rank(ctx, cfg.n, r);
  Outcome o;
  o.result = {{"rank", r}, {"formula", formula}, {"enumerated", nullptr}};
  const std::uint64_t scan = projective_size(cfg.n, static_cast<std::uint64_t>(ctx.order()));
  std::string enumerated;
  if (scan <= cfg.budget) {
    const std::uint64_t e = count_points_enum(f, cfg.limits());
    o.result["enumerated"] = e;
    enumerated = std::to_string(e);
    o.checks.check("formula == enumeration", formula == e, {{"formula", formula}, {"enumerated", e}});
  } else {
    o.checks.inform("enumeration skipped", false, {{"points", scan}, {"budget", cfg.budget}});
  }
  o.csv = "n,q,rank,formula,enumerated\n" + std::to_string(cfg.n) + ',' + std::to_string(cfg.q) + ',' +
          std::to_string(r) + ',' + std::to_string(formula) + ',' + enumerated + '\n';
  return o;
}

Outcome suite_sequences(const RunConfig& cfg) {
  if (!factor_prime_power(cfg.q)) throw Error(ErrorCode::NotPrimePower, "q=" + std::to_string(cfg.q));
  if (cfg.n < 4) throw Error(ErrorCode::OutOfRange, "sequences suite needs n >= 4");
  Outcome o;
  const BoundTable table = make_bound_table(cfg.q, 4, cfg.n);
  Json bad_a = Json::array(), bad_b = Json::array(), bad_cone = Json::array();
  for (const auto& row : table.rows) {
    if (row.a_rec != row.a_closed) bad_a.push_back(row.n);
    if (row.b_rec != row.b_closed) bad_b.push_back(row.n);
    // Codimension-2 section types as rank-(n-1), (n-2), (n-3) forms on P^{n-2}.
    const bool cone_ok = row.nondegenerate_codim2 == count_points_formula(row.n - 2, cfg.q, row.n - 1) &&
                         row.cone0 == count_points_formula(row.n - 2, cfg.q, row.n - 2) &&
                         row.cone1 == count_points_formula(row.n - 2, cfg.q, row.n - 3);
    if (!cone_ok) bad_cone.push_back(row.n);
  }
  o.checks.check("A_rec == A_closed", bad_a.empty(), {{"failing_n", bad_a}});
  o.checks.check("B_rec == B_closed", bad_b.empty(), {{"failing_n", bad_b}});
  o.checks.check("cone counts match section formula", bad_cone.empty(), {{"failing_n", bad_cone}});
  Json bad_cor = Json::array();
  for (int n = 5; n <= cfg.n; ++n)
    if (!check_corollary_inq(n, cfg.q)) bad_cor.push_back(n);
  o.checks.check("B_{n-1} bound inequality", bad_cor.empty(), {{"failing_n", bad_cor}});
  Json lemma = Json::array();
  bool lemma_ok = true;
  for (int n = 4; n <= cfg.n; ++n) {
    const InequalityCheck c = check_lemma_ineq1(n, cfg.q);
    lemma_ok = lemma_ok && c.holds;
    lemma.push_back({{"n", n}, {"lhs", c.lhs.str()}, {"rhs", c.rhs.str()}, {"holds", c.holds}});
  }
  if (cfg.q >= 3) {
    o.checks.check("section bound + A_n < B_n", lemma_ok, lemma);
  } else {
    o.checks.inform("section bound + A_n < B_n (q < 3)", lemma_ok, lemma);
  }
  o.result = to_json(table);
  o.csv = to_csv(table);
  return o;
}

Outcome suite_sections(const RunConfig& cfg, std::uint64_t samples) {
  const FieldCtx ctx = make_field(cfg.q);
  if (cfg.n < 3) throw Error(ErrorCode::OutOfRange, "sections suite needs n >= 3");
  const HermitianForm f = HermitianForm::standard(ctx, cfg.n);
  Outcome o;
  Rng rng(cfg.seed);
  std::map<std::string, std::uint64_t> types;
  std::uint64_t mismatches = 0, foreign = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const LinearSubspace w = random_subspace(ctx, cfg.n, cfg.n - 2, rng);
    const SectionType t = classify_section(f, w);
    ++types[t.label()];
    if (t.v > 1) ++foreign;
    std::uint64_t enumerated = 0;
    for_each_point_in(ctx, w, [&](std::span<const Elem> x) { enumerated += evaluate(f, x) == kZero; });
    if (section_point_count(t, cfg.q) != enumerated) ++mismatches;
  }
  Json type_json = Json::object();
  for (const auto& [k, v] : types) type_json[k] = v;
  o.checks.check("section formula == enumeration", mismatches == 0, {{"samples", samples}, {"mismatches", mismatches}});
  o.checks.check("only the three codim-2 types occur", foreign == 0, {{"types", type_json}});

  // Pairwise exclusions over every hyperplane pair, by restricted-form rank and by pole Gram rank.
  const PoleGram pg(f);
  const std::uint64_t pairs = pg.size() * (pg.size() - 1) / 2;
  check_budget(pairs, cfg.limits(), "pairwise exclusions");
  constexpr std::uint64_t kFullRankPairs = 5'000'000;
  const bool full = pairs <= kFullRankPairs;
  std::uniform_int_distribution<std::uint64_t> pick(0, pg.size() - 1);
  std::uint64_t nt_cone1 = 0, tt_cone0 = 0, route_mismatch = 0;
  const SectionType cone0 = section_type_from_rank(cfg.n - 2, cfg.n - 2);
  const SectionType cone1 = section_type_from_rank(cfg.n - 2, cfg.n - 3);
  std::uint64_t compared = 0;
  auto visit = [&](std::uint64_t a, std::uint64_t b, bool by_rank) {
    const SectionType gram_type = section_type_from_rank(cfg.n - 2, pg.pair_rank(a, b));
    const bool both_tangent = pg.tangent(a) && pg.tangent(b);
    if (!both_tangent && gram_type == cone1) ++nt_cone1;
    if (both_tangent && gram_type == cone0) ++tt_cone0;
    if (!by_rank) return;
    const SectionType t = classify_section(f, intersect(ctx, {pg.hyperplane(a), pg.hyperplane(b)}));
    route_mismatch += t != gram_type;
    ++compared;
  };
  for (std::uint64_t a = 0; a < pg.size(); ++a)
    for (std::uint64_t b = a + 1; b < pg.size(); ++b) visit(a, b, full);
  if (!full) {
    // Restricted-rank route on a seeded sample; exclusions above still cover every pair.
    for (std::uint64_t k = 0; k < samples * 100; ++k) {
      std::uint64_t a = 0, b = 0;
      do {
        a = pick(rng);
        b = pick(rng);
      } while (a == b);
      const SectionType t = classify_section(f, intersect(ctx, {pg.hyperplane(a), pg.hyperplane(b)}));
      route_mismatch += t != section_type_from_rank(cfg.n - 2, pg.pair_rank(a, b));
      ++compared;
    }
  }
  o.checks.check("pairs with a non-tangent member avoid " + cone1.label(), nt_cone1 == 0, {{"pairs", pairs}, {"violations", nt_cone1}});
  o.checks.check("tangent pairs avoid " + cone0.label(), tt_cone0 == 0, {{"pairs", pairs}, {"violations", tt_cone0}});
  o.checks.check("pair count: restricted rank == pole Gram rank", route_mismatch == 0,
                 {{"compared", compared}, {"exhaustive", full}, {"mismatches", route_mismatch}});
  o.result = {{"samples", samples}, {"types", type_json}, {"pairs", pairs}};
  return o;
}

Outcome suite_incidence(const RunConfig& cfg) {
  const FieldCtx ctx = make_field(cfg.q);
  if (cfg.n < 2) throw Error(ErrorCode::OutOfRange, "incidence suite needs n >= 2");
  const HermitianForm f = HermitianForm::standard(ctx, cfg.n);
  const IncidenceReport r = incidence_double_count(f, cfg.limits());
  Outcome o;
  o.checks.check("tangents per point uniform and = q^2|U_{n-2}|+1", r.tangent_uniform,
                 {{"expected", r.expected_tangents_per_point}});
  o.checks.check("hyperplanes per point uniform",
                 r.hyperplanes_per_point.size() == 1 &&
                     r.hyperplanes_per_point.begin()->first == r.expected_hyperplanes_per_point,
                 {{"expected", r.expected_hyperplanes_per_point}});
  o.checks.check("non-tangent hyperplanes = |P^n| - |U_n|", r.nontangent_hyperplanes == r.hyperplanes - r.points,
                 {{"nontangent", r.nontangent_hyperplanes}});
  o.checks.check("incidence double count", r.sums_agree, {{"left", r.left_sum}, {"right", r.right_sum}});
  o.result = to_json(r);
  o.csv = histogram_csv(r.tangents_per_point);
  return o;
}

Outcome suite_extremal(const RunConfig& cfg) {
  const FieldCtx ctx = make_field(cfg.q);
  if (cfg.n < 4) throw Error(ErrorCode::OutOfRange, "extremal suite needs n >= 4");
  const HermitianForm f = HermitianForm::standard(ctx, cfg.n);
  const std::uint64_t target = max_formula(cfg.n, cfg.q);
  Outcome o;
  o.result = {{"max_formula", target}};
  Arrangement a;
  try {
    a = build_extremal(f);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InsufficientPencilMembers) throw;
    o.checks.check("build_extremal", false, e.what());
    return o;
  }
  const std::uint64_t formula = intersect_count_arrangement(a, f).count;
  o.checks.check("built count == max_formula", formula == target, {{"built", formula}, {"max_formula", target}});
  const std::uint64_t scan = projective_size(cfg.n, static_cast<std::uint64_t>(ctx.order()));
  if (scan <= cfg.budget) {
    const std::uint64_t e = intersect_count_enum(expand(a, ctx), f, cfg.limits());
    o.checks.check("enumerated count == max_formula", e == target, {{"enumerated", e}, {"points", scan}});
  } else {
    o.checks.inform("enumeration skipped", false, {{"points", scan}, {"budget", cfg.budget}});
  }
  o.result["arrangement"] = to_json(a, formula);

  if (cfg.n % 2 == 0) {
    // Non-extremal variants: tangent members in the same pencil, or a third member off the pencil.
    Json variants = Json::array();
    bool strict = true;
    std::vector<Hyperplane> tangents;
    for (const auto& h : pencil_through(ctx, a.common))
      if (classify_hyperplane(f, h).kind == Tangency::Tangent) tangents.push_back(h);
    auto record = [&](std::vector<Hyperplane> hs, const char* label) {
      const Arrangement v = make_arrangement(f, std::move(hs));
      const std::uint64_t c = intersect_count_arrangement(v, f).count;
      strict = strict && c < target;
      variants.push_back({{"variant", label}, {"pattern", v.tangency_pattern()}, {"count", c}});
    };
    for (std::size_t t = 1; t <= 3 && t <= tangents.size(); ++t) {
      std::vector<Hyperplane> hs(tangents.begin(), tangents.begin() + static_cast<long>(t));
      for (std::size_t k = 0; hs.size() < 3; ++k) hs.push_back(a.hyperplanes[k]);
      record(std::move(hs), "pencil with tangent members");
    }
    const ProjectiveSpace dual(ctx, cfg.n);
    for (std::uint64_t idx = 0; idx < dual.size(); ++idx) {
      Hyperplane h = dual.hyperplane(idx);
      bool contains_pi = true;
      for (int r = 0; r < a.common.basis().rows() && contains_pi; ++r)
        contains_pi = incident(ctx, h, a.common.basis().row(r));
      if (contains_pi || classify_hyperplane(f, h).kind != Tangency::NonTangent) continue;
      record({a.hyperplanes[0], a.hyperplanes[1], std::move(h)}, "codimension-3 meet");
      break;
    }
    if (cfg.q >= 3) {
      o.checks.check("non-extremal variants fall strictly below max_formula", strict, variants);
    } else {
      o.checks.inform("non-extremal variants fall strictly below max_formula (q < 3)", strict, variants);
    }
  }
  return o;
}

Outcome suite_lachaud(const RunConfig& cfg, std::uint64_t samples) {
  const FieldCtx ctx = make_field(cfg.q);
  if (cfg.n < 3) throw Error(ErrorCode::OutOfRange, "lachaud suite needs n >= 3");
  const HermitianForm f = HermitianForm::standard(ctx, cfg.n);
  Outcome o;
  Rng rng(cfg.seed);
  Json per_degree = Json::array();
  for (int d = 2; d <= 3; ++d) {
    if (d > cfg.q) continue;
    std::uint64_t violations = 0, max_count = 0;
    const std::uint64_t bound = affine_lachaud_bound(cfg.n, cfg.q, d);
    for (std::uint64_t s = 0; s < samples; ++s) {
      const LachaudInstance inst = make_lachaud_instance(ctx, cfg.n, d, s % 2 == 0, rng);
      const LachaudCheck c = check_affine_lachaud(inst.surface, f, inst.sigma, inst.pi);
      violations += !c.holds;
      max_count = std::max(max_count, c.count);
    }
    o.checks.check("affine bound holds, d=" + std::to_string(d), violations == 0,
                   {{"instances", samples}, {"bound", bound}, {"max_count", max_count}, {"violations", violations}});
    per_degree.push_back({{"d", d}, {"bound", bound}, {"max_count", max_count}});
  }
  o.result = {{"degrees", per_degree}};
  return o;
}

Outcome cmd_search(const RunConfig& cfg, const std::string& mode, std::uint64_t trials, double* wall) {
  if (mode != "triples" && mode != "anchored" && mode != "random") {
    throw Error(ErrorCode::UnknownMode, "mode '" + mode + "' (expected triples, anchored or random)");
  }
  const FieldCtx ctx = make_field(cfg.q);
  const HermitianForm f = HermitianForm::standard(ctx, cfg.n);
  Outcome o;
  if (mode == "random") {
    const RandomSampleReport r = random_cubic_sample(f, trials, cfg.seed, cfg.limits());
    *wall = r.wall_time_s;
    Json exceed = to_json(r)["exceedances"];
    if (r.in_range) {
      o.checks.check("no sample exceeds B_n", r.exceedances.empty(), exceed);
    } else {
      o.checks.inform("no sample exceeds B_n (q < 7)", r.exceedances.empty(), exceed);
    }
    o.result = to_json(r);
    o.csv = histogram_csv(r.histogram);
    return o;
  }
  const TripleSearchOptions opts{1000, cfg.seed};
  const SearchReport r = mode == "triples" ? exhaustive_triples(f, cfg.limits(), opts) : anchored_triples(f, cfg.limits(), opts);
  *wall = r.wall_time_s;
  o.checks.check("histogram total == triples", histogram_total(r.histogram) == r.triples, {{"triples", r.triples}});
  o.checks.check("argmax re-verified by enumeration", r.argmax_verified, {{"argmax", r.argmax.size()}});
  o.checks.check("formula path == enumeration on sampled triples", r.cross_check_mismatches == 0,
                 {{"sampled", r.cross_checked}, {"mismatches", r.cross_check_mismatches}});
  bool all_pencil = true;
  for (const auto& e : r.argmax) all_pencil = all_pencil && e.arrangement.pencil();
  if (cfg.q >= 3) {
    o.checks.check("every argmax triple is a pencil triple", all_pencil);
  } else {
    o.checks.inform("every argmax triple is a pencil triple (q < 3)", all_pencil);
  }
  o.checks.inform("global max reaches max_formula", r.reaches_max_formula,
                  {{"global_max", r.global_max}, {"max_formula", r.max_formula_value}});
  o.result = to_json(r);
  o.csv = histogram_csv(r.histogram);
  return o;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hermitian variety intersection counts and searches"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--budget", cfg.budget, "maximum point evaluations")->envname("HERMCUBIC_BUDGET");
  app.add_option("--workers", cfg.workers, "worker threads (0 = hardware concurrency)")->envname("HERMCUBIC_WORKERS");
  app.add_option("--format", cfg.format, "json or csv");
  app.add_option("--output", cfg.output, "write the report to this path");

  int rank_opt = 0;
  auto* count = app.add_subcommand("count", "point counts by formula and enumeration");
  count->add_option("--q", cfg.q)->required();
  count->add_option("--n", cfg.n)->required();
  count->add_option("--rank", rank_opt, "rank of the form (default n+1)");

  std::string suite;
  std::uint64_t samples = 0;
  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("--suite", suite)->required();
  verify->add_option("--q", cfg.q)->required();
  verify->add_option("--n", cfg.n)->required();
  verify->add_option("--samples", samples);
  verify->add_option("--seed", cfg.seed);

  std::string mode;
  std::uint64_t trials = 200;
  auto* search = app.add_subcommand("search", "triple search or random cubic sampling");
  search->add_option("--q", cfg.q)->required();
  search->add_option("--n", cfg.n)->required();
  search->add_option("--mode", mode)->required();
  search->add_option("--trials", trials);
  search->add_option("--seed", cfg.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Json envelope = {{"schema", 1}};
  Outcome o;
  double wall = -1.0;
  try {
    if (cfg.budget == 0) throw Error(ErrorCode::InvalidArgument, "budget must be > 0");
    if (cfg.format != "json" && cfg.format != "csv") throw Error(ErrorCode::InvalidArgument, "format must be json or csv");
    if (*count) {
      envelope["command"] = "count";
      o = cmd_count(cfg, rank_opt);
    } else if (*verify) {
      envelope["command"] = "verify";
      envelope["suite"] = suite;
      if (suite == "sequences") {
        o = suite_sequences(cfg);
      } else if (suite == "sections") {
        o = suite_sections(cfg, samples ? samples : 100);
      } else if (suite == "incidence") {
        o = suite_incidence(cfg);
      } else if (suite == "extremal") {
        o = suite_extremal(cfg);
      } else if (suite == "lachaud") {
        o = suite_lachaud(cfg, samples ? samples : 50);
      } else {
        throw Error(ErrorCode::UnknownSuite, "suite '" + suite + "'");
      }
    } else {
      envelope["command"] = "search";
      envelope["mode"] = mode;
      o = cmd_search(cfg, mode, trials, &wall);
    }
    if (cfg.format == "csv" && o.csv.empty()) throw Error(ErrorCode::InvalidArgument, "no CSV form for this report");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return usage_error(e.code()) ? 2 : 1;
  }

  envelope["q"] = cfg.q;
  envelope["n"] = cfg.n;
  envelope["seed"] = cfg.seed;
  envelope["pass"] = o.checks.pass();
  envelope["checks"] = o.checks.checks();
  envelope["informational"] = o.checks.informational();
  envelope["result"] = std::move(o.result);
  if (wall < 0) wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  envelope["timestamp"] = {{"utc", utc_now()}, {"wall_time_s", wall}};

  const std::string text = cfg.format == "csv" ? o.csv : envelope.dump(2) + "\n";
  if (cfg.output.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.output);
    if (!file) {
      err << "error: cannot write " << cfg.output << '\n';
      return 2;
    }
    file << text;
  }
  for (const auto& name : o.checks.failures()) err << "FAILED: " << name << '\n';
  return o.checks.pass() ? 0 : 1;
}

}  // namespace hermcubic::cli
