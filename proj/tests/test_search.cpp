#include <doctest.h>

#include <functional>
#include <set>

#include "hermcubic/errors.hpp"
#include "hermcubic/report.hpp"
#include "hermcubic/search.hpp"
#include "support/generators.hpp"

using namespace hermcubic;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalInvariant;
}

std::uint64_t total(const std::map<std::uint64_t, std::uint64_t>& h) {
  std::uint64_t t = 0;
  for (const auto& [v, c] : h) t += c;
  return t;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("pole Gram counts agree with section classification") {
  for (auto [n, q] : {std::pair{3, 2}, {4, 2}, {3, 3}}) {
    CAPTURE(n);
    CAPTURE(q);
    const FieldCtx ctx = make_field(q);
    Rng rng(1300 + static_cast<std::uint64_t>(n * 10 + q));
    const HermitianForm f = gen::nondegenerate_form(ctx, n, rng);
    const PoleGram g(f);
    const std::uint64_t nh = g.size();
    CHECK(nh == projective_size(n, ctx.order()));
    for (std::uint64_t i = 0; i < nh; ++i)
      CHECK(g.tangent(i) == (classify_hyperplane(f, g.hyperplane(i)).kind == Tangency::Tangent));
    for (int t = 0; t < 400; ++t) {
      const std::uint64_t a = rng() % nh, b = rng() % nh, c = rng() % nh;
      if (a == b || a == c || b == c) continue;
      const SectionType st = classify_section(f, intersect(ctx, {g.hyperplane(a), g.hyperplane(b)}));
      CHECK(g.pair(a, b) == section_point_count(st, q));
      CHECK(g.pair_rank(a, b) == st.m - st.v);
      const Arrangement arr = make_arrangement(f, {g.hyperplane(a), g.hyperplane(b), g.hyperplane(c)});
      const IntersectionReport r = intersect_count_arrangement(arr, f);
      const PoleGram::Triple tr = g.triple(a, b, c);
      CHECK(tr.count == r.count);
      CHECK(tr.pencil == arr.pencil());
      CHECK(g.triple(g.pair_ctx(a, b), c).count == r.count);
    }
  }
}

TEST_CASE("exhaustive and anchored searches agree") {
  for (auto [n, q] : {std::pair{3, 2}, {4, 2}}) {
    CAPTURE(n);
    const FieldCtx ctx = make_field(q);
    const auto f = HermitianForm::standard(ctx, n);
    TripleSearchOptions opts;
    opts.cross_check_samples = 200;
    const SearchReport ex = exhaustive_triples(f, {}, opts);
    const SearchReport an = anchored_triples(f, {}, opts);
    const std::uint64_t nh = projective_size(n, ctx.order());
    CHECK(ex.triples == nh * (nh - 1) * (nh - 2) / 6);
    CHECK(total(ex.histogram) == ex.triples);
    CHECK(an.triples == (nh - 1) * (nh - 2) / 2 + (nh - 2) * (nh - 3) / 2);
    CHECK(total(an.histogram) == an.triples);
    CHECK(ex.global_max == an.global_max);
    CHECK(ex.cross_check_mismatches == 0);
    CHECK(an.cross_check_mismatches == 0);
    CHECK(ex.argmax_verified);
    CHECK(an.argmax_verified);
    std::set<std::string> ex_keys, an_keys;
    for (const auto& [k, c] : ex.argmax_structure) ex_keys.insert(k);
    for (const auto& [k, c] : an.argmax_structure) an_keys.insert(k);
    CHECK(ex_keys == an_keys);
    for (const auto& e : ex.argmax) {
      CHECK(e.formula_count == ex.global_max);
      CHECK(e.enumerated_count == ex.global_max);
    }
    if (n == 4) {
      CHECK(ex.triples == 6550610);
      CHECK(ex.global_max == 111);
      CHECK(ex.max_formula_value == 117);
      CHECK_FALSE(ex.reaches_max_formula);
      CHECK(ex.argmax_structure.at("NNN codim3 U_1") == 14080);
    }
  }
}

TEST_CASE("search reports are deterministic and worker independent") {
  const FieldCtx ctx = make_field(2);
  const auto f = HermitianForm::standard(ctx, 3);
  const SearchReport a = exhaustive_triples(f, RunLimits{RunLimits::kDefaultBudget, 1});
  const SearchReport b = exhaustive_triples(f, RunLimits{RunLimits::kDefaultBudget, 3});
  CHECK(to_json(a) == to_json(b));
}

TEST_CASE("budget limits") {
  const FieldCtx ctx = make_field(2);
  const auto f = HermitianForm::standard(ctx, 4);
  CHECK(code_of([&] { exhaustive_triples(f, RunLimits{1000, 1}); }) == ErrorCode::BudgetExceeded);
  CHECK(code_of([&] { anchored_triples(f, RunLimits{1000, 1}); }) == ErrorCode::BudgetExceeded);
  CHECK(code_of([&] { incidence_double_count(f, RunLimits{1000, 1}); }) == ErrorCode::BudgetExceeded);
  CHECK(code_of([&] { random_cubic_sample(f, 5, 1, RunLimits{10, 1}); }) == ErrorCode::BudgetExceeded);
}

TEST_CASE("incidence double count") {
  for (auto [n, q, tangents] : {std::tuple{3, 2, 13}, {4, 2, 37}, {3, 3, 0}}) {
    CAPTURE(n);
    CAPTURE(q);
    const FieldCtx ctx = make_field(q);
    const auto f = HermitianForm::standard(ctx, n);
    const IncidenceReport r = incidence_double_count(f);
    CHECK(r.points == nondegenerate_count(n, q));
    CHECK(r.hyperplanes == projective_size(n, ctx.order()));
    CHECK(r.tangent_hyperplanes == r.points);
    CHECK(r.tangent_hyperplanes + r.nontangent_hyperplanes == r.hyperplanes);
    CHECK(r.expected_tangents_per_point == static_cast<std::uint64_t>(q) * q * nondegenerate_count(n - 2, q) + 1);
    if (tangents) CHECK(r.expected_tangents_per_point == static_cast<std::uint64_t>(tangents));
    CHECK(r.tangent_uniform);
    CHECK(r.tangents_per_point.size() == 1);
    CHECK(r.sums_agree);
    CHECK(r.left_sum == r.right_sum);
    CHECK(total(r.hyperplanes_per_point) == r.points);
  }
  const FieldCtx ctx = make_field(2);
  const IncidenceReport r = incidence_double_count(HermitianForm::standard(ctx, 4));
  CHECK(r.nontangent_hyperplanes == 176);
  CHECK(r.left_sum == 7920);
}

TEST_CASE("random sampling") {
  const FieldCtx ctx = make_field(2);
  const auto f = HermitianForm::standard(ctx, 4);
  const RandomSampleReport a = random_cubic_sample(f, 40, 7);
  const RandomSampleReport b = random_cubic_sample(f, 40, 7);
  CHECK(to_json(a) == to_json(b));
  CHECK(a.trials == 40);
  CHECK(total(a.histogram) == 40);
  CHECK(a.drawn == a.trials + a.discarded_linear_factor);
  CHECK(a.threshold == 99);
  CHECK_FALSE(a.in_range);
  CHECK(a.max_observed == a.histogram.rbegin()->first);
  std::uint64_t over = 0;
  for (const auto& [v, c] : a.histogram)
    if (v > a.threshold) over += c;
  CHECK(over == a.exceedances.size());
  const RandomSampleReport c = random_cubic_sample(f, 40, 8);
  CHECK(to_json(a) != to_json(c));
}

TEST_CASE("json and csv shapes") {
  const FieldCtx ctx = make_field(3);
  const auto f = HermitianForm::standard(ctx, 4);
  const Arrangement a = build_extremal(f);
  const Json j = to_json(a, 784);
  CHECK(j.at("count") == 784);
  CHECK(j.at("tangency").size() == 3);
  CHECK(j.at("covectors").size() == 3);
  CHECK(j.at("pi_section").at("v") == -1);
  const Json t = to_json(make_bound_table(7, 4, 5));
  CHECK(t.at("rows").at(0).at("B_rec") == "50424");
  CHECK(histogram_csv({{3, 4}, {5, 1}}) == "value,count\n3,4\n5,1\n");
  const IncidenceReport r = incidence_double_count(HermitianForm::standard(make_field(2), 3));
  const Json ji = to_json(r);
  for (const char* key : {"n", "q", "points", "tangent_hyperplanes", "sums_agree"}) CHECK(ji.contains(key));
  CHECK_FALSE(ji.contains("wall_time_s"));
}

}  // TEST_SUITE
