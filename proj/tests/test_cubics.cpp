#include <doctest.h>

#include <functional>
#include <map>

#include "hermcubic/cubics.hpp"
#include "hermcubic/errors.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

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

// Divisibility by L = x_k + sum_{j != k} a_j x_j (a_k = 1): substitute x_k = -sum a_j x_j
// symbolically and test for the zero polynomial. Independent of any point evaluation.
bool divides_by_substitution(const oracle::Field& o, const HomogeneousPolynomial& c, const std::vector<int>& a) {
  int k = 0;
  while (a[k] == 0) ++k;
  using Poly = std::map<std::vector<int>, int>;
  Poly total;
  const int len = static_cast<int>(a.size());
  for (const auto& [e, coef] : c.terms()) {
    Poly term{{std::vector<int>(len, 0), static_cast<int>(coef.index)}};
    for (int v = 0; v < len; ++v) {
      for (int r = 0; r < e[v]; ++r) {
        Poly factor;
        if (v != k) {
          std::vector<int> ev(len, 0);
          ev[v] = 1;
          factor[ev] = 1;
        } else {
          for (int j = 0; j < len; ++j) {
            if (j == k || a[j] == 0) continue;
            std::vector<int> ev(len, 0);
            ev[j] = 1;
            factor[ev] = o.neg(a[j]);
          }
        }
        Poly next;
        for (const auto& [e1, c1] : term)
          for (const auto& [e2, c2] : factor) {
            std::vector<int> s(len);
            for (int i = 0; i < len; ++i) s[i] = e1[i] + e2[i];
            next[s] = o.add(next[s], o.mul(c1, c2));
          }
        term = std::move(next);
      }
    }
    for (const auto& [e1, c1] : term) total[e1] = o.add(total[e1], c1);
  }
  for (const auto& [e, coef] : total)
    if (coef != 0) return false;
  return true;
}

}  // namespace

TEST_SUITE("cubics") {

TEST_CASE("monomial basis") {
  CHECK(monomials(4, 3).size() == 35);
  CHECK(monomials(2, 2).size() == 6);
  const auto m = monomials(1, 2);
  CHECK(m.front() == Exponents{2, 0});
  CHECK(m.back() == Exponents{0, 2});
}

TEST_CASE("polynomial normalisation and validation") {
  const FieldCtx ctx = make_field(2);
  TermMap t{{Exponents{1, 1, 1}, Elem{2}}, {Exponents{0, 0, 3}, Elem{3}}};
  const HomogeneousPolynomial p(ctx, 2, 3, t);
  CHECK(p.terms().begin()->second == kOne);
  CHECK(p.to_string() == "x0*x1*x2 + [2]*x2^3");
  CHECK(code_of([&] { HomogeneousPolynomial(ctx, 2, 3, TermMap{}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { HomogeneousPolynomial(ctx, 2, 3, TermMap{{Exponents{1, 1, 0}, kOne}}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([&] { HomogeneousPolynomial(ctx, 2, 3, TermMap{{Exponents{1, 2}, kOne}}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("product of linear forms evaluates as the product") {
  for (int q : {2, 3, 4}) {
    const FieldCtx ctx = make_field(q);
    Rng rng(500 + static_cast<std::uint64_t>(q));
    for (int t = 0; t < 30; ++t) {
      const auto hs = gen::hyperplane_triple(ctx, 3, rng);
      const auto c = HomogeneousPolynomial::product_of_linear_forms(ctx, hs);
      CHECK(c.degree() == 3);
      for (int s = 0; s < 20; ++s) {
        const Vec x = random_nonzero_vector(ctx, 4, rng);
        Elem prod = kOne;
        for (const auto& h : hs) prod = ctx.mul(prod, dot(ctx, h.covector, x));
        // Scaled to leading coefficient 1, so compare zero sets and ratios.
        CHECK((c.evaluate(x) == kZero) == (prod == kZero));
      }
    }
  }
}

TEST_CASE("linear factor detection agrees with symbolic substitution") {
  const FieldCtx ctx = make_field(2);
  const oracle::Field o = oracle::make_field(2);
  Rng rng(600);
  const ProjectiveSpace dual(ctx, 2);
  int with_factor = 0;
  for (int t = 0; t < 60; ++t) {
    CAPTURE(t);
    HomogeneousPolynomial c = HomogeneousPolynomial::random(ctx, 2, 3, rng);
    if (t % 3 == 0) {
      const Hyperplane h = make_hyperplane(ctx, random_nonzero_vector(ctx, 3, rng));
      const auto quad = HomogeneousPolynomial::random(ctx, 2, 2, rng);
      c = HomogeneousPolynomial(ctx, 2, 3, multiply_terms(ctx, linear_terms(h.covector), quad.terms()));
    }
    std::optional<std::uint64_t> first;
    for (std::uint64_t i = 0; i < dual.size() && !first; ++i)
      if (divides_by_substitution(o, c, gen::to_oracle(dual.hyperplane(i).covector))) first = i;
    const auto found = find_linear_factor(c);
    CHECK(found.has_value() == first.has_value());
    if (found && first) CHECK(*found == dual.hyperplane(*first));
    with_factor += first.has_value();
  }
  CHECK(with_factor >= 20);
}

TEST_CASE("linear factor detection at larger size") {
  const FieldCtx ctx = make_field(3);
  Rng rng(601);
  for (int t = 0; t < 5; ++t) {
    const auto hs = gen::hyperplane_triple(ctx, 4, rng);
    const auto c = HomogeneousPolynomial::product_of_linear_forms(ctx, hs);
    const auto found = find_linear_factor(c);
    REQUIRE(found.has_value());
    CHECK((*found == hs[0] || *found == hs[1] || *found == hs[2]));
  }
}

TEST_CASE("arrangement construction") {
  const FieldCtx ctx = make_field(2);
  const auto f = HermitianForm::standard(ctx, 4);
  const Hyperplane h0{{kOne, kZero, kZero, kZero, kZero}};
  const Hyperplane h1{{kZero, kOne, kZero, kZero, kZero}};
  CHECK(code_of([&] { make_arrangement(f, {h0, h1, h0}); }) == ErrorCode::DuplicateHyperplanes);
  const Hyperplane scaled{{Elem{2}, kZero, kZero, kZero, kZero}};
  CHECK(code_of([&] { make_arrangement(f, {h0, scaled}); }) == ErrorCode::DuplicateHyperplanes);
  const Arrangement a = make_arrangement(f, {h0, h1, Hyperplane{{kOne, kOne, kZero, kZero, kZero}}});
  CHECK(a.pencil());
  CHECK(a.common.dim() == 2);
  CHECK(a.common_section.label() == "U_2");
}

TEST_CASE("inclusion-exclusion equals enumeration on random triples") {
  for (auto [n, q, trials] : {std::tuple{4, 2, 1000}, {4, 3, 1000}, {3, 3, 300}, {5, 2, 200}}) {
    CAPTURE(n);
    CAPTURE(q);
    const FieldCtx ctx = make_field(q);
    Rng rng(700 + static_cast<std::uint64_t>(n * 10 + q));
    const HermitianForm f = q == 2 && n == 4 ? gen::nondegenerate_form(ctx, n, rng) : HermitianForm::standard(ctx, n);
    const VarietyPoints pts(f);
    int mismatches = 0, pencils = 0;
    for (int t = 0; t < trials; ++t) {
      const Arrangement a = make_arrangement(f, gen::hyperplane_triple(ctx, n, rng));
      const IntersectionReport r = intersect_count_arrangement(a, f);
      mismatches += r.count != intersect_count_enum(expand(a, ctx), pts);
      pencils += r.pencil;
    }
    CHECK(mismatches == 0);
    CHECK(pencils >= 0);
  }
}

TEST_CASE("inclusion-exclusion equals the affine oracle") {
  const FieldCtx ctx = make_field(2);
  const oracle::Field o = oracle::make_field(2);
  const auto f = HermitianForm::standard(ctx, 4);
  Rng rng(800);
  for (int t = 0; t < 60; ++t) {
    const auto hs = gen::hyperplane_triple(ctx, 4, rng);
    std::vector<std::vector<int>> forms;
    for (const auto& h : hs) forms.push_back(gen::to_oracle(h.covector));
    CHECK(intersect_count_arrangement(make_arrangement(f, hs), f).count == oracle::union_points(o, 4, forms));
  }
}

TEST_CASE("pencil triples use the common section twice") {
  const FieldCtx ctx = make_field(3);
  const auto f = HermitianForm::standard(ctx, 4);
  Rng rng(900);
  for (int t = 0; t < 20; ++t) {
    const LinearSubspace pi = random_subspace(ctx, 4, 2, rng);
    const auto pencil = pencil_through(ctx, pi);
    const Arrangement a = make_arrangement(f, {pencil[0], pencil[3], pencil[7]});
    REQUIRE(a.pencil());
    const IntersectionReport r = intersect_count_arrangement(a, f);
    CHECK(r.pencil);
    CHECK(r.count == r.singles[0] + r.singles[1] + r.singles[2] - 2 * r.common);
  }
}

TEST_CASE("extremal formulas") {
  CHECK(max_formula(4, 2) == 117);
  CHECK(max_formula(5, 2) == 453);
  CHECK(max_formula(4, 3) == 784);
  CHECK(max_formula(4, 7) == 50912);
  CHECK(all_tangent_pencil_value(4, 2) == 101);
  CHECK(all_tangent_pencil_value(4, 7) == 50471);
  CHECK(affine_lachaud_bound(4, 7, 3) == 784);
  CHECK(affine_lachaud_bound(4, 3, 3) == 72);
  CHECK(affine_lachaud_bound(4, 3, 2) == 36);
  CHECK_THROWS_AS(max_formula(3, 2), Error);
  CHECK_THROWS_AS(all_tangent_pencil_value(5, 2), Error);
}

TEST_CASE("all-tangent pencil over a Pi_1 U_{n-4} section") {
  for (int q : {2, 3}) {
    const FieldCtx ctx = make_field(q);
    const auto f = HermitianForm::standard(ctx, 4);
    Rng rng(950 + static_cast<std::uint64_t>(q));
    bool found = false;
    for (int t = 0; t < 2000 && !found; ++t) {
      const LinearSubspace pi = random_subspace(ctx, 4, 2, rng);
      if (classify_section(f, pi).v != 1) continue;
      std::vector<Hyperplane> tangents;
      for (const auto& h : pencil_through(ctx, pi))
        if (classify_hyperplane(f, h).kind == Tangency::Tangent && tangents.size() < 3) tangents.push_back(h);
      if (tangents.size() < 3) continue;
      found = true;
      const Arrangement a = make_arrangement(f, tangents);
      CHECK(intersect_count_arrangement(a, f).count == all_tangent_pencil_value(4, q));
    }
    CHECK(found);
  }
}

TEST_CASE("extremal configurations") {
  for (auto [n, q] : {std::pair{5, 2}, {4, 3}}) {
    CAPTURE(n);
    CAPTURE(q);
    const FieldCtx ctx = make_field(q);
    const auto f = HermitianForm::standard(ctx, n);
    const Arrangement a = build_extremal(f);
    CHECK(a.pencil());
    CHECK(a.common_section.v == -1);
    CHECK(a.tangency_pattern() == (n % 2 == 0 ? "NNN" : "TTT"));
    CHECK(intersect_count_arrangement(a, f).count == max_formula(n, q));
    CHECK(intersect_count_enum(expand(a, ctx), f) == max_formula(n, q));
  }
}

TEST_CASE("pencils over a non-degenerate codim-2 section at q=2") {
  // The poles of the pencil members fill the polar line of the section, which meets the
  // variety in q+1 points: q+1 tangent and q^2-q non-tangent members.
  for (int n : {4, 5}) {
    const FieldCtx ctx = make_field(2);
    const auto f = HermitianForm::standard(ctx, n);
    Rng rng(1000 + static_cast<std::uint64_t>(n));
    int tested = 0;
    for (int t = 0; t < 200; ++t) {
      const LinearSubspace pi = random_subspace(ctx, n, n - 2, rng);
      if (classify_section(f, pi).v != -1) continue;
      int tangent = 0, nontangent = 0;
      for (const auto& h : pencil_through(ctx, pi)) (classify_hyperplane(f, h).kind == Tangency::Tangent ? tangent : nontangent)++;
      CHECK(tangent == 3);
      CHECK(nontangent == 2);
      ++tested;
    }
    CHECK(tested > 0);
  }
  const FieldCtx ctx = make_field(2);
  CHECK(code_of([&] { build_extremal(HermitianForm::standard(ctx, 4)); }) == ErrorCode::InsufficientPencilMembers);
}

TEST_CASE("pairwise section exclusions at q=2") {
  for (int n : {4, 5}) {
    const FieldCtx ctx = make_field(2);
    const auto f = HermitianForm::standard(ctx, n);
    const ProjectiveSpace dual(ctx, n);
    std::vector<Hyperplane> hs;
    std::vector<bool> tangent;
    for (std::uint64_t i = 0; i < dual.size(); ++i) {
      hs.push_back(dual.hyperplane(i));
      tangent.push_back(classify_hyperplane(f, hs.back()).kind == Tangency::Tangent);
    }
    // A sample of pairs here; the exhaustive sweep runs in the acceptance suite.
    Rng rng(1100);
    int violations = 0;
    for (int t = 0; t < 3000; ++t) {
      const std::size_t a = rng() % hs.size(), b = rng() % hs.size();
      if (a == b) continue;
      const SectionType st = classify_section(f, intersect(ctx, {hs[a], hs[b]}));
      if ((!tangent[a] || !tangent[b]) && st.v == 1) ++violations;
      if (tangent[a] && tangent[b] && st.v == 0) ++violations;
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("affine bound on constructed instances") {
  const FieldCtx ctx = make_field(3);
  const auto f = HermitianForm::standard(ctx, 4);
  Rng rng(1200);
  for (int d : {2, 3}) {
    for (int t = 0; t < 10; ++t) {
      const LachaudInstance inst = make_lachaud_instance(ctx, 4, d, t % 2 == 0, rng);
      CHECK(inst.pi.dim() == 2);
      CHECK(inst.surface.vanishes_on(inst.pi));
      const LachaudCheck c = check_affine_lachaud(inst.surface, f, inst.sigma, inst.pi);
      CHECK(c.bound == affine_lachaud_bound(4, 3, d));
      CHECK(c.holds);
    }
  }
}

TEST_CASE("affine bound preconditions") {
  const FieldCtx ctx = make_field(3);
  const auto f = HermitianForm::standard(ctx, 4);
  const Hyperplane sigma{{kOne, kZero, kZero, kZero, kZero}};
  const Hyperplane other{{kZero, kOne, kZero, kZero, kZero}};
  const LinearSubspace pi = intersect(ctx, {sigma, other});
  // C = L_sigma * x2^2 contains sigma.
  const auto inside = HomogeneousPolynomial(ctx, 4, 3, multiply_terms(ctx, linear_terms(sigma.covector), TermMap{{Exponents{0, 0, 2, 0, 0}, kOne}}));
  CHECK(code_of([&] { check_affine_lachaud(inside, f, sigma, pi); }) == ErrorCode::PreconditionViolated);
  // Degree above q.
  const FieldCtx ctx2 = make_field(2);
  const auto f2 = HermitianForm::standard(ctx2, 4);
  const Hyperplane s2{{kOne, kZero, kZero, kZero, kZero}};
  const Hyperplane o2{{kZero, kOne, kZero, kZero, kZero}};
  const auto cubic = HomogeneousPolynomial::product_of_linear_forms(ctx2, std::vector<Hyperplane>{o2, o2, Hyperplane{{kZero, kZero, kOne, kZero, kZero}}});
  CHECK(code_of([&] { check_affine_lachaud(cubic, f2, s2, intersect(ctx2, {s2, o2})); }) == ErrorCode::PreconditionViolated);
  // Pi not inside sigma.
  const LinearSubspace off = intersect(ctx, {other, Hyperplane{{kZero, kZero, kOne, kZero, kZero}}});
  const auto c = HomogeneousPolynomial::product_of_linear_forms(ctx, std::vector<Hyperplane>{other, other, other});
  CHECK(code_of([&] { check_affine_lachaud(c, f, sigma, off); }) == ErrorCode::PreconditionViolated);
}

}  // TEST_SUITE
