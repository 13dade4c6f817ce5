#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hermcubic/field.hpp"
#include "hermcubic/hermitian.hpp"
#include "hermcubic/parallel.hpp"
#include "hermcubic/projgeom.hpp"

namespace hermcubic {

using Exponents = std::vector<std::uint8_t>;
/// Terms keyed by exponent vector; std::greater puts the graded-lex leading monomial first.
using TermMap = std::map<Exponents, Elem, std::greater<>>;

/// All exponent vectors of degree d in n+1 variables, leading monomial first.
std::vector<Exponents> monomials(int n, int degree);

/// Nonzero homogeneous polynomial over F_{q^2}, scaled so its leading coefficient is 1.
class HomogeneousPolynomial {
 public:
  /// Throws InvalidArgument for an empty/zero polynomial or an exponent of the wrong degree.
  HomogeneousPolynomial(FieldCtx ctx, int n, int degree, const TermMap& terms);

  static HomogeneousPolynomial product_of_linear_forms(FieldCtx ctx, std::span<const Hyperplane> factors);
  /// Every coefficient uniform over F_{q^2}; the zero polynomial is redrawn.
  static HomogeneousPolynomial random(FieldCtx ctx, int n, int degree, Rng& rng);

  int dim() const noexcept { return n_; }
  int degree() const noexcept { return degree_; }
  const FieldCtx& field() const noexcept { return ctx_; }
  const TermMap& terms() const noexcept { return terms_; }

  Elem evaluate(std::span<const Elem> x) const noexcept {
    Elem total = kZero;
    const std::uint8_t* v = vars_.data();
    for (Elem c : coefs_) {
      Elem t = c;
      for (int k = 0; k < degree_; ++k) t = ctx_.mul(t, x[v[k]]);
      v += degree_;
      total = ctx_.add(total, t);
    }
    return total;
  }

  bool vanishes_on(const LinearSubspace& s) const;
  /// e.g. "x0^3 + [5]*x0*x1*x4"; coefficients are element indices.
  std::string to_string() const;

  friend bool operator==(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
    return a.n_ == b.n_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  FieldCtx ctx_;
  int n_;
  int degree_;
  TermMap terms_;
  std::vector<Elem> coefs_;
  std::vector<std::uint8_t> vars_;  // degree_ variable indices per term
};

using CubicHypersurface = HomogeneousPolynomial;

TermMap multiply_terms(const FieldCtx& ctx, const TermMap& a, const TermMap& b);
TermMap add_terms(const FieldCtx& ctx, const TermMap& a, const TermMap& b);
TermMap linear_terms(const Vec& covector);

/// First hyperplane (canonical order) whose linear form divides the polynomial.
/// Exact for degree < q^2: a form of that degree vanishing on every rational point
/// of a hyperplane vanishes on the hyperplane.
std::optional<Hyperplane> find_linear_factor(const HomogeneousPolynomial& c, const RunLimits& limits = {});

/// Union of distinct hyperplanes, with tangency pattern and common-section metadata.
struct Arrangement {
  int n = 0;
  int q = 0;
  std::vector<Hyperplane> hyperplanes;
  std::vector<Tangency> tangency;
  LinearSubspace common;  // intersection of all members
  SectionType common_section;

  int degree() const noexcept { return static_cast<int>(hyperplanes.size()); }
  /// Members meet in a codimension-2 space.
  bool pencil() const noexcept { return common.dim() == n - 2; }
  /// e.g. "NNT": one letter per member, sorted.
  std::string tangency_pattern() const;
};

/// Throws DuplicateHyperplanes, Degenerate.
Arrangement make_arrangement(const HermitianForm& f, std::vector<Hyperplane> hyperplanes);
HomogeneousPolynomial expand(const Arrangement& a, const FieldCtx& ctx);

enum class CountMethod { Enumeration, InclusionExclusion };

struct IntersectionReport {
  std::uint64_t count = 0;
  CountMethod method = CountMethod::InclusionExclusion;
  bool pencil = false;
  std::vector<std::uint64_t> singles;  // |Σ_i ∩ U|
  std::vector<std::uint64_t> pairs;    // |Σ_i ∩ Σ_j ∩ U| for (0,1), (0,2), (1,2)
  std::uint64_t common = 0;            // |Σ_1 ∩ Σ_2 ∩ Σ_3 ∩ U|
};

/// Inclusion-exclusion from section ranks only; no point enumeration. Requires three hyperplanes.
IntersectionReport intersect_count_arrangement(const Arrangement& a, const HermitianForm& f);

/// |V(C) ∩ V(f)| by scanning P^n. Throws BudgetExceeded.
std::uint64_t intersect_count_enum(const HomogeneousPolynomial& c, const HermitianForm& f, const RunLimits& limits = {});
/// Same count over a precomputed point list of the variety.
std::uint64_t intersect_count_enum(const HomogeneousPolynomial& c, const VarietyPoints& points, const RunLimits& limits = {});

/// Three hyperplanes through a common non-degenerate Π_{n-2}: non-tangent for n even,
/// tangent for n odd. Throws InsufficientPencilMembers when no scanned pencil has three.
Arrangement build_extremal(const HermitianForm& f);

/// 3|U_{n-1}| - 2|U_{n-2}| (n even) or (3q^2-2)|U_{n-2}| + 3 (n odd); n >= 4.
std::uint64_t max_formula(int n, int q);
/// Three tangent members of a pencil over a Π_1 U_{n-4} section; n even, n >= 4.
std::uint64_t all_tangent_pencil_value(int n, int q);

/// (d-1)(q+1)q^{2n-6}.
std::uint64_t affine_lachaud_bound(int n, int q, int degree);

struct LachaudCheck {
  std::uint64_t count = 0;
  std::uint64_t bound = 0;
  bool holds = false;
};

/// Counts |C ∩ U ∩ (Σ \ Π)| and compares with affine_lachaud_bound. Throws PreconditionViolated.
LachaudCheck check_affine_lachaud(const HomogeneousPolynomial& c, const HermitianForm& f, const Hyperplane& sigma,
                                  const LinearSubspace& pi);

struct LachaudInstance {
  HomogeneousPolynomial surface;
  Hyperplane sigma;
  LinearSubspace pi;
};

/// C = L_Σ G_1 + L_Σ' G_2 with Π = Σ ∩ Σ'. With split_residual, G_2 is a product of
/// linear forms, which pushes the count toward the bound.
LachaudInstance make_lachaud_instance(const FieldCtx& ctx, int n, int degree, bool split_residual, Rng& rng);

}  // namespace hermcubic
