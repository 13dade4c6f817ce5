#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hermcubic/cubics.hpp"
#include "hermcubic/hermitian.hpp"
#include "hermcubic/parallel.hpp"

namespace hermcubic {

/// Section counts of hyperplane unions read off the Gram matrix of hyperplane poles.
/// For a non-degenerate form the intersection W of k independent hyperplanes has
/// W-perp spanned by their poles, so rank(f|W) = dim W - (k - rank Gram).
class PoleGram {
 public:
  explicit PoleGram(const HermitianForm& f);

  std::uint64_t size() const noexcept { return count_; }
  const Hyperplane& hyperplane(std::uint64_t i) const noexcept { return hyperplanes_[i]; }
  bool tangent(std::uint64_t i) const noexcept { return diag_[i] == kZero; }
  std::uint64_t single(std::uint64_t i) const noexcept { return tangent(i) ? single_tangent_ : single_nontangent_; }
  /// h(P_a, P_b) = P_a . b, with P_a the pole of hyperplane a.
  Elem gram(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t pair(std::uint64_t a, std::uint64_t b) const noexcept;
  /// Rank of the form restricted to the intersection of hyperplanes a and b.
  int pair_rank(std::uint64_t a, std::uint64_t b) const noexcept;

  struct Triple {
    std::uint64_t count = 0;
    bool pencil = false;
  };
  /// Reduced covectors and Gram entry of a fixed pair, reused across third members.
  struct PairCtx {
    std::uint64_t a = 0, b = 0;
    Elem g_ab;
    std::uint64_t count = 0;
    Vec r0, r1;
    int p0 = 0, p1 = 0;
  };
  PairCtx pair_ctx(std::uint64_t a, std::uint64_t b) const;
  Triple triple(const PairCtx& p, std::uint64_t c) const noexcept;
  Triple triple(std::uint64_t a, std::uint64_t b, std::uint64_t c) const;

 private:
  FieldCtx ctx_;
  int n_ = 0;
  std::uint64_t count_ = 0;
  std::vector<Hyperplane> hyperplanes_;
  std::vector<Elem> poles_;  // (n+1) per hyperplane
  std::vector<Elem> diag_;
  std::uint64_t single_tangent_ = 0;
  std::uint64_t single_nontangent_ = 0;
  std::vector<std::uint64_t> pair_by_rank_;    // codim-2 section count by restricted rank
  std::vector<std::uint64_t> triple_by_rank_;  // codim-3 section count by restricted rank
};

struct ArgmaxEntry {
  Arrangement arrangement;
  std::uint64_t formula_count = 0;
  std::uint64_t enumerated_count = 0;
};

struct SearchReport {
  int n = 0;
  int q = 0;
  std::string mode;  // "exhaustive" or "anchored"
  std::uint64_t triples = 0;
  std::uint64_t global_max = 0;
  std::uint64_t max_formula_value = 0;
  bool reaches_max_formula = false;
  std::vector<ArgmaxEntry> argmax;
  bool argmax_verified = false;
  /// "<pattern> <pencil|codim3> <common section label>" -> number of argmax triples.
  std::map<std::string, std::uint64_t> argmax_structure;
  std::map<std::uint64_t, std::uint64_t> histogram;
  std::uint64_t formula_resolved = 0;
  std::uint64_t enumeration_resolved = 0;
  std::uint64_t cross_checked = 0;
  std::uint64_t cross_check_mismatches = 0;
  double wall_time_s = 0.0;
};

struct TripleSearchOptions {
  std::uint64_t cross_check_samples = 1000;
  std::uint64_t seed = 1;
};

/// Every unordered triple of distinct hyperplanes. Throws BudgetExceeded when C(N,3) exceeds the budget.
SearchReport exhaustive_triples(const HermitianForm& f, const RunLimits& limits = {},
                                const TripleSearchOptions& opts = {});

/// Triples containing the first tangent or the first non-tangent hyperplane. The unitary
/// group is transitive on each tangency class, so the maximum and the argmax structure
/// agree with the exhaustive search; argmax entries are orbit representatives.
SearchReport anchored_triples(const HermitianForm& f, const RunLimits& limits = {},
                              const TripleSearchOptions& opts = {});

struct IncidenceReport {
  int n = 0;
  int q = 0;
  std::uint64_t points = 0;
  std::uint64_t hyperplanes = 0;
  std::uint64_t tangent_hyperplanes = 0;
  std::uint64_t nontangent_hyperplanes = 0;
  std::map<std::uint64_t, std::uint64_t> tangents_per_point;   // value -> number of points
  std::map<std::uint64_t, std::uint64_t> hyperplanes_per_point;
  std::uint64_t expected_tangents_per_point = 0;
  std::uint64_t expected_hyperplanes_per_point = 0;
  bool tangent_uniform = false;
  std::uint64_t left_sum = 0;   // sum over points of non-tangent hyperplanes through it
  std::uint64_t right_sum = 0;  // sum over non-tangent hyperplanes of their variety points
  bool sums_agree = false;
  double wall_time_s = 0.0;
};

/// Exhaustive point-hyperplane incidence over V(f) and the dual space. Throws BudgetExceeded.
IncidenceReport incidence_double_count(const HermitianForm& f, const RunLimits& limits = {});

struct Exceedance {
  std::string polynomial;
  std::uint64_t count = 0;
};

struct RandomSampleReport {
  int n = 0;
  int q = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t drawn = 0;
  std::uint64_t discarded_linear_factor = 0;
  std::uint64_t threshold = 0;  // B_n
  bool in_range = false;        // q >= 7
  std::uint64_t max_observed = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;
  std::vector<Exceedance> exceedances;
  double wall_time_s = 0.0;
};

/// Uniform random cubics with no linear factor, counted against B_n. Throws BudgetExceeded.
RandomSampleReport random_cubic_sample(const HermitianForm& f, std::uint64_t trials, std::uint64_t seed,
                                       const RunLimits& limits = {});

}  // namespace hermcubic
