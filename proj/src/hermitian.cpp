#include "hermcubic/hermitian.hpp"

#include <algorithm>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "hermcubic/errors.hpp"

namespace hermcubic {

using boost::multiprecision::cpp_int;

namespace {

cpp_int big_pow(int base, int exp) {
  cpp_int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::uint64_t to_u64(const cpp_int& v, const char* what) {
  if (v < 0 || v > cpp_int(std::numeric_limits<std::uint64_t>::max())) {
    throw Error(ErrorCode::OutOfRange, std::string(what) + " does not fit in 64 bits");
  }
  return static_cast<std::uint64_t>(v);
}

cpp_int big_nondegenerate(int n, int q) {
  if (n <= 0) return 0;
  const int s1 = (n % 2 == 0) ? 1 : -1;  // (-1)^n
  const cpp_int a = big_pow(q, n) - s1;
  const cpp_int b = big_pow(q, n + 1) + s1;  // q^{n+1} - (-1)^{n+1}
  return a * b / (q * q - 1);
}

cpp_int big_projective(int n, int q) {
  if (n < 0) return 0;
  return (big_pow(q, 2 * (n + 1)) - 1) / (q * q - 1);
}

// Congruence step: row t of p gets replaced, then m = p H p^{(q)T} is recomputed.
Matrix congruent(const FieldCtx& ctx, const Matrix& p, const Matrix& h) {
  return multiply(ctx, multiply(ctx, p, h), adjoint(ctx, p));
}

}  // namespace

HermitianForm::HermitianForm(FieldCtx ctx, Matrix h) : ctx_(std::move(ctx)), h_(std::move(h)) {
  if (h_.rows() == 0 || h_.rows() != h_.cols()) throw Error(ErrorCode::WrongDimension, "Hermitian matrix must be square");
  if (h_.is_zero()) throw Error(ErrorCode::InvalidArgument, "Hermitian matrix must be nonzero");
  for (int i = 0; i < h_.rows(); ++i) {
    for (int j = 0; j < h_.cols(); ++j) {
      if (!ctx_.valid(h_(i, j))) throw Error(ErrorCode::InvalidArgument, "entry outside the field");
      if (h_(j, i) != ctx_.frobenius(h_(i, j))) throw Error(ErrorCode::InvalidArgument, "matrix is not Hermitian");
    }
  }
  rank_ = hermcubic::rank(ctx_, h_);
  diagonal_ = true;
  for (int i = 0; i < h_.rows() && diagonal_; ++i)
    for (int j = 0; j < h_.cols(); ++j)
      if (i != j && h_(i, j) != kZero) {
        diagonal_ = false;
        break;
      }
  if (rank_ == h_.rows()) inverse_ = inverse(ctx_, h_);
}

HermitianForm HermitianForm::standard(FieldCtx ctx, int n) {
  if (n < 0) throw Error(ErrorCode::OutOfRange, "n must be >= 0");
  return HermitianForm(std::move(ctx), Matrix::identity(n + 1));
}

HermitianForm HermitianForm::of_rank(FieldCtx ctx, int n, int r) {
  if (r < 1 || r > n + 1) throw Error(ErrorCode::OutOfRange, "rank must be in 1..n+1");
  Matrix h(n + 1, n + 1);
  for (int i = 0; i < r; ++i) h(i, i) = kOne;
  return HermitianForm(std::move(ctx), std::move(h));
}

Elem evaluate(const HermitianForm& f, std::span<const Elem> x) {
  const FieldCtx& ctx = f.field();
  const Matrix& h = f.matrix();
  const int n1 = h.rows();
  Elem total = kZero;
  if (f.diagonal()) {
    for (int i = 0; i < n1; ++i) {
      if (x[i] == kZero || h(i, i) == kZero) continue;
      total = ctx.add(total, ctx.mul(h(i, i), ctx.norm(x[i])));
    }
    return total;
  }
  Elem conj[16];
  Vec conj_heap;
  Elem* xc = conj;
  if (n1 > 16) {
    conj_heap.resize(n1);
    xc = conj_heap.data();
  }
  for (int j = 0; j < n1; ++j) xc[j] = ctx.frobenius(x[j]);
  for (int i = 0; i < n1; ++i) {
    if (x[i] == kZero) continue;
    Elem row = kZero;
    for (int j = 0; j < n1; ++j) row = ctx.add(row, ctx.mul(h(i, j), xc[j]));
    total = ctx.add(total, ctx.mul(x[i], row));
  }
  return total;
}

int rank(const HermitianForm& f) { return f.rank(); }

CongruenceReduction congruence_reduce(const HermitianForm& f) {
  const FieldCtx& ctx = f.field();
  const int size = f.matrix().rows();
  Matrix p = Matrix::identity(size);
  Matrix m = f.matrix();
  int t = 0;
  while (t < size) {
    int diag = -1;
    for (int i = t; i < size; ++i) {
      if (m(i, i) != kZero) {
        diag = i;
        break;
      }
    }
    if (diag < 0) {
      // All remaining diagonal entries vanish. Find a nonzero mixed entry m(i, j)
      // and replace row i by row_i + lambda row_j so the new diagonal entry,
      // Tr(lambda m(j, i)), is nonzero.
      int bi = -1, bj = -1;
      for (int i = t; i < size && bi < 0; ++i)
        for (int j = t; j < size; ++j)
          if (i != j && m(i, j) != kZero) {
            bi = i;
            bj = j;
            break;
          }
      if (bi < 0) break;  // remaining block is zero
      Elem lambda = kZero;
      for (int c = 1; c < ctx.order(); ++c) {
        const Elem cand{static_cast<std::uint16_t>(c)};
        if (ctx.trace(ctx.mul(cand, m(bj, bi))) != kZero) {
          lambda = cand;
          break;
        }
      }
      if (lambda == kZero) throw Error(ErrorCode::InternalInvariant, "trace map vanished on a nonzero element");
      for (int c = 0; c < size; ++c) p(bi, c) = ctx.add(p(bi, c), ctx.mul(lambda, p(bj, c)));
      m = congruent(ctx, p, f.matrix());
      diag = bi;
    }
    p.swap_rows(t, diag);
    m = congruent(ctx, p, f.matrix());

    // Scale so that the pivot becomes 1: mu^{q+1} m(t,t) = 1.
    const Elem mu = ctx.solve_norm(ctx.inv(m(t, t)));
    for (int c = 0; c < size; ++c) p(t, c) = ctx.mul(mu, p(t, c));
    m = congruent(ctx, p, f.matrix());

    // Clear column t below the pivot: row_i -= m(i,t) row_t (pivot is 1).
    for (int i = t + 1; i < size; ++i) {
      const Elem factor = m(i, t);
      if (factor == kZero) continue;
      const Elem nf = ctx.neg(factor);
      for (int c = 0; c < size; ++c) p(i, c) = ctx.add(p(i, c), ctx.mul(nf, p(t, c)));
    }
    m = congruent(ctx, p, f.matrix());
    ++t;
  }

  Matrix expected(size, size);
  for (int i = 0; i < t; ++i) expected(i, i) = kOne;
  if (m != expected) throw Error(ErrorCode::InternalInvariant, "congruence reduction certificate failed");
  return CongruenceReduction{std::move(p), t};
}

std::uint64_t nondegenerate_count(int n, int q) { return to_u64(big_nondegenerate(n, q), "|U_n|"); }

std::uint64_t count_points_formula(int n, int q, int r) {
  if (n < 0 || r < 1 || r > n + 1) throw Error(ErrorCode::OutOfRange, "count_points_formula needs 1 <= r <= n+1");
  const cpp_int v = big_projective(n - r, q) + big_pow(q, 2 * (n - r + 1)) * big_nondegenerate(r - 1, q);
  return to_u64(v, "count_points_formula");
}

std::uint64_t section_size(int m, int q, int r) {
  if (m < 0) return 0;
  if (r == 0) return to_u64(big_projective(m, q), "section_size");
  return count_points_formula(m, q, r);
}

void check_budget(std::uint64_t evaluations, const RunLimits& limits, const char* what) {
  if (evaluations > limits.budget) {
    throw Error(ErrorCode::BudgetExceeded, std::string(what) + " needs " + std::to_string(evaluations) +
                                               " evaluations, budget is " + std::to_string(limits.budget));
  }
}

std::uint64_t count_points_enum(const HermitianForm& f, const RunLimits& limits) {
  const ProjectiveSpace space(f.field(), f.dim());
  check_budget(space.size(), limits, "count_points_enum");
  const int workers = limits.resolved_workers();
  std::vector<std::uint64_t> partial(static_cast<std::size_t>(workers), 0);
  parallel_ranges(space.size(), workers, [&](int w, std::uint64_t begin, std::uint64_t end) {
    std::uint64_t c = 0;
    space.for_each(begin, end, [&](std::uint64_t, std::span<const Elem> x) {
      if (evaluate(f, x) == kZero) ++c;
    });
    partial[w] = c;
  });
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

Hyperplane tangent_hyperplane(const HermitianForm& f, const ProjPoint& p) {
  if (!contains(f, p)) throw Error(ErrorCode::NotOnVariety, "tangent hyperplane needs a point of the variety");
  const FieldCtx& ctx = f.field();
  const Matrix& h = f.matrix();
  Vec a(p.coords.size(), kZero);
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j) a[i] = ctx.add(a[i], ctx.mul(h(i, j), ctx.frobenius(p.coords[j])));
  return make_hyperplane(ctx, std::move(a));
}

TangencyReport classify_hyperplane(const HermitianForm& f, const Hyperplane& h) {
  if (!f.nondegenerate()) throw Error(ErrorCode::Degenerate, "classify_hyperplane needs a non-degenerate form");
  const FieldCtx& ctx = f.field();
  const Matrix& inv = *f.inverse_matrix();
  Vec pole(h.covector.size(), kZero);
  for (int i = 0; i < inv.rows(); ++i) {
    Elem s = kZero;
    for (int j = 0; j < inv.cols(); ++j) s = ctx.add(s, ctx.mul(inv(i, j), h.covector[j]));
    pole[i] = ctx.frobenius(s);
  }
  ProjPoint witness = make_point(ctx, std::move(pole));
  const Tangency kind = contains(f, witness) ? Tangency::Tangent : Tangency::NonTangent;
  return TangencyReport{kind, std::move(witness)};
}

Matrix restrict_form(const HermitianForm& f, const LinearSubspace& s) {
  const Matrix& b = s.basis();
  if (b.rows() == 0) return Matrix(0, 0);
  const FieldCtx& ctx = f.field();
  return multiply(ctx, multiply(ctx, b, f.matrix()), adjoint(ctx, b));
}

std::string SectionType::label() const {
  const std::string base = s >= 0 ? "U_" + std::to_string(s) : std::string("empty base");
  if (v < 0) return base;
  if (s < 0) return "Pi_" + std::to_string(v) + " (contained)";
  return "Pi_" + std::to_string(v) + " " + base;
}

SectionType section_type_from_rank(int m, int rank) {
  if (rank < 0 || rank > m + 1) throw Error(ErrorCode::OutOfRange, "section rank out of range");
  const int s = rank - 1;
  return SectionType{m - 1 - s, s, m};
}

std::uint64_t section_point_count(const SectionType& t, int q) { return section_size(t.m, q, t.rank()); }

SectionType classify_section(const HermitianForm& f, const LinearSubspace& s) {
  if (!f.nondegenerate()) throw Error(ErrorCode::Degenerate, "classify_section needs a non-degenerate form");
  const int m = s.dim();
  if (m < 0) return SectionType{-1, -1, -1};
  const int r = rank(f.field(), restrict_form(f, s));
  const SectionType t = section_type_from_rank(m, r);
  if (f.dim() - 2 * m + t.s < 0) {
    throw Error(ErrorCode::InternalInvariant, "section violates n - 2m + s >= 0");
  }
  return t;
}

std::uint64_t tangents_through_count(const HermitianForm& f, const ProjPoint& p) {
  if (!contains(f, p)) throw Error(ErrorCode::NotOnVariety, "tangent count needs a point of the variety");
  const int q = f.field().q();
  return static_cast<std::uint64_t>(q) * q * nondegenerate_count(f.dim() - 2, q) + 1;
}

std::uint64_t tangents_through_enum(const HermitianForm& f, const ProjPoint& p, const RunLimits& limits) {
  if (!contains(f, p)) throw Error(ErrorCode::NotOnVariety, "tangent count needs a point of the variety");
  const ProjectiveSpace space(f.field(), f.dim());
  check_budget(space.size(), limits, "tangents_through_enum");
  std::uint64_t c = 0;
  space.for_each([&](std::uint64_t, std::span<const Elem> x) {
    if (evaluate(f, x) != kZero) return;
    const Hyperplane t = tangent_hyperplane(f, ProjPoint{Vec(x.begin(), x.end())});
    if (incident(f.field(), t, p.coords)) ++c;
  });
  return c;
}

VarietyPoints::VarietyPoints(const HermitianForm& f, const RunLimits& limits) : n_(f.dim()) {
  const ProjectiveSpace space(f.field(), f.dim());
  check_budget(space.size(), limits, "VarietyPoints");
  membership_ = DenseBitset(space.size());
  const int workers = limits.resolved_workers();
  std::vector<std::vector<std::uint64_t>> found(static_cast<std::size_t>(workers));
  parallel_ranges(space.size(), workers, [&](int w, std::uint64_t begin, std::uint64_t end) {
    space.for_each(begin, end, [&](std::uint64_t idx, std::span<const Elem> x) {
      if (evaluate(f, x) == kZero) found[w].push_back(idx);
    });
  });
  for (const auto& part : found) ambient_index_.insert(ambient_index_.end(), part.begin(), part.end());
  coords_.reserve(ambient_index_.size() * static_cast<std::size_t>(n_ + 1));
  for (std::uint64_t idx : ambient_index_) {
    membership_.set(idx);
    const Vec x = space.coords_at(idx);
    coords_.insert(coords_.end(), x.begin(), x.end());
  }
}

}  // namespace hermcubic
