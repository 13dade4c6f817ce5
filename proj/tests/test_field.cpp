#include <doctest.h>

#include <set>

#include "hermcubic/errors.hpp"
#include "hermcubic/field.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace hermcubic;

TEST_SUITE("field") {

TEST_CASE("prime power factorisation") {
  CHECK(factor_prime_power(4)->p == 2);
  CHECK(factor_prime_power(4)->e == 2);
  CHECK(factor_prime_power(9)->e == 2);
  CHECK(factor_prime_power(13)->e == 1);
  CHECK_FALSE(factor_prime_power(6));
  CHECK_FALSE(factor_prime_power(1));
  CHECK_FALSE(factor_prime_power(12));
}

TEST_CASE("construction errors") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InternalInvariant;
  };
  CHECK(code_of([] { make_field(6); }) == ErrorCode::NotPrimePower);
  CHECK(code_of([] { make_field(16); }) == ErrorCode::ExceedsCap);
  CHECK(code_of([] { make_field(67, 100); }) == ErrorCode::ExceedsCap);
  CHECK(make_field(16, 16).order() == 256);
}

TEST_CASE("F_4 by hand") {
  // x^2 + x + 1; w = x has index 2, w^2 = w + 1 has index 3.
  const FieldCtx f = make_field(2);
  const Elem w{2}, w2{3};
  CHECK(f.modulus() == std::vector<int>{1, 1});
  CHECK(f.mul(w, w) == w2);
  CHECK(f.mul(w, w2) == kOne);
  CHECK(f.add(kOne, w) == w2);
  CHECK(f.frobenius(w) == w2);
  CHECK(f.norm(w) == kOne);
  CHECK(f.trace(w) == kOne);
}

TEST_CASE("tables agree with polynomial arithmetic") {
  for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13}) {
    CAPTURE(q);
    const FieldCtx f = make_field(q);
    const oracle::Field o = oracle::make_field(q);
    REQUIRE(f.order() == o.order);
    CHECK(f.modulus() == o.mod);
    bool add_ok = true, mul_ok = true;
    for (int a = 0; a < o.order; ++a) {
      for (int b = 0; b < o.order; ++b) {
        const Elem ea{static_cast<std::uint16_t>(a)}, eb{static_cast<std::uint16_t>(b)};
        add_ok = add_ok && f.add(ea, eb).index == o.add(a, b);
        mul_ok = mul_ok && f.mul(ea, eb).index == o.mul(a, b);
      }
    }
    CHECK(add_ok);
    CHECK(mul_ok);
  }
}

TEST_CASE("field axioms and Frobenius") {
  for (int q : {2, 3, 4, 5, 8, 9}) {
    CAPTURE(q);
    const FieldCtx f = make_field(q);
    int fixed = 0;
    for (int a = 0; a < f.order(); ++a) {
      const Elem x{static_cast<std::uint16_t>(a)};
      CHECK(f.add(x, f.neg(x)) == kZero);
      if (x != kZero) CHECK(f.mul(x, f.inv(x)) == kOne);
      CHECK(f.frobenius(f.frobenius(x)) == x);
      CHECK(f.pow(x, static_cast<std::uint64_t>(q)) == f.frobenius(x));
      CHECK(f.in_subfield(f.norm(x)));
      CHECK(f.in_subfield(f.trace(x)));
      fixed += f.frobenius(x) == x;
      CHECK(f.in_subfield(x) == (f.frobenius(x) == x));
    }
    CHECK(fixed == q);
    CHECK(static_cast<int>(f.subfield_elements().size()) == q);
    // The generator has full multiplicative order.
    std::set<std::uint16_t> powers;
    Elem g = kOne;
    for (int i = 0; i < f.order() - 1; ++i) {
      powers.insert(g.index);
      g = f.mul(g, f.generator());
    }
    CHECK(static_cast<int>(powers.size()) == f.order() - 1);
  }
}

TEST_CASE("norm fibres and solve_norm") {
  for (int q : {2, 3, 4, 7}) {
    CAPTURE(q);
    const FieldCtx f = make_field(q);
    for (Elem d : f.subfield_elements()) {
      if (d == kZero) continue;
      int fibre = 0;
      Elem smallest{0xffff};
      for (int a = 0; a < f.order(); ++a) {
        const Elem x{static_cast<std::uint16_t>(a)};
        if (f.norm(x) == d) {
          ++fibre;
          if (x.index < smallest.index) smallest = x;
        }
      }
      CHECK(fibre == q + 1);
      CHECK(f.solve_norm(d) == smallest);
    }
    CHECK_THROWS_AS(f.solve_norm(kZero), Error);
  }
}

TEST_CASE("from_int reduces modulo p") {
  const FieldCtx f = make_field(3);
  CHECK(f.from_int(4) == kOne);
  CHECK(f.from_int(-1) == Elem{2});
  CHECK(f.add(f.from_int(2), f.from_int(1)) == kZero);
}

}  // TEST_SUITE
