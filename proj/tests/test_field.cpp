#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "nilcount/field.hpp"

using namespace nilcount;

TEST_CASE("prime power detection") {
  std::uint32_t p = 0;
  unsigned k = 0;
  CHECK(is_prime_power(2, &p, &k));
  CHECK(p == 2);
  CHECK(k == 1);
  CHECK(is_prime_power(64, &p, &k));
  CHECK(p == 2);
  CHECK(k == 6);
  CHECK(is_prime_power(27, &p, &k));
  CHECK(p == 3);
  CHECK(k == 3);
  CHECK(is_prime_power(65521));  // prime
  CHECK_FALSE(is_prime_power(0));
  CHECK_FALSE(is_prime_power(1));
  CHECK_FALSE(is_prime_power(6));
  CHECK_FALSE(is_prime_power(12));
  CHECK_FALSE(is_prime_power(100));  // 2^2 * 5^2
}

TEST_CASE("construction errors") {
  CHECK_THROWS_WITH_AS(make_field(6), doctest::Contains("NotAPrimePower"), Error);
  CHECK_THROWS_AS(make_field(0), Error);
  CHECK_THROWS_AS(make_field(1), Error);
  CHECK_THROWS_WITH_AS(make_field(1u << 17), doctest::Contains("TooLarge"), Error);
  CHECK(make_field(2)->q() == 2);
  CHECK(make_field(65536)->degree() == 16);
}

TEST_CASE("characteristic 2 and the order-3 multiplicative group of GF(4)") {
  const auto f2 = make_field(2);
  CHECK(f2->add(1, 1) == 0);
  CHECK(f2->mul(1, 1) == 1);

  const auto f4 = make_field(4);
  for (GfElem x = 0; x < 4; ++x) CHECK(f4->add(x, x) == 0);
  for (GfElem x = 1; x < 4; ++x) CHECK(f4->mul(f4->mul(x, x), x) == 1);
}

TEST_CASE("prime field arithmetic spot values") {
  const auto f5 = make_field(5);
  CHECK(f5->add(3, 4) == 2);
  const auto f3 = make_field(3);
  CHECK(f3->inv(2) == 2);
  CHECK_THROWS_WITH_AS(f3->inv(0), doctest::Contains("DivisionByZero"), Error);
}

TEST_CASE("field axioms hold exhaustively for every prime power up to 64") {
  for (std::uint32_t q = 2; q <= 64; ++q) {
    if (!is_prime_power(q)) continue;
    CAPTURE(q);
    const auto f = *make_field(q);

    for (std::uint32_t a = 0; a < q; ++a) {
      CHECK(f.add(static_cast<GfElem>(a), 0) == a);
      CHECK(f.mul(static_cast<GfElem>(a), 1) == a);
      CHECK(f.add(static_cast<GfElem>(a), f.neg(static_cast<GfElem>(a))) == 0);
      if (a != 0) CHECK(f.mul(static_cast<GfElem>(a), f.inv(static_cast<GfElem>(a))) == 1);
      // characteristic p
      GfElem acc = 0;
      for (std::uint32_t i = 0; i < f.p(); ++i) acc = f.add(acc, static_cast<GfElem>(a));
      CHECK(acc == 0);
    }

    bool commutative = true, associative = true, distributive = true;
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        const GfElem ea = static_cast<GfElem>(a), eb = static_cast<GfElem>(b);
        commutative = commutative && f.add(ea, eb) == f.add(eb, ea) && f.mul(ea, eb) == f.mul(eb, ea);
        for (std::uint32_t c = 0; c < q; ++c) {
          const GfElem ec = static_cast<GfElem>(c);
          associative = associative && f.add(f.add(ea, eb), ec) == f.add(ea, f.add(eb, ec)) &&
                        f.mul(f.mul(ea, eb), ec) == f.mul(ea, f.mul(eb, ec));
          distributive = distributive && f.mul(ea, f.add(eb, ec)) == f.add(f.mul(ea, eb), f.mul(ea, ec));
        }
      }
    CHECK(commutative);
    CHECK(associative);
    CHECK(distributive);
  }
}

TEST_CASE("nonzero elements have multiplicative order dividing q - 1") {
  for (std::uint32_t q = 2; q <= 64; ++q) {
    if (!is_prime_power(q)) continue;
    CAPTURE(q);
    const auto f = *make_field(q);
    for (std::uint32_t a = 1; a < q; ++a) CHECK(f.pow(static_cast<GfElem>(a), q - 1) == 1);
  }
}

TEST_CASE("construction is deterministic") {
  const auto a = make_field(9);
  const auto b = make_field(9);
  CHECK(a->modulus() == b->modulus());
  for (GfElem x = 0; x < 9; ++x)
    for (GfElem y = 0; y < 9; ++y) {
      CHECK(a->mul(x, y) == b->mul(x, y));
      CHECK(a->add(x, y) == b->add(x, y));
    }
  // GF(4) with the least irreducible x^2 + x + 1
  CHECK(make_field(4)->modulus() == std::vector<std::uint32_t>{1, 1, 1});
}
