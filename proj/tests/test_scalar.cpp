#include <doctest.h>

#include "wlpa/scalar.hpp"

using wlpa::Scalar;

TEST_CASE("rational arithmetic is exact and normalized") {
  Scalar a = Scalar::of(1, 3, 0);
  Scalar b = Scalar::of(1, 6, 0);
  CHECK(a + b == Scalar::of(1, 2, 0));
  CHECK(a - a == Scalar::zero(0));
  CHECK(a * b == Scalar::of(1, 18, 0));
  CHECK(a / b == Scalar::of(2, 1, 0));
  CHECK(Scalar::of(-2, -4, 0) == Scalar::of(1, 2, 0));
  CHECK(Scalar::of(4, 6, 0).str() == "2/3");
  CHECK((-Scalar::of(1, 2, 0)).str() == "-1/2");
}

TEST_CASE("prime field arithmetic") {
  Scalar a = Scalar::of(2, 1, 5);
  Scalar b = Scalar::of(4, 1, 5);
  CHECK(a + b == Scalar::of(1, 1, 5));
  CHECK(a * b == Scalar::of(3, 1, 5));
  CHECK((a / b) * b == a);
  CHECK(Scalar::of(1, 3, 5) == Scalar::of(2, 1, 5));  // 3^{-1} = 2 mod 5
  CHECK(Scalar::of(5, 1, 5).is_zero());
  CHECK_THROWS(Scalar::of(1, 5, 5));
}

TEST_CASE("division by zero and zero denominators reject") {
  CHECK_THROWS(Scalar::of(1, 0, 0));
  CHECK_THROWS(Scalar::of(1, 2, 0) / Scalar::zero(0));
}

TEST_CASE("mixed characteristics are a logic error") {
  CHECK_THROWS_AS((void)(Scalar::of(1, 1, 0) + Scalar::of(1, 1, 5)), std::logic_error);
}
