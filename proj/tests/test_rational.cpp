#include <doctest.h>

#include <random>
#include <stdexcept>

#include "odesym/rational.hpp"

using namespace odesym;

TEST_CASE("BigInt arithmetic agrees with native integers") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<long long> dist(-1000000000LL, 1000000000LL);
  for (int i = 0; i < 500; ++i) {
    long long a = dist(rng), b = dist(rng);
    BigInt A(a), B(b);
    CHECK((A + B).to_string() == std::to_string(a + b));
    CHECK((A - B).to_string() == std::to_string(a - b));
    CHECK((A * B).to_string() == std::to_string(a * b));
    if (b != 0) {
      BigInt q, r;
      BigInt::divmod(A, B, q, r);
      CHECK(q.to_string() == std::to_string(a / b));
      CHECK(r.to_string() == std::to_string(a % b));
    }
  }
}

TEST_CASE("BigInt multi-limb division reconstructs") {
  std::mt19937 rng(999);
  std::uniform_int_distribution<long long> dist(1, 1000000000LL);
  for (int i = 0; i < 200; ++i) {
    BigInt a = BigInt(dist(rng)) * BigInt(dist(rng)) * BigInt(dist(rng));
    BigInt b = BigInt(dist(rng)) * BigInt(dist(rng));
    if (i % 2) a = a.negated();
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    CHECK(q * b + r == a);
    CHECK(r.abs() < b.abs());
  }
}

TEST_CASE("BigInt decimal round trip") {
  const char* digits = "123456789012345678901234567890";
  CHECK(BigInt::from_decimal(digits).to_string() == digits);
  CHECK(BigInt(0).to_string() == "0");
  CHECK(BigInt(-7).to_string() == "-7");
}

TEST_CASE("gcd") {
  CHECK(BigInt::gcd(BigInt(12), BigInt(18)) == BigInt(6));
  CHECK(BigInt::gcd(BigInt(-12), BigInt(18)) == BigInt(6));
  CHECK(BigInt::gcd(BigInt(0), BigInt(5)) == BigInt(5));
}

TEST_CASE("Rational normalization and arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK((Rational(1, 2) + Rational(1, 3)) == Rational(5, 6));
  CHECK((Rational(1, 2) * Rational(2, 3)) == Rational(1, 3));
  CHECK((Rational(1, 2) - Rational(1, 2)).is_zero());
  CHECK((Rational(3, 4) / Rational(3, 2)) == Rational(1, 2));
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK(Rational(-2).pow(3) == Rational(-8));
  CHECK(Rational(5, 3).to_string() == "5/3");
  CHECK(Rational(-5).to_string() == "-5");
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(0).inverse(), std::domain_error);
}

TEST_CASE("Rational field identities on random values") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> dist(-50, 50);
  std::uniform_int_distribution<int> den(1, 50);
  for (int i = 0; i < 300; ++i) {
    Rational a(dist(rng), den(rng)), b(dist(rng), den(rng)), c(dist(rng), den(rng));
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a + (b + c) == (a + b) + c);
    CHECK(a * (b * c) == (a * b) * c);
    if (!a.is_zero()) CHECK(a * a.inverse() == Rational(1));
  }
}
