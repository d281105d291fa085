#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace odesym {

/// Arbitrary-precision signed integer, sign-magnitude with 32-bit limbs.
/// Small and deliberately simple: the coefficient arithmetic of the whole
/// symbolic layer runs on these, so correctness beats cleverness.
class BigInt {
 public:
  BigInt() = default;  // zero
  BigInt(long long v);

  /// Parse a nonnegative decimal digit string (no sign, no whitespace).
  static BigInt from_decimal(std::string_view digits);

  bool is_zero() const { return sign_ == 0; }
  int sign() const { return sign_; }

  BigInt abs() const;
  BigInt negated() const;

  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);

  /// Truncated division, |r| < |b|, sign(r) == sign(a). b must be nonzero.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

  static BigInt gcd(const BigInt& a, const BigInt& b);  // nonnegative

  friend bool operator==(const BigInt& a, const BigInt& b);
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b);

  /// True when the value fits in a long long (used for fast paths only).
  bool fits_int64() const;
  long long to_int64() const;

  std::string to_string() const;

 private:
  int sign_ = 0;                // -1, 0, +1
  std::vector<uint32_t> mag_;   // little-endian, no leading zero limbs

  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                         std::vector<uint32_t>& q, std::vector<uint32_t>& r);
  void trim();
};

/// Exact rational number. Always reduced, denominator > 0, zero is 0/1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d);
  Rational(BigInt n, BigInt d);

  static Rational integer(BigInt n);

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_integer() const;
  int sign() const { return num_.sign(); }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);  // b nonzero
  Rational operator-() const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  /// Integer power; negative exponents require a nonzero base.
  Rational pow(long long e) const;

  Rational inverse() const;  // nonzero only
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);

  double to_double() const;

  /// "7", "-7", "7/2", "-7/2".
  std::string to_string() const;

 private:
  BigInt num_, den_;
  void reduce();
  static Rational make_reduced(long long n, long long d);
};

}  // namespace odesym
