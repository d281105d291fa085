#include "odesym/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace odesym {

namespace {
constexpr uint64_t kBase = uint64_t(1) << 32;
}

BigInt::BigInt(long long v) {
  if (v == 0) return;
  sign_ = v < 0 ? -1 : 1;
  // avoid UB on LLONG_MIN
  uint64_t u = v < 0 ? ~static_cast<uint64_t>(v) + 1 : static_cast<uint64_t>(v);
  while (u) {
    mag_.push_back(static_cast<uint32_t>(u & 0xffffffffu));
    u >>= 32;
  }
}

BigInt BigInt::from_decimal(std::string_view digits) {
  BigInt r;
  BigInt ten(10);
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("BigInt: bad digit");
    r = r * ten + BigInt(c - '0');
  }
  return r;
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) sign_ = 0;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  if (r.sign_ < 0) r.sign_ = 1;
  return r;
}

BigInt BigInt::negated() const {
  BigInt r = *this;
  r.sign_ = -r.sign_;
  return r;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  const auto& lo = a.size() >= b.size() ? b : a;
  const auto& hi = a.size() >= b.size() ? a : b;
  std::vector<uint32_t> r;
  r.reserve(hi.size() + 1);
  uint64_t carry = 0;
  for (size_t i = 0; i < hi.size(); ++i) {
    uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0);
    r.push_back(static_cast<uint32_t>(s & 0xffffffffu));
    carry = s >> 32;
  }
  if (carry) r.push_back(static_cast<uint32_t>(carry));
  return r;
}

// requires a >= b
std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  std::vector<uint32_t> r;
  r.reserve(a.size());
  int64_t borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    int64_t d = int64_t(a[i]) - (i < b.size() ? int64_t(b[i]) : 0) - borrow;
    if (d < 0) {
      d += int64_t(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    r.push_back(static_cast<uint32_t>(d));
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint32_t> r(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < b.size(); ++j) {
      uint64_t cur = uint64_t(a[i]) * b[j] + r[i + j] + carry;
      r[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    size_t k = i + b.size();
    while (carry) {
      uint64_t cur = r[k] + carry;
      r[k] = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

// Bitwise long division on magnitudes. Operands stay tiny (coefficient
// arithmetic), so the O(bits * limbs) cost is irrelevant and the code
// stays obviously correct.
void BigInt::divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
  q.assign(a.size(), 0);
  r.clear();
  if (cmp_mag(a, b) < 0) {
    r = a;
    q.clear();
    return;
  }
  // single-limb fast path
  if (b.size() == 1) {
    uint64_t d = b[0], rem = 0;
    for (size_t i = a.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | a[i];
      q[i] = static_cast<uint32_t>(cur / d);
      rem = cur % d;
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    if (rem) r.push_back(static_cast<uint32_t>(rem));
    return;
  }
  size_t bits = a.size() * 32;
  for (size_t i = bits; i-- > 0;) {
    // r = (r << 1) | bit i of a
    uint32_t carry = (a[i / 32] >> (i % 32)) & 1u;
    for (size_t j = 0; j < r.size(); ++j) {
      uint32_t next = r[j] >> 31;
      r[j] = (r[j] << 1) | carry;
      carry = next;
    }
    if (carry) r.push_back(carry);
    if (cmp_mag(r, b) >= 0) {
      r = sub_mag(r, b);
      q[i / 32] |= (uint32_t(1) << (i % 32));
    }
  }
  while (!q.empty() && q.back() == 0) q.pop_back();
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  if (a.sign_ == 0) return b;
  if (b.sign_ == 0) return a;
  BigInt r;
  if (a.sign_ == b.sign_) {
    r.mag_ = BigInt::add_mag(a.mag_, b.mag_);
    r.sign_ = a.sign_;
  } else {
    int c = BigInt::cmp_mag(a.mag_, b.mag_);
    if (c == 0) return BigInt();
    if (c > 0) {
      r.mag_ = BigInt::sub_mag(a.mag_, b.mag_);
      r.sign_ = a.sign_;
    } else {
      r.mag_ = BigInt::sub_mag(b.mag_, a.mag_);
      r.sign_ = b.sign_;
    }
  }
  r.trim();
  return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + b.negated(); }

BigInt operator*(const BigInt& a, const BigInt& b) {
  if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
  BigInt r;
  r.mag_ = BigInt::mul_mag(a.mag_, b.mag_);
  r.sign_ = a.sign_ * b.sign_;
  r.trim();
  return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
  std::vector<uint32_t> qm, rm;
  divmod_mag(a.mag_, b.mag_, qm, rm);
  q = BigInt();
  r = BigInt();
  q.mag_ = std::move(qm);
  r.mag_ = std::move(rm);
  q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
  r.sign_ = r.mag_.empty() ? 0 : a.sign_;
  q.trim();
  r.trim();
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
  BigInt x = a.abs(), y = b.abs();
  while (!y.is_zero()) {
    BigInt q, r;
    divmod(x, y, q, r);
    x = y;
    y = r;
  }
  return x;
}

bool operator==(const BigInt& a, const BigInt& b) {
  return a.sign_ == b.sign_ && a.mag_ == b.mag_;
}

bool operator<(const BigInt& a, const BigInt& b) {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
  int c = BigInt::cmp_mag(a.mag_, b.mag_);
  return a.sign_ >= 0 ? c < 0 : c > 0;
}

bool BigInt::fits_int64() const {
  if (mag_.size() > 2) return false;
  uint64_t u = 0;
  for (size_t i = mag_.size(); i-- > 0;) u = (u << 32) | mag_[i];
  if (sign_ >= 0) return u <= uint64_t(INT64_MAX);
  return u <= uint64_t(INT64_MAX) + 1;
}

long long BigInt::to_int64() const {
  uint64_t u = 0;
  for (size_t i = mag_.size(); i-- > 0;) u = (u << 32) | mag_[i];
  return sign_ < 0 ? -static_cast<long long>(u) : static_cast<long long>(u);
}

std::string BigInt::to_string() const {
  if (is_zero()) return "0";
  std::vector<uint32_t> chunks;  // base 1e9, little-endian
  std::vector<uint32_t> cur = mag_;
  const std::vector<uint32_t> bn = {1000000000u};
  while (!cur.empty()) {
    std::vector<uint32_t> q, r;
    divmod_mag(cur, bn, q, r);
    chunks.push_back(r.empty() ? 0 : r[0]);
    cur = std::move(q);
  }
  std::string s = sign_ < 0 ? "-" : "";
  s += std::to_string(chunks.back());
  for (size_t i = chunks.size() - 1; i-- > 0;) {
    std::string part = std::to_string(chunks[i]);
    s += std::string(9 - part.size(), '0') + part;
  }
  return s;
}

// ---------------------------------------------------------------------------

Rational::Rational(long long n, long long d) : num_(n), den_(d) {
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  reduce();
}

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
  reduce();
}

Rational Rational::integer(BigInt n) { return Rational(std::move(n), BigInt(1)); }

namespace {

// values this small keep every intermediate of a +/-/* in range of
// long long, so the arithmetic can skip BigInt allocation entirely
constexpr long long kSmall = 1LL << 30;

inline bool small_abs(const BigInt& x, long long* out) {
  if (!x.fits_int64()) return false;
  long long v = x.to_int64();
  if (v > kSmall || v < -kSmall) return false;
  *out = v;
  return true;
}

inline long long llgcd(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational Rational::make_reduced(long long n, long long d) {
  // caller guarantees d > 0; reduce with native gcd
  if (n == 0) return Rational(0);
  long long g = llgcd(n, d);
  Rational r;
  r.num_ = BigInt(n / g);
  r.den_ = BigInt(d / g);
  return r;
}

void Rational::reduce() {
  if (den_.sign() < 0) {
    num_ = num_.negated();
    den_ = den_.negated();
  }
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  BigInt g = BigInt::gcd(num_, den_);
  if (g == BigInt(1)) return;
  BigInt q, r;
  BigInt::divmod(num_, g, q, r);
  num_ = q;
  BigInt::divmod(den_, g, q, r);
  den_ = q;
}

bool Rational::is_one() const { return num_ == BigInt(1) && den_ == BigInt(1); }
bool Rational::is_integer() const { return den_ == BigInt(1); }

Rational operator+(const Rational& a, const Rational& b) {
  long long an, ad, bn, bd;
  if (small_abs(a.num_, &an) && small_abs(a.den_, &ad) && small_abs(b.num_, &bn) &&
      small_abs(b.den_, &bd))
    return Rational::make_reduced(an * bd + bn * ad, ad * bd);
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator-(const Rational& a, const Rational& b) {
  long long an, ad, bn, bd;
  if (small_abs(a.num_, &an) && small_abs(a.den_, &ad) && small_abs(b.num_, &bn) &&
      small_abs(b.den_, &bd))
    return Rational::make_reduced(an * bd - bn * ad, ad * bd);
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator*(const Rational& a, const Rational& b) {
  long long an, ad, bn, bd;
  if (small_abs(a.num_, &an) && small_abs(a.den_, &ad) && small_abs(b.num_, &bn) &&
      small_abs(b.den_, &bd))
    return Rational::make_reduced(an * bn, ad * bd);
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}
Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("Rational: division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = r.num_.negated();
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  return Rational(den_, num_);
}

Rational Rational::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  Rational base = *this, acc(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

bool operator==(const Rational& a, const Rational& b) {
  return a.num_ == b.num_ && a.den_ == b.den_;
}

bool operator<(const Rational& a, const Rational& b) {
  return a.num_ * b.den_ < b.num_ * a.den_;
}

double Rational::to_double() const {
  // exact for everything the numeric layer feeds it; good enough elsewhere
  if (num_.fits_int64() && den_.fits_int64())
    return static_cast<double>(num_.to_int64()) / static_cast<double>(den_.to_int64());
  return std::stod(num_.to_string()) / std::stod(den_.to_string());
}

std::string Rational::to_string() const {
  if (is_integer()) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

}  // namespace odesym
