#pragma once

// Exact coefficient fields: the rationals (GMP-backed) and prime fields F_p.
//
// Scalars carry their own arithmetic; a field object is only needed to
// manufacture constants (one, integers, parsed fractions).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gradreg {

class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw std::domain_error("zero denominator");
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  static Rational parse(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational '" + text + "'");
    if (q.get_den() == 0) throw std::domain_error("zero denominator");
    q.canonicalize();
    return Rational(q);
  }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return Rational(mpq_class(1) / q_);
  }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  /// Smallest integer >= this.
  long ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r.get_si();
  }
  long floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r.get_si();
  }

  std::string to_string() const { return q_.get_str(); }
  const mpq_class& raw() const { return q_; }

 private:
  mpq_class q_{0};
};

/// Residue modulo a prime. The modulus travels with the value; a
/// default-constructed element is the zero of whatever field it meets.
class ModP {
 public:
  ModP() = default;
  ModP(std::uint64_t value, std::uint32_t p) : v_(p ? value % p : 0), p_(p) {}

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  std::uint32_t modulus() const { return p_; }
  std::uint32_t value() const { return v_; }

  ModP inverse() const {
    if (v_ == 0) throw std::domain_error("inverse of zero");
    return pow(p_ - 2);
  }
  ModP pow(std::uint64_t e) const {
    std::uint64_t base = v_, acc = 1;
    while (e) {
      if (e & 1) acc = acc * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return ModP(acc, p_);
  }

  ModP operator-() const { return ModP(v_ ? p_ - v_ : 0, p_); }
  ModP& operator+=(const ModP& o) {
    join(o);
    std::uint64_t s = std::uint64_t(v_) + o.v_;
    v_ = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    return *this;
  }
  ModP& operator-=(const ModP& o) { return *this += -o; }
  ModP& operator*=(const ModP& o) {
    join(o);
    v_ = p_ ? static_cast<std::uint32_t>(std::uint64_t(v_) * o.v_ % p_) : 0;
    return *this;
  }
  ModP& operator/=(const ModP& o) {
    join(o);
    return *this *= o.inverse();
  }
  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend bool operator==(const ModP& a, const ModP& b) { return a.v_ == b.v_; }
  friend bool operator!=(const ModP& a, const ModP& b) { return a.v_ != b.v_; }

  /// Symmetric representative in (-p/2, p/2].
  std::string to_string() const {
    long long s = v_;
    if (s > static_cast<long long>(p_) / 2) s -= p_;
    return std::to_string(s);
  }

 private:
  void join(const ModP& o) {
    if (p_ == 0) p_ = o.p_;
  }
  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct RationalField {
  using scalar = Rational;
  scalar from_int(long long v) const { return Rational(static_cast<long>(v)); }
  scalar from_rational(const Rational& r) const { return r; }
  std::string name() const { return "Q"; }
  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

struct PrimeField {
  using scalar = ModP;
  std::uint32_t p = 32003;

  PrimeField() = default;
  explicit PrimeField(std::uint64_t prime) : p(static_cast<std::uint32_t>(prime)) {
    if (prime >= (1ULL << 31) || !is_prime(prime))
      throw std::invalid_argument("F_p requires a prime below 2^31, got " + std::to_string(prime));
  }
  scalar from_int(long long v) const {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    return ModP(static_cast<std::uint64_t>(r), p);
  }
  scalar from_rational(const Rational& r) const {
    mpz_class num = r.raw().get_num() % p, den = r.raw().get_den() % p;
    if (den == 0) throw std::domain_error("denominator vanishes in F_" + std::to_string(p));
    return from_int(num.get_si()) / from_int(den.get_si());
  }
  std::string name() const { return "F" + std::to_string(p); }
  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p == b.p; }
};

}  // namespace gradreg
