#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "meyerkit/error.hpp"

namespace meyerkit {

using Integer = mpz_class;
using Rational = mpq_class;

/// True when n >= 1 has no square factor > 1.
bool is_squarefree(std::int64_t n);

/// Parses "p", "p/q", "-1.25" or "1e-3" into an exact rational.
Rational parse_rational(std::string_view text);
std::string rational_str(const Rational& q);

/*
 * QuadExt: the number a + b*sqrt(D) with rational a, b and squarefree D >= 1.
 *
 * Values with b = 0 are stored with D = 1 so that plain rationals mix freely
 * with any field. Two irrational operands with different D raise
 * DimensionError.
 */
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  QuadExt(const Rational& a) : a_(a) { a_.canonicalize(); }  // NOLINT
  QuadExt(const Integer& a) : a_(a) {}                       // NOLINT
  QuadExt(const Rational& a, const Rational& b, std::int64_t D);

  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }
  std::int64_t D() const noexcept { return D_; }
  bool is_rational() const noexcept { return sgn(b_) == 0; }
  bool is_zero() const noexcept { return sgn(a_) == 0 && sgn(b_) == 0; }

  QuadExt conjugate() const { return make(a_, -b_, D_); }
  /// a^2 - D b^2; zero only for the zero element.
  Rational norm() const { return a_ * a_ - b_ * b_ * D_; }
  double to_double() const;

  QuadExt operator-() const { return make(-a_, -b_, D_); }
  QuadExt& operator+=(const QuadExt& o);
  QuadExt& operator-=(const QuadExt& o);
  QuadExt& operator*=(const QuadExt& o);
  QuadExt& operator/=(const QuadExt& o);

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.D_ == y.D_ || sgn(x.b_) == 0);
  }
  friend std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y);

  /// Canonical text form: "a" when rational, else "a+b√D" / "a-b√D".
  std::string str() const;
  /// Inverse of str(); also accepts "sqrt" for the radical and omitted parts
  /// such as "√5" or "-1/2√5".
  static QuadExt parse(std::string_view text);

 private:
  static QuadExt make(Rational a, Rational b, std::int64_t D);
  std::int64_t joint_D(const QuadExt& o) const;

  Rational a_;
  Rational b_;
  std::int64_t D_ = 1;
};

/// Exact sign of a + b sqrt(D): -1, 0 or +1.
int qsign(const QuadExt& x);

QuadExt abs(const QuadExt& x);
const QuadExt& min(const QuadExt& x, const QuadExt& y);
const QuadExt& max(const QuadExt& x, const QuadExt& y);
Integer floor(const QuadExt& x);
Integer ceil(const QuadExt& x);

std::ostream& operator<<(std::ostream& os, const QuadExt& x);

using QVector = std::vector<QuadExt>;

/// Checks that all irrational entries share one D and returns it (1 if none).
std::int64_t common_field(const QVector& v);

}  // namespace meyerkit
