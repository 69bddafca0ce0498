#pragma once

// Exact arithmetic in Q(sqrt2, sqrt3) and 2x2 integer lattice helpers.
//
// Every vertex of an edge-to-edge tiling by regular 3-, 4-, 6-, 8- and
// 12-gons with unit edges (one edge on the x axis) has coordinates in this
// field, so all geometric predicates used by the tiling code are exact.

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace tilequot {

using Rational = mpq_class;

/// Canonical "p/q" form: q > 0, gcd(p, q) = 1, zero is "0/1".
std::string rational_to_string(const Rational& r);
/// Accepts "p/q" or a bare integer "p". Throws std::invalid_argument.
Rational rational_from_string(const std::string& s);

/// a + b*sqrt2 + c*sqrt3 + d*sqrt6 with rational coefficients.
class QNum {
 public:
  QNum() = default;
  QNum(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  explicit QNum(Rational a, Rational b = 0, Rational c = 0, Rational d = 0);

  static QNum sqrt2() { return QNum(0, 1); }
  static QNum sqrt3() { return QNum(0, 0, 1); }
  static QNum sqrt6() { return QNum(0, 0, 0, 1); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0 && sgn(c_) == 0 && sgn(d_) == 0; }
  bool is_rational() const { return sgn(b_) == 0 && sgn(c_) == 0 && sgn(d_) == 0; }
  /// True when the value is a rational integer.
  bool is_integer() const;

  QNum operator-() const { return QNum(-a_, -b_, -c_, -d_); }
  QNum& operator+=(const QNum& o);
  QNum& operator-=(const QNum& o);
  QNum& operator*=(const QNum& o);
  QNum& operator/=(const QNum& o);

  friend QNum operator+(QNum x, const QNum& y) { return x += y; }
  friend QNum operator-(QNum x, const QNum& y) { return x -= y; }
  friend QNum operator*(QNum x, const QNum& y) { return x *= y; }
  friend QNum operator/(QNum x, const QNum& y) { return x /= y; }

  /// Multiplicative inverse; throws std::domain_error on zero.
  QNum inverse() const;

  friend bool operator==(const QNum& x, const QNum& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }
  friend std::strong_ordering operator<=>(const QNum& x, const QNum& y);

  double to_double() const;

  std::array<std::string, 4> to_strings() const;
  static QNum from_strings(const std::vector<std::string>& parts);

 private:
  Rational a_, b_, c_, d_;
};

/// Exact sign: coefficient zero test, then interval refinement with
/// doubling precision. Always terminates for elements of the field.
int qnum_sign(const QNum& v);

std::ostream& operator<<(std::ostream& os, const QNum& v);

struct Vec2 {
  QNum x, y;

  Vec2() = default;
  Vec2(QNum x_, QNum y_) : x(std::move(x_)), y(std::move(y_)) {}

  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  friend Vec2 operator+(Vec2 p, const Vec2& q) { return p += q; }
  friend Vec2 operator-(Vec2 p, const Vec2& q) { return p -= q; }
  Vec2 operator-() const { return {-x, -y}; }
  friend Vec2 operator*(const QNum& s, const Vec2& p) { return {s * p.x, s * p.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;

  QNum dot(const Vec2& o) const { return x * o.x + y * o.y; }
  QNum cross(const Vec2& o) const { return x * o.y - y * o.x; }
  QNum norm2() const { return dot(*this); }
};

std::ostream& operator<<(std::ostream& os, const Vec2& v);

/// Counter-clockwise angular order of nonzero vectors, starting at the
/// positive x axis. Exact.
bool angle_less(const Vec2& u, const Vec2& v);

/// 2x2 matrix over the field (geometric linear maps).
struct QMat2 {
  QNum m00, m01, m10, m11;

  static QMat2 identity() { return {1, 0, 0, 1}; }
  Vec2 apply(const Vec2& v) const { return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y}; }
  QMat2 operator*(const QMat2& o) const;
  QNum det() const { return m00 * m11 - m01 * m10; }
  QMat2 inverse() const;
  friend bool operator==(const QMat2&, const QMat2&) = default;
};

/// Integer lattice coordinates (a vector of Z^2).
struct Shift {
  std::int64_t x = 0, y = 0;

  friend Shift operator+(Shift p, Shift q) { return {p.x + q.x, p.y + q.y}; }
  friend Shift operator-(Shift p, Shift q) { return {p.x - q.x, p.y - q.y}; }
  Shift operator-() const { return {-x, -y}; }
  friend auto operator<=>(const Shift&, const Shift&) = default;
};

/// Integer 2x2 matrix. Columns are lattice generators in the (alpha, beta)
/// basis when the matrix describes a sublattice.
struct IntMat2 {
  std::int64_t m00 = 1, m01 = 0, m10 = 0, m11 = 1;

  static IntMat2 identity() { return {}; }
  static IntMat2 diag(std::int64_t p, std::int64_t q) { return {p, 0, 0, q}; }

  std::int64_t det() const { return m00 * m11 - m01 * m10; }
  Shift col0() const { return {m00, m10}; }
  Shift col1() const { return {m01, m11}; }
  Shift apply(Shift s) const { return {m00 * s.x + m01 * s.y, m10 * s.x + m11 * s.y}; }
  IntMat2 operator*(const IntMat2& o) const;
  friend auto operator<=>(const IntMat2&, const IntMat2&) = default;
};

std::ostream& operator<<(std::ostream& os, const IntMat2& m);
/// "[[a,b],[c,d]]"
std::string to_string(const IntMat2& m);

/// Hermite normal form [[a, b], [0, d]] with a > 0, d > 0, 0 <= b < a,
/// obtained by unimodular column operations. Throws std::invalid_argument
/// ("degenerate sublattice") for singular input.
IntMat2 hnf(const IntMat2& m);

/// HNF of the lattice spanned by the given vectors (at least two, rank 2).
IntMat2 hnf_of_generators(const std::vector<Shift>& gens);

/// True when v lies in the column span of the HNF matrix h.
bool lattice_contains(const IntMat2& h, Shift v);

/// All sublattices of Z^2 of index n, each in HNF, ordered by (a, b).
std::vector<IntMat2> sublattices_of_index(std::int64_t n);

/// Sum of divisors.
std::int64_t divisor_sum(std::int64_t n);

}  // namespace tilequot
