#include "tilequot/exactnum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>
#include <ostream>
#include <sstream>

namespace tilequot {

std::string rational_to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational rational_from_string(const std::string& s) {
  auto trimmed = s;
  trimmed.erase(std::remove_if(trimmed.begin(), trimmed.end(), ::isspace), trimmed.end());
  if (trimmed.empty()) throw std::invalid_argument("empty rational");
  auto slash = trimmed.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(), ::isdigit);
  };
  std::string num = trimmed.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : trimmed.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("malformed rational '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  mpz_class p(num), q(den);
  if (q == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

QNum::QNum(Rational a, Rational b, Rational c, Rational d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  a_.canonicalize();
  b_.canonicalize();
  c_.canonicalize();
  d_.canonicalize();
}

bool QNum::is_integer() const { return is_rational() && a_.get_den() == 1; }

QNum& QNum::operator+=(const QNum& o) {
  a_ += o.a_;
  b_ += o.b_;
  c_ += o.c_;
  d_ += o.d_;
  return *this;
}

QNum& QNum::operator-=(const QNum& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  c_ -= o.c_;
  d_ -= o.d_;
  return *this;
}

QNum& QNum::operator*=(const QNum& o) {
  // basis products: s2*s2=2, s3*s3=3, s6*s6=6, s2*s3=s6, s2*s6=2 s3, s3*s6=3 s2
  const Rational& a = a_; const Rational& b = b_; const Rational& c = c_; const Rational& d = d_;
  const Rational& e = o.a_; const Rational& f = o.b_; const Rational& g = o.c_; const Rational& h = o.d_;
  Rational na = a * e + 2 * b * f + 3 * c * g + 6 * d * h;
  Rational nb = a * f + b * e + 3 * c * h + 3 * d * g;
  Rational nc = a * g + c * e + 2 * b * h + 2 * d * f;
  Rational nd = a * h + d * e + b * g + c * f;
  a_ = std::move(na);
  b_ = std::move(nb);
  c_ = std::move(nc);
  d_ = std::move(nd);
  return *this;
}

QNum QNum::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(sqrt2,sqrt3)");
  // x = P + Q sqrt3 with P, Q in Q(sqrt2); x (P - Q sqrt3) = P^2 - 3 Q^2 in Q(sqrt2).
  QNum conj3(a_, b_, -c_, -d_);
  QNum r = *this * conj3;  // c = d = 0 now
  QNum conj2(r.a_, -r.b_, 0, 0);
  QNum n = r * conj2;  // rational
  Rational inv = 1 / n.a_;
  QNum out = conj3 * conj2;
  return QNum(out.a_ * inv, out.b_ * inv, out.c_ * inv, out.d_ * inv);
}

QNum& QNum::operator/=(const QNum& o) { return *this *= o.inverse(); }

namespace {

// floor(sqrt(n) * 2^bits) as an integer.
mpz_class scaled_isqrt(unsigned n, unsigned long bits) {
  mpz_class v = n;
  v <<= 2 * bits;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

// Adds coefficient * [lo, hi] / 2^bits to the running interval bounds.
void add_term(const Rational& coef, const mpz_class& lo, Rational& low, Rational& high, unsigned long bits) {
  if (sgn(coef) == 0) return;
  Rational l(lo, 1);
  Rational h(lo + 1, 1);
  mpz_class scale = 1;
  scale <<= bits;
  l /= scale;
  h /= scale;
  if (sgn(coef) > 0) {
    low += coef * l;
    high += coef * h;
  } else {
    low += coef * h;
    high += coef * l;
  }
}

}  // namespace

int qnum_sign(const QNum& v) {
  if (v.is_zero()) return 0;
  if (v.is_rational()) return sgn(v.a());
  unsigned long bits = 32;
  for (;;) {
    Rational low = v.a(), high = v.a();
    add_term(v.b(), scaled_isqrt(2, bits), low, high, bits);
    add_term(v.c(), scaled_isqrt(3, bits), low, high, bits);
    add_term(v.d(), scaled_isqrt(6, bits), low, high, bits);
    if (sgn(low) > 0) return 1;
    if (sgn(high) < 0) return -1;
    bits *= 2;
  }
}

std::strong_ordering operator<=>(const QNum& x, const QNum& y) {
  int s = qnum_sign(x - y);
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double QNum::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(2.0) + c_.get_d() * std::sqrt(3.0) + d_.get_d() * std::sqrt(6.0);
}

std::array<std::string, 4> QNum::to_strings() const {
  return {rational_to_string(a_), rational_to_string(b_), rational_to_string(c_), rational_to_string(d_)};
}

QNum QNum::from_strings(const std::vector<std::string>& parts) {
  if (parts.size() != 4)
    throw std::invalid_argument("coordinates outside Q(sqrt2,sqrt3): expected 4 coefficients, got " +
                                std::to_string(parts.size()));
  return QNum(rational_from_string(parts[0]), rational_from_string(parts[1]), rational_from_string(parts[2]),
              rational_from_string(parts[3]));
}

std::ostream& operator<<(std::ostream& os, const QNum& v) {
  bool any = false;
  auto term = [&](const Rational& r, const char* unit) {
    if (sgn(r) == 0) return;
    if (any) os << (sgn(r) > 0 ? " + " : " - ");
    else if (sgn(r) < 0) os << "-";
    Rational m = abs(r);
    if (*unit == '\0' || m != 1) os << m.get_str();
    if (*unit) os << (m != 1 ? "*" : "") << unit;
    any = true;
  };
  term(v.a(), "");
  term(v.b(), "s2");
  term(v.c(), "s3");
  term(v.d(), "s6");
  if (!any) os << "0";
  return os;
}

std::ostream& operator<<(std::ostream& os, const Vec2& v) { return os << "(" << v.x << ", " << v.y << ")"; }

bool angle_less(const Vec2& u, const Vec2& v) {
  // half 0: angle in [0, pi), half 1: [pi, 2pi)
  auto half = [](const Vec2& w) {
    int sy = qnum_sign(w.y);
    if (sy > 0) return 0;
    if (sy < 0) return 1;
    return qnum_sign(w.x) > 0 ? 0 : 1;
  };
  int hu = half(u), hv = half(v);
  if (hu != hv) return hu < hv;
  return qnum_sign(u.cross(v)) > 0;
}

QMat2 QMat2::operator*(const QMat2& o) const {
  return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11, m10 * o.m00 + m11 * o.m10,
          m10 * o.m01 + m11 * o.m11};
}

QMat2 QMat2::inverse() const {
  QNum inv = det().inverse();
  return {m11 * inv, -m01 * inv, -m10 * inv, m00 * inv};
}

IntMat2 IntMat2::operator*(const IntMat2& o) const {
  return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11, m10 * o.m00 + m11 * o.m10,
          m10 * o.m01 + m11 * o.m11};
}

std::ostream& operator<<(std::ostream& os, const IntMat2& m) { return os << to_string(m); }

std::string to_string(const IntMat2& m) {
  std::ostringstream os;
  os << "[[" << m.m00 << "," << m.m01 << "],[" << m.m10 << "," << m.m11 << "]]";
  return os.str();
}

namespace {

std::int64_t floor_mod(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

// x*p + y*q = g >= 0
std::int64_t ext_gcd(std::int64_t p, std::int64_t q, std::int64_t& x, std::int64_t& y) {
  std::int64_t old_r = p, r = q, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t quo = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - quo * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - quo * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - quo * t);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

}  // namespace

IntMat2 hnf(const IntMat2& m) {
  if (m.det() == 0) throw std::invalid_argument("degenerate sublattice");
  std::int64_t p = m.m10, q = m.m11, x = 0, y = 0;
  std::int64_t g = ext_gcd(p, q, x, y);
  // column op V = [[q/g, x], [-p/g, y]], det 1
  std::int64_t v00 = q / g, v01 = x, v10 = -p / g, v11 = y;
  IntMat2 r = m * IntMat2{v00, v01, v10, v11};
  // r = [[a, b], [0, g]]
  std::int64_t a = r.m00, b = r.m01, d = r.m11;
  if (a < 0) a = -a;
  if (d < 0) {
    d = -d;
    b = -b;
  }
  b = floor_mod(b, a);
  return {a, b, 0, d};
}

IntMat2 hnf_of_generators(const std::vector<Shift>& gens) {
  std::vector<Shift> cols = gens;
  if (cols.size() < 2) throw std::invalid_argument("degenerate sublattice");
  // clear bottom entries of all but the last column
  Shift& last = cols.back();
  for (std::size_t i = 0; i + 1 < cols.size(); ++i) {
    Shift& c = cols[i];
    if (c.y == 0) continue;
    std::int64_t x = 0, y = 0;
    std::int64_t g = ext_gcd(c.y, last.y, x, y);
    Shift keep{x * c.x + y * last.x, g};
    Shift zero{(last.y / g) * c.x - (c.y / g) * last.x, 0};
    c = zero;
    last = keep;
  }
  std::int64_t a = 0;
  for (std::size_t i = 0; i + 1 < cols.size(); ++i) a = std::gcd(a, cols[i].x);
  if (a == 0 || last.y == 0) throw std::invalid_argument("degenerate sublattice");
  return hnf({a, last.x, 0, last.y});
}

bool lattice_contains(const IntMat2& h, Shift v) {
  // h upper triangular with positive diagonal
  if (floor_mod(v.y, h.m11) != 0) return false;
  std::int64_t k = v.y / h.m11;
  return floor_mod(v.x - k * h.m01, h.m00) == 0;
}

std::vector<IntMat2> sublattices_of_index(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("sublattice index must be positive");
  std::vector<IntMat2> out;
  for (std::int64_t a = 1; a <= n; ++a) {
    if (n % a != 0) continue;
    for (std::int64_t b = 0; b < a; ++b) out.push_back({a, b, 0, n / a});
  }
  return out;
}

std::int64_t divisor_sum(std::int64_t n) {
  std::int64_t s = 0;
  for (std::int64_t k = 1; k <= n; ++k)
    if (n % k == 0) s += k;
  return s;
}

}  // namespace tilequot
