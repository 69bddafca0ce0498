#include <cmath>
#include <numeric>
#include <random>

#include <mpfr.h>

#include "doctest.h"
#include "support.hpp"
#include "tilequot/exactnum.hpp"

using namespace tilequot;

namespace {

std::mt19937_64 rng(20240611);

Rational small_rational(int span = 20) {
  std::uniform_int_distribution<int> num(-span, span), den(1, 9);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

QNum random_qnum() { return QNum(small_rational(), small_rational(), small_rational(), small_rational()); }

// 200-bit floating value of a + b sqrt2 + c sqrt3 + d sqrt6.
int mpfr_sign(const QNum& v, double* magnitude = nullptr) {
  mpfr_t acc, term, root, q;
  mpfr_inits2(200, acc, term, root, q, (mpfr_ptr)0);
  mpfr_set_q(acc, v.a().get_mpq_t(), MPFR_RNDN);
  const Rational* coef[3] = {&v.b(), &v.c(), &v.d()};
  const unsigned radicand[3] = {2, 3, 6};
  for (int i = 0; i < 3; ++i) {
    mpfr_sqrt_ui(root, radicand[i], MPFR_RNDN);
    mpfr_set_q(q, coef[i]->get_mpq_t(), MPFR_RNDN);
    mpfr_mul(term, root, q, MPFR_RNDN);
    mpfr_add(acc, acc, term, MPFR_RNDN);
  }
  int s = mpfr_sgn(acc);
  if (magnitude) *magnitude = std::fabs(mpfr_get_d(acc, MPFR_RNDN));
  mpfr_clears(acc, term, root, q, (mpfr_ptr)0);
  return s;
}

}  // namespace

TEST_SUITE("exactnum") {

TEST_CASE("rational strings round trip in canonical form") {
  CHECK(rational_to_string(Rational(0)) == "0/1");
  CHECK(rational_to_string(Rational(-6, 4) + 0) == "-3/2");
  CHECK(rational_from_string("6/-4") == Rational(-3, 2));
  CHECK(rational_from_string("7") == 7);
  CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("x"), std::invalid_argument);
  for (int i = 0; i < 200; ++i) {
    Rational r = small_rational(1000);
    CHECK(rational_from_string(rational_to_string(r)) == r);
  }
}

TEST_CASE("field axioms on random elements") {
  for (int i = 0; i < 300; ++i) {
    QNum x = random_qnum(), y = random_qnum(), z = random_qnum();
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * y == y * x);
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x - x == QNum(0));
    if (!x.is_zero()) {
      CHECK(x * x.inverse() == QNum(1));
      CHECK((y / x) * x == y);
    }
  }
  CHECK(QNum::sqrt2() * QNum::sqrt3() == QNum::sqrt6());
  CHECK(QNum::sqrt6() * QNum::sqrt6() == QNum(6));
  CHECK_THROWS_AS(QNum(0).inverse(), std::domain_error);
}

TEST_CASE("string coefficients round trip") {
  for (int i = 0; i < 50; ++i) {
    QNum x = random_qnum();
    auto parts = x.to_strings();
    CHECK(QNum::from_strings({parts.begin(), parts.end()}) == x);
  }
}

TEST_CASE("sign agrees with a 200-bit floating oracle") {
  int resolved = 0;
  for (int i = 0; i < 2000; ++i) {
    QNum x = random_qnum();
    double mag = 0;
    int want = mpfr_sign(x, &mag);
    if (x.is_zero()) {
      CHECK(qnum_sign(x) == 0);
      continue;
    }
    REQUIRE(mag > 1e-40);
    CHECK(qnum_sign(x) == want);
    ++resolved;
  }
  CHECK(resolved > 1900);
}

TEST_CASE("sign of near-cancelling values") {
  // (sqrt2 + sqrt3)^2 = 5 + 2 sqrt6 exactly
  QNum s = QNum::sqrt2() + QNum::sqrt3();
  CHECK(qnum_sign(s * s - QNum(5, 0, 0, 2)) == 0);
  // Pell convergents a - b sqrt2 = 1 / (a + b sqrt2) > 0, shrinking fast
  mpz_class a = 3, b = 2;
  for (int k = 0; k < 25; ++k) {
    QNum v(Rational(a), Rational(-b));
    CHECK(qnum_sign(v) == 1);
    CHECK(qnum_sign(-v) == -1);
    CHECK(mpfr_sign(v) == 1);
    mpz_class na = 3 * a + 4 * b, nb = 2 * a + 3 * b;
    a = na;
    b = nb;
  }
  // 2 - sqrt3 family: a^2 - 3 b^2 = 1
  QNum t(Rational(7), 0, Rational(-4));
  CHECK(qnum_sign(t) == 1);
  CHECK(qnum_sign(QNum(Rational(26), 0, Rational(-15))) == 1);
  CHECK(qnum_sign(QNum(Rational(-97), 0, Rational(56))) == -1);
}

TEST_CASE("ordering is consistent with sign") {
  for (int i = 0; i < 300; ++i) {
    QNum x = random_qnum(), y = random_qnum();
    int s = qnum_sign(x - y);
    CHECK(((x <=> y) < 0) == (s < 0));
    CHECK(((x <=> y) == 0) == (s == 0));
  }
}

TEST_CASE("angle order matches atan2 on integer vectors") {
  std::uniform_int_distribution<int> c(-9, 9);
  auto angle = [](int x, int y) {
    double a = std::atan2(double(y), double(x));
    return a < 0 ? a + 2 * M_PI : a;
  };
  for (int i = 0; i < 500; ++i) {
    int ux = c(rng), uy = c(rng), vx = c(rng), vy = c(rng);
    if ((ux == 0 && uy == 0) || (vx == 0 && vy == 0)) continue;
    double au = angle(ux, uy), av = angle(vx, vy);
    if (std::fabs(au - av) < 1e-9) continue;
    CHECK(angle_less({QNum(ux), QNum(uy)}, {QNum(vx), QNum(vy)}) == (au < av));
  }
}

TEST_CASE("geometric matrices invert exactly") {
  for (int i = 0; i < 100; ++i) {
    QMat2 m{random_qnum(), random_qnum(), random_qnum(), random_qnum()};
    if (m.det().is_zero()) continue;
    CHECK(m * m.inverse() == QMat2::identity());
  }
}

TEST_CASE("Hermite normal form") {
  auto gcd_of_minors = [](const std::vector<Shift>& g) {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = i + 1; j < g.size(); ++j) d = std::gcd(d, g[i].x * g[j].y - g[i].y * g[j].x);
    return d;
  };
  std::uniform_int_distribution<int> e(-12, 12);
  for (int i = 0; i < 500; ++i) {
    IntMat2 m{e(rng), e(rng), e(rng), e(rng)};
    if (m.det() == 0) {
      CHECK_THROWS_WITH_AS(hnf(m), "degenerate sublattice", std::invalid_argument);
      continue;
    }
    IntMat2 h = hnf(m);
    CHECK(h.m10 == 0);
    CHECK(h.m00 > 0);
    CHECK(h.m11 > 0);
    CHECK(h.m01 >= 0);
    CHECK(h.m01 < h.m00);
    CHECK(h.det() == std::abs(m.det()));
    CHECK(lattice_contains(h, m.col0()));
    CHECK(lattice_contains(h, m.col1()));
    CHECK(hnf(h) == h);
    IntMat2 u{1, e(rng), 0, 1};
    IntMat2 w{1, 0, e(rng), -1};
    CHECK(hnf(m * u * w) == h);
  }
  for (int i = 0; i < 300; ++i) {
    std::vector<Shift> gens;
    std::uniform_int_distribution<int> count(2, 4);
    for (int k = count(rng); k > 0; --k) gens.push_back({e(rng), e(rng)});
    std::int64_t index = gcd_of_minors(gens);
    if (index == 0) continue;
    IntMat2 h = hnf_of_generators(gens);
    CHECK(h.det() == index);
    for (auto g : gens) CHECK(lattice_contains(h, g));
  }
}

TEST_CASE("sublattice enumeration against brute force") {
  for (std::int64_t n = 1; n <= 12; ++n) {
    auto subs = sublattices_of_index(n);
    CHECK(subs.size() == support::brute_sublattice_count(n));
    CHECK(static_cast<std::int64_t>(subs.size()) == support::brute_sigma(n));
    CHECK(divisor_sum(n) == support::brute_sigma(n));
    for (std::size_t i = 0; i < subs.size(); ++i) {
      CHECK(hnf(subs[i]) == subs[i]);
      CHECK(subs[i].det() == n);
      if (i) CHECK(std::pair(subs[i - 1].m00, subs[i - 1].m01) < std::pair(subs[i].m00, subs[i].m01));
    }
  }
  CHECK(sublattices_of_index(6).front() == IntMat2{1, 0, 0, 6});
}

}
