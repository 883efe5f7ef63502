#include <doctest.h>

#include <cmath>
#include <random>

#include "lislab/specfun.hpp"

using namespace lislab;
using namespace lislab::specfun;

namespace {

// Maclaurin series Ai(x) = c1 f(x) - c2 g(x), summed until terms drop below 1e-20.
std::pair<double, double> airy_maclaurin(double x) {
  const double c1 = 0.355028053887817239260, c2 = 0.258819403792806798405;
  long double f = 1, g = x, tf = 1, tg = x, fp = 0, gp = 1, tfp, tgp;
  for (int k = 1; k < 200; ++k) {
    tf *= (long double)x * x * x / ((3.0L * k - 1) * (3.0L * k));
    tg *= (long double)x * x * x / ((3.0L * k) * (3.0L * k + 1));
    f += tf;
    g += tg;
    tfp = tf * 3 * k / x;
    tgp = tg * (3 * k + 1) / x;
    fp += x == 0 ? 0 : tfp;
    gp += x == 0 ? 0 : tgp;
    if (std::abs((double)tf) < 1e-20 && std::abs((double)tg) < 1e-20) break;
  }
  return {double(c1 * f - c2 * g), double(c1 * fp - c2 * gp)};
}

}  // namespace

TEST_CASE("Accuracy defaults and validation") {
  Accuracy a;
  CHECK(a.abs_tol == 1e-13);
  CHECK(a.rel_tol == 1e-13);
  CHECK(a.agrees(1.0, 1.0 + 1e-14));
  CHECK_FALSE(a.agrees(1.0, 1.0 + 1e-10));
  Accuracy bad{0, 1e-13};
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
}

TEST_CASE("Airy function against the Maclaurin oracle") {
  const Accuracy acc;
  for (double x : {0.0, 0.5, -1.0, 2.0, -3.0}) {
    const auto [ai, aip] = airy_maclaurin(x);
    CHECK(acc.agrees(airy_ai(x), ai));
    CHECK(acc.agrees(airy_ai_prime(x), aip));
  }
  // mpmath values
  CHECK(acc.agrees(airy_ai(1.0), 0.13529241631288141552));
  CHECK(acc.agrees(airy_ai_prime(1.0), -0.15914744129679321279));
  CHECK(acc.agrees(airy_ai(-5.0), 0.35076100902411431979));
  CHECK(acc.agrees(airy_ai_prime(-5.0), 0.32719281855444313679));
}

TEST_CASE("Airy decay, derivative consistency and the Airy equation") {
  CHECK(std::abs(airy_ai(40.0)) < 1e-13);
  CHECK(std::abs(airy_ai_prime(40.0)) < 1e-13);
  const double h = 1e-4;
  CHECK(std::abs((airy_ai(1 + h) - 2 * airy_ai(1.0) + airy_ai(1 - h)) / (h * h) - airy_ai(1.0)) < 1e-6);
  CHECK(std::abs((airy_ai(-1 + h) - airy_ai(-1 - h)) / (2 * h) - airy_ai_prime(-1.0)) < 1e-6);
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> U(-8, 8);
  const double hh = 1e-3;
  for (int i = 0; i < 50; ++i) {
    const double x = U(gen);
    const double d2 = (airy_ai(x + hh) - 2 * airy_ai(x) + airy_ai(x - hh)) / (hh * hh);
    CHECK(std::abs(d2 - x * airy_ai(x)) < 1e-5);
  }
  CHECK_THROWS_AS(airy_ai(std::nan("")), DomainError);
  CHECK_THROWS_AS(airy_ai_prime(INFINITY), DomainError);
  const auto p = airy_pair(0.7);
  CHECK(p.ai == airy_ai(0.7));
  CHECK(p.aip == airy_ai_prime(0.7));
  const double x0 = airy_decay_point(1e-16);
  CHECK(airy_ai(x0) < 1e-16);
  CHECK(airy_ai(x0 - 0.05) > 1e-16);
}

TEST_CASE("Bessel J values, limits and errors") {
  const Accuracy acc;
  CHECK(bessel_j(0.0, 0.0) == 1.0);
  CHECK(std::abs(bessel_j(1.0, 1e-8) / 1e-8 - 0.5) < 1e-12);
  CHECK(acc.agrees(bessel_j(2.0, 3.5), 0.4586291841943074835));
  CHECK(acc.agrees(bessel_j_prime(2.0, 3.5), -0.12469629217727709057));
  CHECK(acc.agrees(bessel_j(10.5, 7.0), 0.014204915635445128209));
  CHECK_THROWS_AS(bessel_j(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_j(1.0, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_j(1.0, std::nan("")), DomainError);
}

TEST_CASE("Bessel recurrence at large order") {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> Unu(2, 400), Uf(0.5, 2);
  for (int i = 0; i < 50; ++i) {
    const double nu = Unu(gen), x = nu * Uf(gen);
    const double lhs = bessel_j(nu - 1, x) + bessel_j(nu + 1, x), rhs = 2 * nu / x * bessel_j(nu, x);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("Transition-region asymptotics of J_l") {
  auto two_term = [](double l, double x) {
    return std::cbrt(2 / l) * airy_ai(x) + (2 * x * airy_ai(x) + 3 * x * x * airy_ai_prime(x)) / (10 * l);
  };
  auto arg = [](double l, double x) { return l - x * std::cbrt(l / 2); };
  {
    const double l = 200;
    const double v = bessel_j(l, arg(l, 1.0));
    const double expect = std::cbrt(2 / l) * airy_ai(1.0) + (2 * airy_ai(1.0) + 3 * airy_ai_prime(1.0)) / (10 * l);
    CHECK(std::abs(v - expect) < 5 * std::pow(l, -5.0 / 3.0));
  }
  std::vector<double> err;
  for (double l : {100.0, 200.0, 400.0}) {
    double m = 0;
    for (double x = -2; x <= 6; x += 0.05) m = std::max(m, std::abs(bessel_j(l, arg(l, x)) - two_term(l, x)));
    err.push_back(m);
  }
  const double r = std::pow(2.0, 5.0 / 3.0);
  CHECK(err[0] / err[1] == doctest::Approx(r).epsilon(0.3));
  CHECK(err[1] / err[2] == doctest::Approx(r).epsilon(0.3));
}

TEST_CASE("Bessel small-argument cut") {
  const double u = bessel_small_argument_cut(20, 1e-18);
  CHECK(u > 0);
  CHECK(bessel_j(20.0, u) <= 1e-18 * 1.0001);
  CHECK(bessel_j(20.0, u * 1.05) > 1e-18);
}
