#include <doctest.h>

#include <cmath>
#include <random>

#include "lislab/errors.hpp"
#include "lislab/fredholm.hpp"
#include "lislab/painleve.hpp"
#include "lislab/quadrature.hpp"
#include "lislab/specfun.hpp"

using namespace lislab;
using specfun::airy_ai;
using specfun::airy_ai_prime;

TEST_CASE("Gauss-Legendre rules") {
  const auto q1 = gauss_legendre(1, -1, 1);
  REQUIRE(q1.size() == 1);
  CHECK(std::abs(q1.nodes[0]) < 1e-15);
  CHECK(q1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));
  const auto q = gauss_legendre(17, 0.5, 3.25);
  double sw = 0;
  for (int i = 0; i < q.size(); ++i) {
    sw += q.weights[i];
    CHECK(q.weights[i] > 0);
    CHECK(q.nodes[i] > 0.5);
    CHECK(q.nodes[i] < 3.25);
    if (i) CHECK(q.nodes[i] > q.nodes[i - 1]);
  }
  CHECK(std::abs(sw - 2.75) < 1e-14);
  CHECK(std::abs(integrate_gl([](double x) { return x * x; }, -1, 1, 2) - 2.0 / 3) < 1e-15);
  CHECK(std::abs(integrate_gl([](double x) { return std::pow(x, 9); }, 0, 1, 5) - 0.1) < 1e-15);
  CHECK_THROWS_AS(gauss_legendre(0, 0, 1), ArgumentError);
  CHECK_THROWS_AS(gauss_legendre(4, 1, 1), ArgumentError);
}

TEST_CASE("Kernel diagonals and special values") {
  for (double t : {-3.0, 0.0, 1.5}) {
    const double ai = airy_ai(t), aip = airy_ai_prime(t);
    CHECK(std::abs(eval_kernel(KernelSpec::airy_soft(), t, t) - (aip * aip - t * ai * ai)) < 1e-14);
    const double L = (12 * ai * aip + 3 * t * t * ai * ai - 2 * t * aip * aip) / (std::cbrt(2.0) * 30);
    CHECK(std::abs(eval_kernel(KernelSpec::l_corr(), t, t) - L) < 1e-14);
  }
  CHECK(eval_kernel(KernelSpec::v_soft(0), 0, 0) == airy_ai(0.0));
  CHECK(eval_kernel(KernelSpec::zero(), 0.3, 0.7) == 0.0);
  CHECK_THROWS_AS(eval_kernel(KernelSpec::bessel_hard(1), -1, 1), DomainError);
  CHECK_THROWS_AS(eval_kernel(KernelSpec::v_hard(1, 2), 0.5, 1.5), DomainError);
  CHECK_THROWS_AS(eval_kernel(KernelSpec::bessel_hard(-1), 1, 1), DomainError);
  CHECK_THROWS_AS(eval_kernel(KernelSpec::v_hard(1, 0), 0.5, 0.5), DomainError);
  CHECK_THROWS_AS(eval_kernel(KernelSpec::airy_soft(), NAN, 0), DomainError);
}

TEST_CASE("Kernel symmetry at random pairs") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> U(0, 1);
  for (int i = 0; i < 100; ++i) {
    const double x = 6 * U(gen), y = 6 * U(gen), t = -3 + 4 * U(gen);
    const double xa = x - 3, ya = y - 3;
    CHECK(eval_kernel(KernelSpec::airy_soft(), xa, ya) == doctest::Approx(eval_kernel(KernelSpec::airy_soft(), ya, xa)).epsilon(1e-13));
    CHECK(eval_kernel(KernelSpec::l_corr(), xa, ya) == doctest::Approx(eval_kernel(KernelSpec::l_corr(), ya, xa)).epsilon(1e-13));
    CHECK(eval_kernel(KernelSpec::bessel_hard(2.5), 10 * x, 10 * y) ==
          doctest::Approx(eval_kernel(KernelSpec::bessel_hard(2.5), 10 * y, 10 * x)).epsilon(1e-13));
    CHECK(eval_kernel(KernelSpec::v_soft(t), x, y) == doctest::Approx(eval_kernel(KernelSpec::v_soft(t), y, x)).epsilon(1e-13));
    CHECK(eval_kernel(KernelSpec::m_corr(t), x, y) == doctest::Approx(eval_kernel(KernelSpec::m_corr(t), y, x)).epsilon(1e-13));
    CHECK(eval_kernel(KernelSpec::v_hard(3, 20), x / 6, y / 6) == doctest::Approx(eval_kernel(KernelSpec::v_hard(3, 20), y / 6, x / 6)).epsilon(1e-13));
  }
}

TEST_CASE("Diagonal continuity of the divided-difference kernels") {
  for (double x : {-2.0, 0.3, 2.7}) {
    const double d = eval_kernel(KernelSpec::airy_soft(), x, x);
    CHECK(std::abs(eval_kernel(KernelSpec::airy_soft(), x, x + 1e-3) - d) < 1e-3);
    CHECK(std::abs(eval_kernel(KernelSpec::airy_soft(), x, x + 1e-5) - d) < 1e-5);
    CHECK(std::abs(eval_kernel(KernelSpec::airy_soft(), x, x + 1e-5) - d) <
          std::abs(eval_kernel(KernelSpec::airy_soft(), x, x + 1e-3) - d));
  }
  for (double x : {0.5, 4.0, 30.0}) {
    const KernelSpec k = KernelSpec::bessel_hard(3);
    const double d = eval_kernel(k, x, x);
    CHECK(std::abs(eval_kernel(k, x, x + 1e-3) - d) < 1e-3);
    CHECK(std::abs(eval_kernel(k, x, x + 1e-5) - d) < 1e-5);
  }
  // Off-diagonal branch switch is smooth.
  const double a = eval_kernel(KernelSpec::airy_soft(), 1.0, 1.0 + 0.0099999);
  const double b = eval_kernel(KernelSpec::airy_soft(), 1.0, 1.0 + 0.0100001);
  CHECK(std::abs(a - b) < 1e-8);
}

TEST_CASE("Fredholm determinants: trivial and oracle values") {
  CHECK(fredholm_det(KernelSpec::zero(), {0.0, 3.0}, -1).value == 1.0);
  CHECK(fredholm_det(KernelSpec::zero(), {-2.0}, +1).value == 1.0);
  CHECK(std::abs(fredholm_det(KernelSpec::airy_soft(), {10.0}, -1).value - 1) < 1e-12);
  // mpmath Nystrom oracles
  const double F2[] = {0.0035445535955092002963, 0.41322414250512255469, 0.96937282835526266835,
                       0.99988755369830917293};
  const double E1[] = {0.0075676785987964005219, 0.27432019790921785767, 0.83190806620295192746,
                       0.98959757108482699207};
  const double E4[] = {0.23797412296663420727, 0.89033858463409372503, 0.99857419735816854022,
                       0.9999978598500646297};
  const double ts[] = {-4, -2, 0, 2};
  for (int i = 0; i < 4; ++i) {
    const auto d = fredholm_det(KernelSpec::airy_soft(), {ts[i]}, -1);
    CHECK(std::abs(d.value - F2[i]) < 1e-12);
    CHECK(d.est_error >= 0);
    CHECK(d.order >= 4);
    const double m = fredholm_det(KernelSpec::v_soft(ts[i]), {0.0}, -1).value;
    const double p = fredholm_det(KernelSpec::v_soft(ts[i]), {0.0}, +1).value;
    CHECK(std::abs(m - E1[i]) < 1e-12);
    CHECK(std::abs(0.5 * (m + p) - E4[i]) < 1e-12);
  }
  const double hard[][3] = {{0, 4, 0.367879441171442322}, {2, 10, 0.829335523360578065}, {5, 30, 0.947931186710869232}};
  for (const auto& h : hard)
    CHECK(std::abs(fredholm_det(KernelSpec::bessel_hard(h[0]), {0.0, h[1]}, -1).value - h[2]) < 1e-12);
}

TEST_CASE("Airy determinant on (0, inf) matches exp(-int r q0^2)") {
  const auto q0 = painleve::solve<double>({painleve::ProblemKind::Q0, 0}, -2, 8);
  const double I = integrate_composite([&](double r) { const double q = q0.eval(r); return r * q * q; }, 0, 8, 16, 20);
  // tail beyond 8 with q0 = Ai
  const double tail = integrate_composite([](double r) { const double q = airy_ai(r); return r * q * q; }, 8, 20, 8, 20);
  CHECK(std::abs(fredholm_det(KernelSpec::airy_soft(), {0.0}, -1).value - std::exp(-(I + tail))) < 1e-8);
}

TEST_CASE("Node-doubling convergence is monotone") {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> U(0, 1);
  auto diffs = [](const KernelSpec& k, Interval d, int sign) {
    const double a = fredholm_det_fixed(k, d, sign, 20), b = fredholm_det_fixed(k, d, sign, 40),
                 c = fredholm_det_fixed(k, d, sign, 80);
    return std::pair{std::abs(a - b), std::abs(b - c)};
  };
  for (int i = 0; i < 10; ++i) {
    const double t = -6 + 4 * U(gen);
    const double a = std::floor(8 * U(gen)), s = 40 + 60 * U(gen);
    const std::pair<KernelSpec, Interval> cases[] = {
        {KernelSpec::airy_soft(), {t}},
        {KernelSpec::v_soft(t), {0.0}},
        {KernelSpec::bessel_hard(a), {0.0, s}},
        {KernelSpec::v_hard(a, s), {0.0, 1.0}},
    };
    for (const auto& [k, d] : cases) {
      const auto [d1, d2] = diffs(k, d, -1);
      CHECK_MESSAGE((d2 < d1 || d2 < 1e-14), to_string(k.kind), " ", d1, " ", d2);
    }
  }
}

TEST_CASE("VSoft: det(I-K) det(I+K) = det(I-K^2)") {
  for (double t : {-5.0, -1.0, 2.0}) {
    const KernelSpec k = KernelSpec::v_soft(t);
    const Interval eff = effective_interval(k, {0.0});
    const int n = 80;
    const auto q = gauss_legendre(n, eff.lo, eff.hi);
    const Eigen::MatrixXd K = discretize(k, q);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    const double sq = (I - K * K).determinant();
    const double prod = fredholm_det_fixed(k, {0.0}, -1, n) * fredholm_det_fixed(k, {0.0}, +1, n);
    CHECK(std::abs(sq - prod) < 1e-10);
  }
}

TEST_CASE("Resolvent traces") {
  CHECK(resolvent_trace(KernelSpec::airy_soft(), KernelSpec::zero(), {-1.0}, -1).value == 0.0);
  const KernelSpec L = KernelSpec::l_corr();
  const Interval eff = effective_interval(L, {-1.0});
  const auto q = gauss_legendre(80, eff.lo, eff.hi);
  double plain = 0;
  for (int i = 0; i < q.size(); ++i) plain += q.weights[i] * eval_kernel(L, q.nodes[i], q.nodes[i]);
  CHECK(std::abs(resolvent_trace(KernelSpec::zero(), L, {-1.0}, -1, {80, 80, 1e-10, false}).value - plain) < 1e-13);
  const double direct = integrate_composite([&](double x) { return eval_kernel(L, x, x); }, 4, 20, 8, 20);
  CHECK(std::abs(resolvent_trace(KernelSpec::airy_soft(), L, {4.0}, -1).value - direct) < 1e-6);
  const auto dt = det_and_trace(KernelSpec::airy_soft(), L, {-1.0}, -1);
  CHECK(std::abs(dt.det.value - fredholm_det(KernelSpec::airy_soft(), {-1.0}, -1).value) < 1e-12);
  CHECK(std::abs(dt.trace.value - resolvent_trace(KernelSpec::airy_soft(), L, {-1.0}, -1).value) < 1e-12);
}

TEST_CASE("Options and domain validation") {
  FredholmOptions bad;
  bad.n = 0;
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  CHECK_THROWS_AS(fredholm_det(KernelSpec::airy_soft(), {0.0}, 0), ArgumentError);
  CHECK_THROWS_AS(fredholm_det(KernelSpec::bessel_hard(1), {0.0}, -1), DomainError);
  CHECK_THROWS_AS(fredholm_det(KernelSpec::v_soft(0), {-1.0}, -1), DomainError);
  CHECK(minimum_nodes(KernelSpec::bessel_hard(2), {0.0, 100.0}) >= 66);
}
