// Acceptance suite: one PASS/FAIL line per criterion.
// LISLAB_ACCEPTANCE_QUICK=1 selects the reduced variants of criteria 5 and 7.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lislab/edgelaws.hpp"
#include "lislab/enumerate.hpp"
#include "lislab/painleve.hpp"
#include "lislab/simulate.hpp"
#include "lislab/stats.hpp"

using namespace lislab;

namespace {

const bool kQuick = [] {
  const char* e = std::getenv("LISLAB_ACCEPTANCE_QUICK");
  return e && std::string(e) == "1";
}();
const int kThreads = std::max(1u, std::thread::hardware_concurrency());

std::string sci(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3e", x);
  return b;
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = f();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && s > limit_s) {
    o.pass = false;
    o.detail += "; runtime above " + std::to_string(int(limit_s)) + " s";
  }
  if (!o.pass) ++failures;
  std::printf("%s C%d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), s);
  std::fflush(stdout);
}

std::vector<int> range(int a, int b, int step = 1) {
  std::vector<int> v;
  for (int i = a; i <= b; i += step) v.push_back(i);
  return v;
}

std::map<int, ExactCdfTable>& plain_tables() {
  static std::map<int, ExactCdfTable> t;
  return t;
}

const ExactCdfTable& plain_table(int N) {
  auto& t = plain_tables();
  if (!t.count(N)) t.merge(cached_tables(PermClass::Plain, {N}, true, kThreads));
  return t.at(N);
}

const ExactCdfTable& involution_table(PermClass cls, int N) {
  static std::map<std::pair<PermClass, int>, ExactCdfTable> t;
  const auto key = std::pair{cls, N};
  if (!t.count(key)) t.emplace(key, cached_tables(cls, {N}, true, kThreads).at(N));
  return t.at(key);
}

Outcome c1() {
  for (int N = 1; N <= 8; ++N)
    for (auto backend : {ExactBackend::Modular, ExactBackend::Rational})
      if (build_table(PermClass::Plain, N, backend, kThreads).counts != oracle_bruteforce(N, PermClass::Plain).counts)
        return {false, "PLAIN brute-force mismatch at N = " + std::to_string(N)};
  const auto T = build_tables(PermClass::Plain, range(1, 30), ExactBackend::Modular, kThreads);
  for (int N = 1; N <= 30; ++N)
    for (int l = 0; l <= N; ++l)
      if (T.at(N).counts[l] != oracle_hook_length(N, l))
        return {false, "hook-length mismatch at N = " + std::to_string(N) + ", l = " + std::to_string(l)};
  for (auto cls : {PermClass::InvolutionInc, PermClass::InvolutionDec})
    for (int N = 2; N <= 10; N += 2)
      for (auto backend : {ExactBackend::Modular, ExactBackend::Rational})
        if (build_table(cls, N, backend, kThreads).counts != oracle_bruteforce(N, cls).counts)
          return {false, to_string(cls) + " brute-force mismatch at N = " + std::to_string(N)};
  return {true, "exact equality (PLAIN N<=8 brute force, N<=30 hook length; involutions N<=10)"};
}

Outcome c2() {
  (void)SoftEdge::shared();
  double worst = 0;
  for (int b : {1, 2, 4})
    for (double t : {-6.0, -4.0, -2.0, 0.0, 2.0, 4.0})
      worst = std::max(worst, std::abs(gap_soft(b, t, Route::Fredholm) - gap_soft(b, t, Route::Painleve)));
  return {worst < 1e-8, "max |Fredholm - Painleve| = " + sci(worst) + " (tol 1e-8)"};
}

Outcome c3() {
  const auto& sol = SoftEdge::shared().solutions();
  double bj = 0;
  for (double r = -6; r <= 6 + 1e-9; r += 0.05) bj = std::max(bj, std::abs(painleve::bj_u1_identity_residual(sol, r)));
  double d2 = 0;
  for (double t = -6; t <= 6 + 1e-9; t += 0.25) {
    const double f = correction(2, t, Route::Fredholm), p = correction(2, t, Route::Painleve),
                 b = correction(2, t, Route::BaikJenkins);
    d2 = std::max({d2, std::abs(f - p), std::abs(f - b), std::abs(p - b)});
  }
  double d1 = 0;
  for (double t = -6; t <= 3 + 1e-9; t += 0.1) {
    const double f = correction(1, t, Route::Fredholm), p = correction(1, t, Route::Painleve),
                 b = correction(1, t, Route::BaikJenkins);
    d1 = std::max({d1, std::abs(f - p), std::abs(f - b), std::abs(p - b)});
  }
  return {bj < 1e-6 && d2 < 1e-6 && d1 < 1e-5, "u1 identity " + sci(bj) + " (1e-6), beta=2 routes " + sci(d2) +
                                                   " (1e-6), beta=1 routes " + sci(d1) + " (1e-5)"};
}

Outcome c4() {
  const auto m = limit_moments(2);
  const auto [e, v] = smoothed_limit_moments(10000);
  const auto h = hat_quantities(10000, e, v, m);
  const double dm = std::abs(m.m1 + 1.771086807), dv = std::abs(m.variance() - 0.81319);
  const double de = std::abs(h.mu_hat - 0.5), dvar = std::abs(h.sigma2_hat - 1.0 / 12);
  std::ostringstream os;
  os.precision(10);
  os << "m1 = " << m.m1 << ", variance = " << m.variance() << ", offsets at N=1e4: " << h.mu_hat << ", "
     << h.sigma2_hat;
  return {dm < 1e-6 && dv < 1e-4 && de < 5e-3 && dvar < 5e-3, os.str()};
}

Outcome c5() {
  const int n_max = kQuick ? 120 : 700;
  const double tc = kQuick ? 0.05 : 0.01, td = kQuick ? 0.15 : 0.05;
  const double uc = kQuick ? 0.05 : 0.02, ud = kQuick ? 0.15 : 0.1;
  plain_tables().merge(cached_tables(PermClass::Plain, range(10, n_max), true, kThreads));
  const auto lim = limit_moments(2);
  std::vector<std::pair<double, double>> mu, s2;
  for (int N = 10; N <= n_max; ++N) {
    const auto em = exact_mean_var(plain_table(N));
    const auto h = hat_quantities(N, em.mean.get_d(), em.variance.get_d(), lim);
    mu.push_back({double(N), h.mu_hat});
    s2.push_back({double(N), h.sigma2_hat});
  }
  const auto fm = fit_inverse_cuberoot(mu), fs = fit_inverse_cuberoot(s2);
  const bool ok = std::abs(fm.c - 0.5065) <= tc && std::abs(fm.d - 0.222) <= td && std::abs(fs.c + 1.206) <= uc &&
                  std::abs(fs.d - 0.545) <= ud;
  std::ostringstream os;
  os.precision(5);
  os << "N=10.." << n_max << ": mean (" << fm.c << ", " << fm.d << ") tol (" << tc << ", " << td << "); variance ("
     << fs.c << ", " << fs.d << ") tol (" << uc << ", " << ud << ")";
  return {ok, os.str()};
}

Outcome c6() {
  std::vector<double> grid;
  for (int i = 0; i <= 45; ++i) grid.push_back(-6 + 0.2 * i);
  const double target = std::pow(2.0, 4.0 / 3.0);
  bool ok = true;
  std::ostringstream os;
  os.precision(4);
  os << "ratios";
  for (int b : {1, 2, 4}) {
    double m20 = 0, m40 = 0;
    const auto r20 = residual_curve(b, 20, grid, Route::Fredholm, kThreads);
    const auto r40 = residual_curve(b, 40, grid, Route::Fredholm, kThreads);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      m20 = std::max(m20, std::abs(r20.value[i]));
      m40 = std::max(m40, std::abs(r40.value[i]));
    }
    const double r = m20 / m40;
    ok = ok && r >= 0.7 * target && r <= 1.3 * target;
    os << " beta=" << b << ": " << r;
  }
  os << " (window [" << 0.7 * target << ", " << 1.3 * target << "])";
  return {ok, os.str()};
}

Outcome c7() {
  const long trials = kQuick ? 100000 : 1000000;
  const double bound = kQuick ? 5.2e-3 : dkw_bound(trials);
  struct Case {
    PermClass cls;
    int N;
  };
  bool ok = true;
  std::string detail;
  for (const Case& c : {Case{PermClass::Plain, 700}, Case{PermClass::InvolutionInc, 400},
                        Case{PermClass::InvolutionDec, 400}}) {
    SimConfig cfg;
    cfg.kind = sim_kind_of(c.cls);
    cfg.N = c.N;
    cfg.trials = trials;
    cfg.master_seed = 20240 + c.N + static_cast<int>(c.cls);
    const auto& exact = c.cls == PermClass::Plain ? plain_table(c.N) : involution_table(c.cls, c.N);
    const double d = sup_distance(run(cfg, kThreads), exact);
    ok = ok && d < bound;
    detail += to_string(c.cls) + " N=" + std::to_string(c.N) + " sup " + sci(d) + "; ";
  }
  return {ok, detail + "trials " + std::to_string(trials) + ", bound " + sci(bound)};
}

Outcome c8() {
  double worst = 0;
  for (double z : {1.0, 2.0, 4.0}) {
    const int n_max = static_cast<int>(std::ceil(4 * z * z)) + 40;
    for (int l = 4; l <= 12; ++l) {
      const auto counts = enumerate_plain(n_max, l);
      long double w = std::exp(-(long double)(z * z)), sum = 0;
      for (int N = 0; N <= n_max; ++N) {
        if (N > 0) w *= (long double)(z * z) / N;
        sum += w * (long double)mpq_class(counts[N], class_total(PermClass::Plain, N)).get_d();
      }
      worst = std::max(worst, std::abs((double)sum - gap_hard(2, 4 * z * z, l, Route::Fredholm)));
    }
  }
  return {worst < 1e-10, "max |Poisson sum - gap_hard| = " + sci(worst) + " (tol 1e-10)"};
}

Outcome c9() {
  auto overlay = [](const ExactCdfTable& a, const ExactCdfTable& b) {
    const auto da = delta_curve(a, -8, 6, kThreads), db = delta_curve(b, -8, 6, kThreads);
    return std::max(curve_sup_distance(da, db), curve_sup_distance(db, da));
  };
  const double d2 = overlay(plain_table(400), plain_table(700));
  const double d1 = overlay(involution_table(PermClass::InvolutionDec, 200), involution_table(PermClass::InvolutionDec, 400));
  const double d4 = overlay(involution_table(PermClass::InvolutionInc, 200), involution_table(PermClass::InvolutionInc, 400));
  return {d2 <= 0.08 && d1 <= 0.12 && d4 <= 0.12,
          "delta2 (400 vs 700) " + sci(d2) + " (0.08); delta1 (200 vs 400) " + sci(d1) + ", delta4 " + sci(d4) + " (0.12)"};
}

}  // namespace

int main() {
  std::printf("acceptance suite (%s variant, %d worker%s)\n", kQuick ? "quick" : "full", kThreads, kThreads == 1 ? "" : "s");
  criterion(1, "exact-enumeration oracle equality", 120, c1);
  criterion(2, "soft-edge route agreement", 300, c2);
  criterion(3, "Baik-Jenkins identities and correction routes", 0, c3);
  criterion(4, "published constants", 0, c4);
  criterion(5, "hat-quantity fit reproduction", 0, c5);
  criterion(6, "correction-order property", 600, c6);
  criterion(7, "Monte Carlo vs exact CDF", 1800, c7);
  criterion(8, "Poissonization identity", 0, c8);
  criterion(9, "delta-curve overlays", 0, c9);
  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
