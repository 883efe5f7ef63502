#include "lislab/verify.hpp"

#include <cmath>
#include <sstream>

#include "lislab/edgelaws.hpp"
#include "lislab/enumerate.hpp"
#include "lislab/fredholm.hpp"
#include "lislab/painleve.hpp"
#include "lislab/simulate.hpp"
#include "lislab/stats.hpp"

namespace lislab {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

// A check returns (passed, detail).
struct Check {
  const char* module;
  const char* name;
  std::function<std::pair<bool, std::string>()> run;
};

std::vector<Check> checks(int threads) {
  std::vector<Check> c;
  c.push_back({"fredholm", "Airy det converges under node doubling", [] {
                 const double a = fredholm_det_fixed(KernelSpec::airy_soft(), {-2.0}, -1, 80);
                 const double b = fredholm_det_fixed(KernelSpec::airy_soft(), {-2.0}, -1, 160);
                 return std::pair{std::abs(a - b) < 1e-12, "diff " + fmt(std::abs(a - b))};
               }});
  c.push_back({"fredholm", "Bessel det(I-K) in [0,1] and decreasing in s", [] {
                 double prev = 1, worst = 0;
                 bool ok = true;
                 for (double s : {1.0, 4.0, 9.0, 16.0}) {
                   const double d = fredholm_det(KernelSpec::bessel_hard(2), {0.0, s}, -1).value;
                   ok = ok && d > 0 && d < prev;
                   worst = std::max(worst, d);
                   prev = d;
                 }
                 return std::pair{ok, "max " + fmt(worst)};
               }});
  c.push_back({"painleve", "soft-edge chains meet the ODE residual tolerance", [] {
                 const auto& s = SoftEdge::shared().solutions();
                 using painleve::OdeProblem;
                 using painleve::ProblemKind;
                 double r = painleve::ode_residual<double>({ProblemKind::U0, 0}, s.u0);
                 r = std::max(r, painleve::ode_residual<double>({ProblemKind::Q0, 0}, s.q0));
                 return std::pair{r < 1e-8, "max residual " + fmt(r)};
               }});
  c.push_back({"painleve", "u1 identity residual on [-6, 6]", [] {
                 double r = 0;
                 for (double t = -6; t <= 6; t += 0.5)
                   r = std::max(r, std::abs(painleve::bj_u1_identity_residual(SoftEdge::shared().solutions(), t)));
                 return std::pair{r < 1e-6, "max " + fmt(r)};
               }});
  c.push_back({"edgelaws", "gap_soft Fredholm vs Painleve, beta 1/2/4", [] {
                 double d = 0;
                 for (int b : {1, 2, 4})
                   for (double t : {-4.0, 0.0, 2.0})
                     d = std::max(d, std::abs(gap_soft(b, t, Route::Fredholm) - gap_soft(b, t, Route::Painleve)));
                 return std::pair{d < 1e-8, "max diff " + fmt(d)};
               }});
  c.push_back({"edgelaws", "correction(2) by three routes", [] {
                 double d = 0;
                 for (double t : {-3.0, -1.0, 1.0}) {
                   const double f = correction(2, t, Route::Fredholm), p = correction(2, t, Route::Painleve),
                                bj = correction(2, t, Route::BaikJenkins);
                   d = std::max({d, std::abs(f - p), std::abs(f - bj), std::abs(p - bj)});
                 }
                 return std::pair{d < 1e-6, "max diff " + fmt(d)};
               }});
  c.push_back({"edgelaws", "gap_hard Fredholm vs Painleve (a = 5)", [] {
                 double d = 0;
                 for (double s : {5.0, 20.0, 60.0})
                   d = std::max(d, std::abs(gap_hard(2, s, 5, Route::Fredholm) - gap_hard(2, s, 5, Route::Painleve)));
                 return std::pair{d < 1e-8, "max diff " + fmt(d)};
               }});
  c.push_back({"enumerate", "PLAIN tables equal brute force (N <= 8) and hook length (N <= 25)", [threads] {
                 for (int N = 1; N <= 8; ++N)
                   if (build_table(PermClass::Plain, N, ExactBackend::Modular, threads).counts !=
                       oracle_bruteforce(N, PermClass::Plain).counts)
                     return std::pair{false, "brute force mismatch at N = " + std::to_string(N)};
                 std::vector<int> Ns;
                 for (int N = 1; N <= 25; ++N) Ns.push_back(N);
                 const auto T = build_tables(PermClass::Plain, Ns, ExactBackend::Modular, threads);
                 for (int N : Ns)
                   for (int l = 0; l <= N; ++l)
                     if (T.at(N).counts[l] != oracle_hook_length(N, l))
                       return std::pair{false, "hook mismatch at N = " + std::to_string(N)};
                 return std::pair{true, std::string("exact")};
               }});
  c.push_back({"enumerate", "involution tables equal brute force (N <= 10)", [threads] {
                 for (auto cls : {PermClass::InvolutionInc, PermClass::InvolutionDec})
                   for (int N = 2; N <= 10; N += 2)
                     if (build_table(cls, N, ExactBackend::Modular, threads).counts != oracle_bruteforce(N, cls).counts)
                       return std::pair{false, to_string(cls) + " mismatch at N = " + std::to_string(N)};
                 return std::pair{true, std::string("exact")};
               }});
  c.push_back({"enumerate", "rational and modular backends agree (N <= 40)", [threads] {
                 for (auto cls : {PermClass::Plain, PermClass::InvolutionInc, PermClass::InvolutionDec})
                   if (build_table(cls, 40, ExactBackend::Rational, threads).counts !=
                       build_table(cls, 40, ExactBackend::Modular, threads).counts)
                     return std::pair{false, "mismatch for " + to_string(cls)};
                 return std::pair{true, std::string("exact")};
               }});
  c.push_back({"enumerate", "Poissonized sum equals gap_hard(2, 4z^2, l), z = 1, 2", [] {
                 double worst = 0;
                 for (int l = 4; l <= 8; ++l) {
                   const auto counts = enumerate_plain(60, l);
                   for (double z : {1.0, 2.0}) {
                     long double sum = 0, w = std::exp(-(long double)(z * z));
                     for (int N = 0; N <= 60; ++N) {
                       if (N > 0) w *= (long double)(z * z) / N;
                       mpq_class p(counts[N], class_total(PermClass::Plain, N));
                       sum += w * (long double)p.get_d();
                     }
                     worst = std::max(worst, std::abs((double)sum - gap_hard(2, 4 * z * z, l)));
                   }
                 }
                 return std::pair{worst < 1e-10, "max diff " + fmt(worst)};
               }});
  c.push_back({"enumerate", "monotone in l and in N (PLAIN, N <= 60)", [threads] {
                 std::vector<int> Ns;
                 for (int N = 1; N <= 60; ++N) Ns.push_back(N);
                 const auto T = build_tables(PermClass::Plain, Ns, ExactBackend::Modular, threads);
                 for (int N = 1; N < 60; ++N)
                   for (int l = 0; l <= N; ++l)
                     if (T.at(N + 1).probability(l) > T.at(N).probability(l))
                       return std::pair{false, "Pr increases in N at N = " + std::to_string(N)};
                 return std::pair{true, std::string("exact")};
               }});
  c.push_back({"simulate", "lis/lds of (2,5,6,8,7,3,4,1) are 4 and 4", [] {
                 const std::vector<int> p{2, 5, 6, 8, 7, 3, 4, 1};
                 return std::pair{lis(p) == 4 && lds(p) == 4, std::to_string(lis(p)) + "," + std::to_string(lds(p))};
               }});
  c.push_back({"simulate", "run is identical for 1 and 3 workers", [] {
                 SimConfig cfg;
                 cfg.kind = SimKind::InvolutionDec;
                 cfg.N = 40;
                 cfg.trials = 20000;
                 cfg.master_seed = 7;
                 return std::pair{run(cfg, 1).freq == run(cfg, 3).freq, std::string("histograms")};
               }});
  c.push_back({"simulate", "empirical CDF within the 99% DKW band (PLAIN N = 60)", [threads] {
                 SimConfig cfg;
                 cfg.N = 60;
                 cfg.trials = 100000;
                 cfg.master_seed = 11;
                 const double d = sup_distance(run(cfg, threads), build_table(PermClass::Plain, 60));
                 return std::pair{d < dkw_bound(cfg.trials), "sup " + fmt(d) + " vs " + fmt(dkw_bound(cfg.trials))};
               }});
  c.push_back({"stats", "limit moments of F2", [] {
                 const auto m = limit_moments(2);
                 const bool ok = std::abs(m.m1 + 1.771086807) < 1e-6 && std::abs(m.variance() - 0.81319) < 1e-4;
                 return std::pair{ok, "m1 " + std::to_string(m.m1) + ", var " + std::to_string(m.variance())};
               }});
  c.push_back({"stats", "smoothed-limit offsets 1/2 and 1/12 (N = 1e4)", [] {
                 const auto [e, v] = smoothed_limit_moments(10000);
                 const auto h = hat_quantities(10000, e, v, limit_moments(2));
                 const bool ok = std::abs(h.mu_hat - 0.5) < 5e-3 && std::abs(h.sigma2_hat - 1.0 / 12) < 5e-3;
                 return std::pair{ok, "offsets " + std::to_string(h.mu_hat) + ", " + std::to_string(h.sigma2_hat)};
               }});
  c.push_back({"stats", "exact N = 3 mean 2, variance 1/3", [] {
                 const auto m = exact_mean_var(build_table(PermClass::Plain, 3));
                 return std::pair{m.mean == 2 && m.variance == mpq_class(1, 3),
                                  m.mean.get_str() + ", " + m.variance.get_str()};
               }});
  return c;
}

}  // namespace

std::vector<CheckResult> run_verify_suite(int threads, const std::function<void(const CheckResult&)>& progress) {
  std::vector<CheckResult> out;
  for (const auto& ck : checks(threads)) {
    CheckResult r{ck.module, ck.name, false, ""};
    try {
      auto [ok, detail] = ck.run();
      r.passed = ok;
      r.detail = detail;
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    if (progress) progress(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace lislab
