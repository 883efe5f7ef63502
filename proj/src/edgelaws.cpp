#include "lislab/edgelaws.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "lislab/errors.hpp"
#include "lislab/parallel.hpp"
#include "lislab/quadrature.hpp"
#include "lislab/specfun.hpp"

namespace lislab {

namespace {
const double kCbrt2 = std::cbrt(2.0);
const double kCbrt4 = std::cbrt(4.0);
}  // namespace

std::string to_string(Route r) {
  switch (r) {
    case Route::Fredholm: return "FREDHOLM";
    case Route::Painleve: return "PAINLEVE";
    case Route::BaikJenkins: return "BAIK_JENKINS";
  }
  return "?";
}

Route parse_route(const std::string& s) {
  std::string u;
  for (char c : s) u += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (u == "FREDHOLM") return Route::Fredholm;
  if (u == "PAINLEVE") return Route::Painleve;
  if (u == "BAIK_JENKINS" || u == "BJ") return Route::BaikJenkins;
  throw ArgumentError("unknown route '" + s + "'");
}

void check_beta(int beta) {
  if (beta != 1 && beta != 2 && beta != 4) throw ArgumentError("beta must be 1, 2 or 4");
}

double z_of(double lt, double X) {
  if (!std::isfinite(lt) || !std::isfinite(X)) throw DomainError("z_of: non-finite argument");
  if (lt < 4) throw DomainError("z_of: l_tilde must be >= 4");
  const double c = std::cbrt(lt / 2);
  double z = 0.5 * (lt - X * c + X * X / 6 / c);
  if (!(z > 0)) z = lt / 2;
  auto f = [&](double zz) { return 2 * zz + X * std::cbrt(zz) - lt; };
  double fz = f(z);
  const double tol = 1e-12 * lt;
  for (int it = 0; it < 100; ++it) {
    if (fz == 0) return z;
    const double d = 2 + X / (3 * std::cbrt(z * z));
    if (!(d > 0)) throw NumericalError("z_of: derivative vanishes; no root near l/2");
    double step = fz / d, lam = 1;
    double zn = z - step, fn;
    while (!(zn > 0) || std::abs(fn = f(zn)) >= std::abs(fz)) {
      lam *= 0.5;
      if (lam < 1e-12) {
        // No further decrease: converged to rounding level.
        if (std::abs(fz) < tol) return z;
        throw NumericalError("z_of: Newton did not converge");
      }
      zn = z - lam * step;
    }
    z = zn;
    fz = fn;
  }
  if (std::abs(fz) < tol) return z;
  throw NumericalError("z_of: Newton did not converge");
}

double Q(double lt, double X) {
  const double z = z_of(lt, X);
  return 4 * z * z;
}

ScalingPoint ScalingPoint::from_z(double z, double t) {
  if (!(z > 0)) throw DomainError("ScalingPoint: z must be > 0");
  ScalingPoint p;
  p.z = z;
  p.t = t;
  const double c = std::cbrt(z);
  p.l = std::floor(2 * z + t * c);
  p.t_tilde = (p.l - 2 * z) / c;
  // N = z^2: sqrt(N) = z, N^{1/6} = z^{1/3}.
  p.t_star = p.t_tilde;
  return p;
}

// ---- SoftEdge ----

SoftEdge::SoftEdge(painleve::SoftEdgeSolutions<double> sol) : sol_(std::move(sol)) {}

const SoftEdge& SoftEdge::shared() {
  static const SoftEdge inst(painleve::solve_soft<double>());
  return inst;
}

void SoftEdge::check(double t) const {
  if (!std::isfinite(t) || t < lo()) {
    std::ostringstream os;
    os << "soft edge: t = " << t << " below the solved domain [" << lo() << ", inf)";
    throw DomainError(os.str());
  }
}

namespace {
const double kU1c = 1.0 / (kCbrt2 * 30.0);
double tail_u0(double r) {
  const double ai = specfun::airy_ai(r), aip = specfun::airy_ai_prime(r);
  return -((2.0 / 3) * r * aip * aip - (2.0 / 3) * r * r * ai * ai + (1.0 / 3) * ai * aip);
}
double tail_u1(double r) {
  const double ai = specfun::airy_ai(r), aip = specfun::airy_ai_prime(r);
  return -kU1c * ((r * r * r + 6) * ai * ai - r * r * aip * aip);
}
double tail_q1(double r) {
  const double ai = specfun::airy_ai(r), aip = specfun::airy_ai_prime(r);
  return (r * r / 3 * ai + 4 * aip) / (10.0 * kCbrt2);
}
double tail_q0(double r) {
  return integrate_composite([](double x) { return specfun::airy_ai(x); }, r, r + 30.0, 6, 20);
}
}  // namespace

double SoftEdge::u0(double t) const {
  check(t);
  if (t <= hi()) return sol_.u0.eval(t);
  const double ai = specfun::airy_ai(t), aip = specfun::airy_ai_prime(t);
  return aip * aip - t * ai * ai;
}
double SoftEdge::u0_prime(double t) const {
  check(t);
  if (t <= hi()) return sol_.u0.eval_deriv(t, 1);
  const double ai = specfun::airy_ai(t);
  return -ai * ai;
}
double SoftEdge::u1(double t) const {
  check(t);
  if (t <= hi()) return sol_.u1.eval(t);
  const double ai = specfun::airy_ai(t), aip = specfun::airy_ai_prime(t);
  return kU1c * (12 * ai * aip + 3 * t * t * ai * ai - 2 * t * aip * aip);
}
double SoftEdge::q0(double t) const {
  check(t);
  return t <= hi() ? sol_.q0.eval(t) : specfun::airy_ai(t);
}
double SoftEdge::q0_prime(double t) const {
  check(t);
  return t <= hi() ? sol_.q0.eval_deriv(t, 1) : specfun::airy_ai_prime(t);
}
double SoftEdge::q1(double t) const {
  check(t);
  if (t <= hi()) return sol_.q1.eval(t);
  return -kU1c * (14 * t * specfun::airy_ai(t) + t * t * specfun::airy_ai_prime(t));
}
double SoftEdge::int_u0(double t) const {
  check(t);
  return t < hi() ? sol_.u0.integral(t, hi()) + tail_u0(hi()) : tail_u0(t);
}
double SoftEdge::int_u1(double t) const {
  check(t);
  return t < hi() ? sol_.u1.integral(t, hi()) + tail_u1(hi()) : tail_u1(t);
}
double SoftEdge::int_q0(double t) const {
  check(t);
  return t < hi() ? sol_.q0.integral(t, hi()) + tail_q0(hi()) : tail_q0(t);
}
double SoftEdge::int_q1(double t) const {
  check(t);
  return t < hi() ? sol_.q1.integral(t, hi()) + tail_q1(hi()) : tail_q1(t);
}

// ---- HardEdge ----

HardEdge::HardEdge(int a, double s_max) : a_(a), s_max_(s_max) {
  if (a < 0 || a > painleve::kHardMaxOrder) throw DomainError("HardEdge: order outside [0, 40]");
  if (!(s_max > 0)) throw DomainError("HardEdge: s_max must be > 0");
  v_ = painleve::solve<double>({painleve::ProblemKind::VSigmaPIII, a}, 0.0, s_max);
  p_ = painleve::solve<double>({painleve::ProblemKind::PHard, a}, 0.0, s_max);
  const QuadratureRule g = gauss_legendre(10, -1, 1);
  v_prefix_.assign(1, 0.0);
  const auto& segs = v_.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& sg = segs[i];
    double I = 0;
    if (i == 0) {
      // Series piece at the origin: v/r is a polynomial.
      const double x = sg.upper();
      double xp = x;
      for (std::size_t j = 1; j < sg.coeffs.size(); ++j, xp *= x) I += sg.coeffs[j] * xp / j;
    } else {
      const double lo = sg.lower(), hi = sg.upper(), m = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
      for (int k = 0; k < g.size(); ++k) {
        const double r = m + h * g.nodes[k];
        I += g.weights[k] * sg.eval(r) / r;
      }
      I *= h;
    }
    v_prefix_.push_back(v_prefix_.back() + I);
  }
}

double HardEdge::int_v_over_r(double s) const {
  if (!(s >= 0) || s > s_max_ * (1 + 1e-12)) throw DomainError("HardEdge: s outside (0, s_max]");
  s = std::min(s, s_max_);
  if (s == 0) return 0;
  const auto& segs = v_.segments();
  std::size_t i = 0;
  while (i + 1 < segs.size() && segs[i + 1].lower() <= s) ++i;
  const auto& sg = segs[i];
  double I = 0;
  if (i == 0) {
    double xp = s;
    for (std::size_t j = 1; j < sg.coeffs.size(); ++j, xp *= s) I += sg.coeffs[j] * xp / j;
  } else if (s > sg.lower()) {
    I = integrate_gl([&](double r) { return sg.eval(r) / r; }, sg.lower(), s, 10);
  }
  return v_prefix_[i] + I;
}

double HardEdge::int_p_over_sqrt_r(double s) const {
  if (!(s >= 0) || s > s_max_ * (1 + 1e-12)) throw DomainError("HardEdge: s outside (0, s_max]");
  return 2.0 * p_.integral_var(0.0, std::sqrt(std::min(s, s_max_)));
}

double HardEdge::gap(int beta, double s) const {
  check_beta(beta);
  const double iv = int_v_over_r(s);
  if (beta == 2) return std::exp(iv);
  const double ip = int_p_over_sqrt_r(s);
  if (beta == 1) return std::exp(0.5 * iv - 0.25 * ip);
  return std::exp(0.5 * iv) * std::cosh(0.25 * ip);
}

// ---- gap probabilities ----

double gap_soft(int beta, double t, Route route) {
  check_beta(beta);
  if (!std::isfinite(t) || t < -10 || t > 10) throw DomainError("gap_soft: t must lie in [-10, 10]");
  if (route == Route::BaikJenkins) throw ArgumentError("gap_soft: BAIK_JENKINS route applies to corrections only");
  if (route == Route::Fredholm) {
    if (beta == 2) return fredholm_det(KernelSpec::airy_soft(), {t}, -1).value;
    const KernelSpec v = KernelSpec::v_soft(t);
    const double dm = fredholm_det(v, {0.0}, -1).value;
    if (beta == 1) return dm;
    return 0.5 * (dm + fredholm_det(v, {0.0}, +1).value);
  }
  const SoftEdge& se = SoftEdge::shared();
  const double e2 = std::exp(-se.int_u0(t));
  if (beta == 2) return e2;
  const double iq = se.int_q0(t);
  if (beta == 1) return std::sqrt(e2) * std::exp(-0.5 * iq);
  return std::sqrt(e2) * std::cosh(0.5 * iq);
}

double gap_hard(int beta, double s, double a, Route route) {
  check_beta(beta);
  if (!std::isfinite(s) || s < 0) throw DomainError("gap_hard: s must be >= 0");
  if (!std::isfinite(a) || a < 0) throw DomainError("gap_hard: order must be >= 0");
  if (route == Route::BaikJenkins) throw ArgumentError("gap_hard: BAIK_JENKINS route applies to corrections only");
  if (s == 0) return 1.0;
  if (route == Route::Painleve) {
    if (a != std::floor(a)) throw ArgumentError("gap_hard: PAINLEVE route needs an integer order");
    const int ai = static_cast<int>(a);
    if (ai > painleve::kHardMaxOrder || s > painleve::hard_window(ai)) {
      std::ostringstream os;
      os << "gap_hard: (s = " << s << ", a = " << a << ") outside the Painleve window a <= "
         << painleve::kHardMaxOrder << ", s <= " << (ai > painleve::kHardMaxOrder ? 0.0 : painleve::hard_window(ai));
      throw DomainError(os.str());
    }
    return HardEdge(ai, s).gap(beta, s);
  }
  if (beta == 2) return fredholm_det(KernelSpec::bessel_hard(a), {0.0, s}, -1).value;
  const KernelSpec v = KernelSpec::v_hard(a, s);
  const double dm = fredholm_det(v, {0.0, 1.0}, -1).value;
  if (beta == 1) return dm;
  return 0.5 * (dm + fredholm_det(v, {0.0, 1.0}, +1).value);
}

// ---- corrections ----

double correction(int beta, double t, Route route) {
  check_beta(beta);
  if (!std::isfinite(t) || t < -8 || t > 6) throw DomainError("correction: t must lie in [-8, 6]");
  if (route == Route::BaikJenkins && beta == 4)
    throw ArgumentError("correction: no BAIK_JENKINS form exists for beta = 4");
  if (route == Route::Fredholm) {
    if (beta == 2) {
      const auto r = det_and_trace(KernelSpec::airy_soft(), KernelSpec::l_corr(), {t}, -1);
      return -r.det.value * r.trace.value;
    }
    const auto m = det_and_trace(KernelSpec::v_soft(t), KernelSpec::m_corr(t), {0.0}, -1);
    const double fm = m.det.value * m.trace.value;
    if (beta == 1) return -fm;
    const auto p = det_and_trace(KernelSpec::v_soft(t), KernelSpec::m_corr(t), {0.0}, +1);
    return 0.5 * (p.det.value * p.trace.value - fm);
  }
  const SoftEdge& se = SoftEdge::shared();
  const double iu0 = se.int_u0(t), u0 = se.u0(t);
  if (route == Route::Painleve) {
    if (beta == 2) return -std::exp(-iu0) * se.int_u1(t);
    const double iq0 = se.int_q0(t);
    if (beta == 1) return -0.5 * std::exp(-0.5 * (iu0 + iq0)) * (se.int_u1(t) + se.int_q1(t));
    return 0.5 * std::exp(-0.5 * iu0) *
           (std::sinh(0.5 * iq0) * se.int_q1(t) - std::cosh(0.5 * iq0) * se.int_u1(t));
  }
  // Baik-Jenkins forms: derivatives of the limit law.
  const double k = kCbrt4 / 10.0;
  if (beta == 2) return -k * std::exp(-iu0) * (se.u0_prime(t) + u0 * u0 + t * t / 6 * u0);
  const double q0 = se.q0(t), iq0 = se.int_q0(t);
  // G = E1 = exp(-1/2 int_t^inf ((r - t) q0^2 + q0)); int (r - t) q0^2 = int_t^inf u0.
  const double G = std::exp(-0.5 * (iu0 + iq0));
  const double g1 = 0.5 * (u0 + q0) * G;
  const double g2 = (0.5 * (se.u0_prime(t) + se.q0_prime(t)) + 0.25 * (u0 + q0) * (u0 + q0)) * G;
  return -k * (2 * g2 + t * t / 6 * g1);
}

double delta_hard(int beta, int l, double t, Route route) {
  check_beta(beta);
  if (l < 6) throw DomainError("delta_hard: l must be >= 6");
  const double s = Q(l, t);
  const double eh = gap_hard(beta, s, l, route);
  const double es = gap_soft(beta, t, route);
  return std::pow(l, 2.0 / 3.0) * (eh - es);
}

// ---- curves ----

void CorrectionCurve::write_csv(std::ostream& os) const {
  os << "t,value,route,beta,l\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < t.size(); ++i)
    os << t[i] << ',' << value[i] << ',' << to_string(route) << ',' << beta << ',' << l << '\n';
}

namespace {

// Painleve sweeps at the hard edge reuse one solution per order when possible.
double hard_gap_for_curve(int beta, double s, int l, Route route, const HardEdge* he) {
  if (route == Route::Painleve && he && s <= he->s_max()) return he->gap(beta, s);
  return gap_hard(beta, s, l, route == Route::BaikJenkins ? Route::Fredholm : route);
}

std::unique_ptr<HardEdge> hard_for_grid(int l, const std::vector<double>& grid, Route route) {
  if (route != Route::Painleve || grid.empty() || l > painleve::kHardMaxOrder) return nullptr;
  double smax = 0;
  for (double t : grid) smax = std::max(smax, Q(l, t));
  if (smax > painleve::hard_window(l))
    throw DomainError("delta_hard: grid reaches s = " + std::to_string(smax) +
                      " beyond the Painleve hard-edge window; use the FREDHOLM route");
  return std::make_unique<HardEdge>(l, smax);
}

}  // namespace

CorrectionCurve correction_curve(int beta, const std::vector<double>& grid, Route route, int threads) {
  CorrectionCurve c{"correction", beta, 0, route, grid, std::vector<double>(grid.size())};
  if (route != Route::Fredholm) (void)SoftEdge::shared();
  parallel_for(static_cast<int>(grid.size()), threads, [&](int i) { c.value[i] = correction(beta, grid[i], route); });
  return c;
}

CorrectionCurve delta_hard_curve(int beta, int l, const std::vector<double>& grid, Route route, int threads) {
  check_beta(beta);
  if (l < 6) throw DomainError("delta_hard: l must be >= 6");
  if (route == Route::BaikJenkins) throw ArgumentError("delta_hard: BAIK_JENKINS applies to corrections only");
  CorrectionCurve c{"delta_hard", beta, l, route, grid, std::vector<double>(grid.size())};
  const auto he = hard_for_grid(l, grid, route);
  if (route == Route::Painleve) (void)SoftEdge::shared();
  parallel_for(static_cast<int>(grid.size()), threads, [&](int i) {
    const double t = grid[i];
    c.value[i] = std::pow(l, 2.0 / 3.0) * (hard_gap_for_curve(beta, Q(l, t), l, route, he.get()) - gap_soft(beta, t, route));
  });
  return c;
}

CorrectionCurve residual_curve(int beta, int l, const std::vector<double>& grid, Route route, int threads) {
  check_beta(beta);
  if (l < 6) throw DomainError("residual_curve: l must be >= 6");
  if (route == Route::BaikJenkins && beta == 4)
    throw ArgumentError("correction: no BAIK_JENKINS form exists for beta = 4");
  const Route gap_route = route == Route::BaikJenkins ? Route::Painleve : route;
  CorrectionCurve c{"residual", beta, l, route, grid, std::vector<double>(grid.size())};
  const auto he = hard_for_grid(l, grid, gap_route);
  if (route != Route::Fredholm) (void)SoftEdge::shared();
  const double w = std::pow(l, -2.0 / 3.0);
  parallel_for(static_cast<int>(grid.size()), threads, [&](int i) {
    const double t = grid[i];
    c.value[i] = hard_gap_for_curve(beta, Q(l, t), l, gap_route, he.get()) - gap_soft(beta, t, gap_route) -
                 w * correction(beta, t, route);
  });
  return c;
}

}  // namespace lislab
