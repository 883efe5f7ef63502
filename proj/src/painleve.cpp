#include "lislab/painleve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <regex>
#include <sstream>

#include "lislab/errors.hpp"
#include "lislab/series.hpp"
#include "lislab/specfun.hpp"

namespace lislab::painleve {

std::string OdeProblem::id() const {
  switch (kind) {
    case ProblemKind::U0: return "U0";
    case ProblemKind::U1: return "U1";
    case ProblemKind::Q0: return "Q0";
    case ProblemKind::Q1: return "Q1";
    case ProblemKind::VSigmaPIII: return "V_SIGMA_PIII(" + std::to_string(a) + ")";
    case ProblemKind::PHard: return "P_HARD(" + std::to_string(a) + ")";
  }
  return "?";
}

OdeProblem OdeProblem::parse(const std::string& s) {
  if (s == "U0") return {ProblemKind::U0};
  if (s == "U1") return {ProblemKind::U1};
  if (s == "Q0") return {ProblemKind::Q0};
  if (s == "Q1") return {ProblemKind::Q1};
  static const std::regex re(R"((V_SIGMA_PIII|P_HARD)\((\d+)\))");
  std::smatch m;
  if (std::regex_match(s, m, re)) {
    OdeProblem p{m[1] == "P_HARD" ? ProblemKind::PHard : ProblemKind::VSigmaPIII, std::stoi(m[2])};
    p.validate();
    return p;
  }
  throw ArgumentError("unknown ODE problem '" + s + "'");
}

void OdeProblem::validate() const {
  if (a < 0) throw DomainError("OdeProblem: a must be >= 0");
  if (!is_soft() && a > kHardMaxOrder)
    throw DomainError("OdeProblem: hard-edge order above " + std::to_string(kHardMaxOrder) +
                      " is outside the supported window");
}

Recipe default_recipe(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::U0:
    case ProblemKind::U1: return {600, 14};
    case ProblemKind::Q0:
    case ProblemKind::Q1: return {1000, 14};
    case ProblemKind::VSigmaPIII: return {15446, 10};
    case ProblemKind::PHard: return {5400, 6};
  }
  return {600, 14};
}

void SolveOptions::validate() const {
  if (degree != 0 && degree < 4) throw ArgumentError("SolveOptions: degree must be >= 4");
  if (segments < 0) throw ArgumentError("SolveOptions: segments must be >= 0");
  if (!(residual_tol > 0)) throw ArgumentError("SolveOptions: residual_tol must be positive");
  if (residual_points < 2) throw ArgumentError("SolveOptions: residual_points must be >= 2");
  if (series_terms < 8) throw ArgumentError("SolveOptions: series_terms must be >= 8");
}

double hard_window(int a) { return std::max(16.0, 4.0 * a * a); }

double radius_estimate(const std::vector<double>& c) {
  int k0 = 0;
  while (k0 < static_cast<int>(c.size()) && c[k0] == 0) ++k0;
  if (k0 >= static_cast<int>(c.size())) return std::numeric_limits<double>::infinity();
  double rho = std::numeric_limits<double>::infinity();
  const int last = static_cast<int>(c.size()) - 1;
  for (int k = std::max(k0 + 1, last - 9); k <= last; ++k)
    if (c[k] != 0) rho = std::min(rho, std::pow(std::abs(c[k0]) / std::abs(c[k]), 1.0 / (k - k0)));
  return rho;
}

namespace {

template <class Real>
using Vec = std::vector<Real>;

template <class Real>
Real at(const Vec<Real>& v, int k) {
  return k >= 0 && k < static_cast<int>(v.size()) ? v[k] : Real(0);
}

// [r X]_k and [r^2 X]_k for r = c + h.
template <class Real>
Real r1(const Vec<Real>& x, Real c, int k) {
  return c * at(x, k) + at(x, k - 1);
}
template <class Real>
Real r2(const Vec<Real>& x, Real c, int k) {
  return c * c * at(x, k) + Real(2) * c * at(x, k - 1) + at(x, k - 2);
}

template <class Real>
Vec<Real> deriv(const Vec<Real>& x) {
  Vec<Real> d(x.size(), Real(0));
  for (std::size_t k = 0; k + 1 < x.size(); ++k) d[k] = Real(k + 1) * x[k + 1];
  return d;
}

template <class Real>
Vec<Real> mul(const Vec<Real>& a, const Vec<Real>& b) {
  Vec<Real> r(a.size(), Real(0));
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = series::cauchy(a, b, static_cast<int>(k));
  return r;
}

const long double kCbrt2 = std::cbrt(2.0L);

// u0 Taylor coefficients about c from (u0, u0', u0'').
template <class Real>
Vec<Real> u0_taylor(Real c, Real y0, Real y1, Real y2, int D) {
  Vec<Real> u(D + 1, Real(0)), ud(D + 1, Real(0)), udsq(D + 1, Real(0));
  u[0] = y0;
  u[1] = y1;
  u[2] = y2 / Real(2);
  for (int k = 0; k + 3 <= D; ++k) {
    ud[k] = Real(k + 1) * u[k + 1];
    ud[k + 1] = Real(k + 2) * u[k + 2];
    udsq[k] = series::cauchy(ud, ud, k);
    const Real u3 = Real(-2) * u[k] + Real(4) * r1(ud, c, k) - Real(6) * udsq[k];
    u[k + 3] = u3 / (Real(k + 1) * Real(k + 2) * Real(k + 3));
  }
  return u;
}

// u1 Taylor coefficients about c from (u1, u1') given the u0 coefficients.
template <class Real>
Vec<Real> u1_taylor(Real c, const Vec<Real>& u, Real w0, Real w1, int D) {
  const Vec<Real> ud = deriv(u), udd = deriv(ud);
  const Vec<Real> udsq = mul(ud, ud), uud = mul(u, ud), usq = mul(u, u);
  const Real kappa = Real(1) / (Real(3) * Real(kCbrt2));
  Vec<Real> A2 = udd, B2(D + 1), C2(D + 1), G(D + 1), D2(D + 1);
  for (int k = 0; k <= D; ++k) {
    B2[k] = Real(2) * u[k] - Real(4) * r1(ud, c, k) + Real(6) * udsq[k];
    C2[k] = Real(2) * ud[k];
    G[k] = r2(ud, c, k) + Real(6) * uud[k] - Real(2) * r1(u, c, k) + Real(3) * A2[k];
  }
  for (int k = 0; k <= D; ++k) D2[k] = -kappa * (series::cauchy(ud, G, k) - Real(2) * usq[k]);
  Vec<Real> w(D + 1, Real(0)), wd(D + 1, Real(0)), W2(D + 1, Real(0));
  w[0] = w0;
  w[1] = w1;
  for (int k = 0; k + 2 <= D; ++k) {
    wd[k] = Real(k + 1) * w[k + 1];
    Real s = D2[k] - series::cauchy(B2, wd, k) - series::cauchy(C2, w, k);
    for (int j = 1; j <= k; ++j) s -= A2[j] * W2[k - j];
    W2[k] = s / A2[0];
    w[k + 2] = W2[k] / (Real(k + 1) * Real(k + 2));
  }
  return w;
}

template <class Real>
Vec<Real> q0_taylor(Real c, Real y0, Real y1, int D) {
  Vec<Real> q(D + 1, Real(0)), sq(D + 1, Real(0));
  q[0] = y0;
  q[1] = y1;
  for (int k = 0; k + 2 <= D; ++k) {
    sq[k] = series::cauchy(q, q, k);
    const Real cube = series::cauchy(sq, q, k);
    q[k + 2] = (r1(q, c, k) + Real(2) * cube) / (Real(k + 1) * Real(k + 2));
  }
  return q;
}

template <class Real>
Vec<Real> q1_taylor(Real c, const Vec<Real>& q, Real w0, Real w1, int D) {
  const Vec<Real> qd = deriv(q), sq = mul(q, q), cube = mul(sq, q), quint = mul(cube, sq);
  const Vec<Real> qqdsq = mul(q, mul(qd, qd));
  Vec<Real> C1(D + 1), D1(D + 1);
  const Real inv = Real(1) / Real(kCbrt2);
  for (int k = 0; k <= D; ++k) {
    const Real rk = k == 0 ? c : (k == 1 ? Real(1) : Real(0));
    C1[k] = -rk / Real(2) - Real(3) * sq[k];
    D1[k] = inv * (-r2(q, c, k) / Real(12) + r1(cube, c, k) + quint[k] - qd[k] / Real(2) - qqdsq[k]);
  }
  Vec<Real> w(D + 1, Real(0));
  w[0] = w0;
  w[1] = w1;
  for (int k = 0; k + 2 <= D; ++k) {
    const Real w2 = Real(2) * (D1[k] - series::cauchy(C1, w, k));
    w[k + 2] = w2 / (Real(k + 1) * Real(k + 2));
  }
  return w;
}

template <class Real>
Vec<Real> v_taylor(Real c, int a, Real y0, Real y1, Real y2, int D) {
  Vec<Real> v(D + 1, Real(0)), vd(D + 1, Real(0)), vdd(D + 1, Real(0)), vvd(D + 1, Real(0)),
      vdsq(D + 1, Real(0)), V3(D + 1, Real(0));
  v[0] = y0;
  v[1] = y1;
  v[2] = y2 / Real(2);
  const Real a2 = Real(a) * Real(a);
  for (int k = 0; k + 3 <= D; ++k) {
    vd[k] = Real(k + 1) * v[k + 1];
    vd[k + 1] = Real(k + 2) * v[k + 2];
    vdd[k] = Real(k + 1) * Real(k + 2) * v[k + 2];
    vvd[k] = series::cauchy(v, vd, k);
    vdsq[k] = series::cauchy(vd, vd, k);
    const Real R = -r1(vdd, c, k) + a2 * vd[k] - r1(vd, c, k) + v[k] / Real(2) + Real(4) * vvd[k] -
                   Real(6) * r1(vdsq, c, k);
    V3[k] = (R - Real(2) * c * at(V3, k - 1) - at(V3, k - 2)) / (c * c);
    v[k + 3] = V3[k] / (Real(k + 1) * Real(k + 2) * Real(k + 3));
  }
  return v;
}

// PIII' in s: (1-p^2)(s^2 p'' + s p') + s^2 p p'^2 + (s^2 - a^2) p + s^2 p^3 (p^2 - 2) = 0.
template <class Real>
Vec<Real> p_taylor(Real c, int a, Real y0, Real y1, int D) {
  Vec<Real> p(D + 1, Real(0)), pd(D + 1, Real(0)), sq(D + 1, Real(0)), cube(D + 1, Real(0)),
      quint(D + 1, Real(0)), pdsq(D + 1, Real(0)), ppdsq(D + 1, Real(0)), W(D + 1, Real(0)),
      P2(D + 1, Real(0)), Y(D + 1, Real(0));
  p[0] = y0;
  p[1] = y1;
  const Real a2 = Real(a) * Real(a);
  for (int k = 0; k + 2 <= D; ++k) {
    pd[k] = Real(k + 1) * p[k + 1];
    sq[k] = series::cauchy(p, p, k);
    cube[k] = series::cauchy(sq, p, k);
    quint[k] = series::cauchy(cube, sq, k);
    pdsq[k] = series::cauchy(pd, pd, k);
    ppdsq[k] = series::cauchy(p, pdsq, k);
    W[k] = (k == 0 ? Real(1) : Real(0)) - sq[k];
    Vec<Real> nl(k + 1);
    for (int j = 0; j <= k; ++j) nl[j] = quint[j] - Real(2) * cube[j];
    Real rest = r2(ppdsq, c, k) + r2(p, c, k) - a2 * p[k] + r2(nl, c, k);
    for (int j = 1; j <= k; ++j) rest += W[j] * Y[k - j];
    Y[k] = -rest / W[0];
    P2[k] = (Y[k] - Real(2) * c * at(P2, k - 1) - at(P2, k - 2) - c * pd[k] - at(pd, k - 1)) / (c * c);
    p[k + 2] = P2[k] / (Real(k + 1) * Real(k + 2));
  }
  return p;
}

template <class Real>
bool all_finite(const Vec<Real>& v) {
  for (const auto& x : v)
    if (!std::isfinite(static_cast<double>(x))) return false;
  return true;
}

template <class Real>
void require_finite(const Vec<Real>& v, const OdeProblem& p, Real c) {
  if (!all_finite(v)) {
    std::ostringstream os;
    os << "solve(" << p.id() << "): solution blew up near r = " << static_cast<double>(c);
    throw NumericalError(os.str());
  }
}

struct Plan {
  int segments;
  int degree;
};

Plan plan_for(const OdeProblem& p, const SolveOptions& o) {
  const Recipe r = default_recipe(p.kind);
  return {o.segments > 0 ? o.segments : r.segments, o.degree > 0 ? o.degree : r.degree};
}

template <class Real>
struct SoftPair {
  Vec<TaylorSegment<Real>> first, second;
};

// Joint right-to-left march of (u0, u1) or (q0, q1).
template <class Real>
SoftPair<Real> march_soft(bool u_family, Real lo, Real hi, Plan plan) {
  const Real h = -(hi - lo) / Real(plan.segments);
  if (std::abs(static_cast<double>(h)) < 1e-8) throw NumericalError("solve: step underflow (stiffness)");
  const Real ai = specfun::airy_ai(hi), aip = specfun::airy_ai_prime(hi);
  const Real r = hi;
  const Real cu = Real(1) / (Real(kCbrt2) * Real(30));
  SoftPair<Real> out;
  Real c = hi;
  const int D = plan.degree;
  if (u_family) {
    Real y0 = aip * aip - r * ai * ai, y1 = -ai * ai, y2 = Real(-2) * ai * aip;
    Real w0 = cu * (Real(12) * ai * aip + Real(3) * r * r * ai * ai - Real(2) * r * aip * aip);
    Real w1 = cu * (Real(12) * (aip * aip + r * ai * ai) + Real(6) * r * ai * ai + Real(6) * r * r * ai * aip -
                    Real(2) * aip * aip - Real(4) * r * r * ai * aip);
    for (int i = 0; i < plan.segments; ++i) {
      const Vec<Real> u = u0_taylor(c, y0, y1, y2, D);
      const Vec<Real> w = u1_taylor(c, u, w0, w1, D);
      require_finite(u, OdeProblem{ProblemKind::U0}, c);
      require_finite(w, OdeProblem{ProblemKind::U1}, c);
      TaylorSegment<Real> su{c, h, u}, sw{c, h, w};
      const Real e = c + h;
      y0 = su.eval(e);
      y1 = su.eval_deriv(e, 1);
      y2 = su.eval_deriv(e, 2);
      w0 = sw.eval(e);
      w1 = sw.eval_deriv(e, 1);
      out.first.push_back(std::move(su));
      out.second.push_back(std::move(sw));
      c = i + 1 == plan.segments ? lo : e;
    }
  } else {
    Real y0 = ai, y1 = aip;
    Real w0 = -cu * (Real(14) * r * ai + r * r * aip);
    Real w1 = -cu * (Real(14) * ai + Real(16) * r * aip + r * r * r * ai);
    for (int i = 0; i < plan.segments; ++i) {
      const Vec<Real> q = q0_taylor(c, y0, y1, D);
      const Vec<Real> w = q1_taylor(c, q, w0, w1, D);
      require_finite(q, OdeProblem{ProblemKind::Q0}, c);
      require_finite(w, OdeProblem{ProblemKind::Q1}, c);
      TaylorSegment<Real> sq{c, h, q}, sw{c, h, w};
      const Real e = c + h;
      y0 = sq.eval(e);
      y1 = sq.eval_deriv(e, 1);
      w0 = sw.eval(e);
      w1 = sw.eval_deriv(e, 1);
      out.first.push_back(std::move(sq));
      out.second.push_back(std::move(sw));
      c = e;
    }
  }
  // Close the last segment exactly at lo.
  auto fix = [&](Vec<TaylorSegment<Real>>& v) { v.back().step = lo - v.back().center; };
  fix(out.first);
  fix(out.second);
  return out;
}

// Series piece at the origin plus outward march, in the series variable x.
template <class Real>
Vec<TaylorSegment<Real>> march_hard(const OdeProblem& p, Real x_hi, Plan plan, const SolveOptions& o) {
  const bool is_v = p.kind == ProblemKind::VSigmaPIII;
  const int a = p.a;
  Vec<TaylorSegment<Real>> segs;
  if (!is_v && a == 0) {
    segs.push_back({Real(0), x_hi, Vec<Real>{Real(1), Real(0), Real(0)}});
    return segs;
  }
  const int M = o.series_terms;
  const Vec<Real> coef = is_v ? series::v_coefficients<Real>(a, M) : series::p_coefficients<Real>(a, M);
  const int shift = is_v ? a + 1 : a;
  Vec<Real> poly(shift + M + 1, Real(0));
  for (int k = 0; k <= M; ++k) poly[shift + k] = coef[k];
  Real xs;
  if (std::isnan(o.seed_point)) {
    std::vector<double> cd(poly.begin(), poly.end());
    const double rho = radius_estimate(cd);
    xs = Real(std::min(0.45 * rho, static_cast<double>(x_hi)));
  } else {
    if (!(o.seed_point > 0)) throw DomainError("solve: seed_point must be > 0");
    xs = is_v ? Real(o.seed_point) : Real(std::sqrt(o.seed_point));
    xs = std::min(xs, x_hi);
  }
  segs.push_back({Real(0), xs, poly});
  if (!(xs < x_hi)) return segs;
  // Recipe counts are minimums; the step is also capped (0.1 in r, 0.01 in s).
  const double h_cap = is_v ? 0.1 : 0.01;
  plan.segments = std::max<int>(plan.segments, static_cast<int>(std::ceil(static_cast<double>(x_hi - xs) / h_cap)));
  const Real h = (x_hi - xs) / Real(plan.segments);
  if (static_cast<double>(h) < 1e-8) throw NumericalError("solve: step underflow (stiffness)");
  const auto& s0 = segs.front();
  Real y0 = s0.eval(xs), y1 = s0.eval_deriv(xs, 1), y2 = s0.eval_deriv(xs, 2);
  Real c = xs;
  for (int i = 0; i < plan.segments; ++i) {
    Vec<Real> t = is_v ? v_taylor(c, a, y0, y1, y2, plan.degree) : p_taylor(c, a, y0, y1, plan.degree);
    require_finite(t, p, c);
    const Real step = i + 1 == plan.segments ? Real(x_hi - c) : h;
    TaylorSegment<Real> seg{c, step, std::move(t)};
    const Real e = c + step;
    y0 = seg.eval(e);
    y1 = seg.eval_deriv(e, 1);
    y2 = seg.eval_deriv(e, 2);
    segs.push_back(std::move(seg));
    c = e;
  }
  return segs;
}

struct Terms {
  std::vector<double> t;
  double residual() const {
    double s = 0, m = 0;
    for (double x : t) {
      s += x;
      m += std::abs(x);
    }
    return m > 0 ? std::abs(s) / m : 0.0;
  }
};

template <class Real>
Terms terms_at(const OdeProblem& p, const PiecewiseTaylor<Real>& f, const PiecewiseTaylor<Real>* g, double r) {
  const double cb = std::cbrt(2.0);
  auto d = [&](const PiecewiseTaylor<Real>& x, int k) { return static_cast<double>(x.eval_deriv(Real(r), k)); };
  switch (p.kind) {
    case ProblemKind::U0: {
      const double u = d(f, 0), u1 = d(f, 1), u3 = d(f, 3);
      return {{u3, 2 * u, -4 * r * u1, 6 * u1 * u1}};
    }
    case ProblemKind::U1: {
      const double u = d(*g, 0), ud = d(*g, 1), udd = d(*g, 2);
      const double w = d(f, 0), wd = d(f, 1), wdd = d(f, 2);
      const double B2 = 2 * u - 4 * r * ud + 6 * ud * ud;
      const double k = 1.0 / (3 * cb);
      return {{udd * wdd, B2 * wd, 2 * ud * w, k * ud * r * r * ud, k * ud * 6 * u * ud, -k * ud * 2 * r * u,
               k * ud * 3 * udd, -k * 2 * u * u}};
    }
    case ProblemKind::Q0: {
      const double q = d(f, 0);
      return {{d(f, 2), -r * q, -2 * q * q * q}};
    }
    case ProblemKind::Q1: {
      const double q = d(*g, 0), qd = d(*g, 1), w = d(f, 0);
      return {{0.5 * d(f, 2), -(r / 2 + 3 * q * q) * w, r * r * q / (12 * cb), -r * q * q * q / cb,
               -q * q * q * q * q / cb, qd / (2 * cb), q * qd * qd / cb}};
    }
    case ProblemKind::VSigmaPIII: {
      const double v = d(f, 0), v1 = d(f, 1), v2 = d(f, 2), a = p.a;
      return {{(r * v2) * (r * v2), -(a * v1) * (a * v1), -v1 * (4 * v1 + 1) * v, v1 * (4 * v1 + 1) * r * v1}};
    }
    case ProblemKind::PHard: {
      const double s = std::sqrt(r), a = p.a;
      const double x = static_cast<double>(f.eval_var(Real(s))), x1 = static_cast<double>(f.eval_var_deriv(Real(s), 1)),
                   x2 = static_cast<double>(f.eval_var_deriv(Real(s), 2));
      const double W = 1 - x * x;
      return {{W * s * s * x2, W * s * x1, s * s * x * x1 * x1, (s * s - a * a) * x, s * s * x * x * x * (x * x - 2)}};
    }
  }
  return {};
}

template <class Real>
PiecewiseTaylor<Real> make(const OdeProblem& p, VarPower vp, Vec<TaylorSegment<Real>> segs) {
  return PiecewiseTaylor<Real>(p.id(), vp, std::move(segs));
}

void check_soft_domain(double lo, double hi) {
  if (!(hi >= 6.0)) throw DomainError("solve: right end must be >= 6 for asymptotic seeding");
  if (hi > 30.0) throw DomainError("solve: right end above 30 underflows the Airy seeds");
  if (!(lo < hi) || lo < -40.0) throw DomainError("solve: left end must satisfy -40 <= lo < hi");
}

}  // namespace

template <class Real>
double ode_residual(const OdeProblem& p, const PiecewiseTaylor<Real>& f, const PiecewiseTaylor<Real>* g, int points) {
  if ((p.kind == ProblemKind::U1 || p.kind == ProblemKind::Q1) && !g)
    throw ArgumentError("ode_residual: partner solution required");
  if (points < 2) throw ArgumentError("ode_residual: need >= 2 points");
  double lo = static_cast<double>(f.lo()), hi = static_cast<double>(f.hi());
  if (!p.is_soft()) lo = (hi - lo) / (points * 10.0);
  double worst = 0;
  for (int i = 0; i < points; ++i) {
    const double r = std::min(hi, lo + (hi - lo) * i / (points - 1));
    worst = std::max(worst, terms_at(p, f, g, r).residual());
  }
  return worst;
}

template <class Real>
SoftEdgeSolutions<Real> solve_soft(double lo, double hi, const SolveOptions& o) {
  o.validate();
  check_soft_domain(lo, hi);
  SoftEdgeSolutions<Real> out;
  for (bool u_family : {true, false}) {
    const OdeProblem pa{u_family ? ProblemKind::U0 : ProblemKind::Q0};
    const OdeProblem pb{u_family ? ProblemKind::U1 : ProblemKind::Q1};
    Plan plan = plan_for(pb, o);
    for (int attempt = 0;; ++attempt) {
      SoftPair<Real> s = march_soft<Real>(u_family, Real(lo), Real(hi), plan);
      PiecewiseTaylor<Real> fa = make(pa, VarPower::Linear, std::move(s.first));
      PiecewiseTaylor<Real> fb = make(pb, VarPower::Linear, std::move(s.second));
      const double ra = ode_residual(pa, fa, static_cast<const PiecewiseTaylor<Real>*>(nullptr), o.residual_points);
      const double rb = ode_residual(pb, fb, &fa, o.residual_points);
      if (std::max(ra, rb) < o.residual_tol) {
        (u_family ? out.u0 : out.q0) = std::move(fa);
        (u_family ? out.u1 : out.q1) = std::move(fb);
        break;
      }
      if (!o.adaptive || attempt >= o.max_refinements) {
        std::ostringstream os;
        os << "solve(" << pb.id() << "): residual " << std::max(ra, rb) << " above " << o.residual_tol;
        throw NumericalError(os.str());
      }
      plan.segments *= 2;
    }
  }
  return out;
}

template <class Real>
PiecewiseTaylor<Real> solve(const OdeProblem& p, double lo, double hi, const SolveOptions& o) {
  p.validate();
  o.validate();
  if (p.is_soft()) {
    check_soft_domain(lo, hi);
    const bool u_family = p.kind == ProblemKind::U0 || p.kind == ProblemKind::U1;
    const OdeProblem pa{u_family ? ProblemKind::U0 : ProblemKind::Q0};
    const OdeProblem pb{u_family ? ProblemKind::U1 : ProblemKind::Q1};
    const bool want_first = p.kind == pa.kind;
    Plan plan = plan_for(p, o);
    for (int attempt = 0;; ++attempt) {
      SoftPair<Real> s = march_soft<Real>(u_family, Real(lo), Real(hi), plan);
      PiecewiseTaylor<Real> fa = make(pa, VarPower::Linear, std::move(s.first));
      double res = ode_residual(pa, fa, static_cast<const PiecewiseTaylor<Real>*>(nullptr), o.residual_points);
      PiecewiseTaylor<Real> fb;
      if (!want_first) {
        fb = make(pb, VarPower::Linear, std::move(s.second));
        res = std::max(res, ode_residual(pb, fb, &fa, o.residual_points));
      }
      if (res < o.residual_tol) return want_first ? fa : fb;
      if (!o.adaptive || attempt >= o.max_refinements) {
        std::ostringstream os;
        os << "solve(" << p.id() << "): residual " << res << " above " << o.residual_tol;
        throw NumericalError(os.str());
      }
      plan.segments *= 2;
    }
  }
  if (lo != 0) throw DomainError("solve: hard-edge problems start at lo = 0");
  if (!(hi > 0)) throw DomainError("solve: need hi > 0");
  if (hi > hard_window(p.a) * (1 + 1e-12)) {
    std::ostringstream os;
    os << "solve(" << p.id() << "): hi = " << hi << " beyond the supported window r <= " << hard_window(p.a);
    throw DomainError(os.str());
  }
  const bool is_v = p.kind == ProblemKind::VSigmaPIII;
  const Real x_hi = is_v ? Real(hi) : Real(std::sqrt(hi));
  Plan plan = plan_for(p, o);
  for (int attempt = 0;; ++attempt) {
    PiecewiseTaylor<Real> f = make(p, is_v ? VarPower::Linear : VarPower::Sqrt, march_hard<Real>(p, x_hi, plan, o));
    const double res = ode_residual(p, f, static_cast<const PiecewiseTaylor<Real>*>(nullptr), o.residual_points);
    if (res < o.residual_tol) return f;
    if (!o.adaptive || attempt >= o.max_refinements) {
      std::ostringstream os;
      os << "solve(" << p.id() << "): residual " << res << " above " << o.residual_tol;
      throw NumericalError(os.str());
    }
    plan.segments *= 2;
  }
}

double u0_third_order_residual(const PiecewiseTaylor<double>& u0, double r) {
  const double u = u0.eval(r), u1 = u0.eval_deriv(r, 1), u3 = u0.eval_deriv(r, 3);
  return u3 + 2 * u - 4 * r * u1 + 6 * u1 * u1;
}

double bj_u1_identity_residual(const SoftEdgeSolutions<double>& sol, double r) {
  if (!sol.u0.contains(r) || !sol.u1.contains(r)) throw DomainError("bj_u1_identity_residual: r outside solved domain");
  const double u = sol.u0.eval(r), ud = sol.u0.eval_deriv(r, 1), udd = sol.u0.eval_deriv(r, 2);
  return sol.u1.eval(r) + std::cbrt(4.0) / 10.0 * (udd + (2 * u + r * r / 6) * ud + r / 3 * u);
}

namespace {
PiecewiseTaylor<mpq_class> exact_piece(const OdeProblem& p, int shift, const std::vector<mpq_class>& c, VarPower vp) {
  std::vector<mpq_class> poly(shift + c.size(), mpq_class(0));
  std::vector<double> cd(poly.size(), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    poly[shift + k] = c[k];
    cd[shift + k] = c[k].get_d();
  }
  double rho = radius_estimate(cd);
  if (!std::isfinite(rho)) rho = 1e6;
  mpq_class step(0.45 * rho);
  return PiecewiseTaylor<mpq_class>(p.id(), vp, {TaylorSegment<mpq_class>{mpq_class(0), step, std::move(poly)}});
}
}  // namespace

PiecewiseTaylor<mpq_class> v_series_exact(int a, int M) {
  if (M < 1) throw DomainError("v_series_exact: M must be >= 1");
  const OdeProblem p{ProblemKind::VSigmaPIII, a};
  return exact_piece(p, a + 1, series::v_coefficients<mpq_class>(a, M), VarPower::Linear);
}

PiecewiseTaylor<mpq_class> p_hard_series_exact(int a, int M) {
  if (M < 1) throw DomainError("p_hard_series_exact: M must be >= 1");
  const OdeProblem p{ProblemKind::PHard, a};
  return exact_piece(p, a, series::p_coefficients<mpq_class>(a, M), VarPower::Sqrt);
}

PiecewiseTaylor<double> to_double(const PiecewiseTaylor<mpq_class>& e) {
  std::vector<TaylorSegment<double>> segs;
  for (const auto& s : e.segments()) {
    TaylorSegment<double> d{s.center.get_d(), s.step.get_d(), {}};
    for (const auto& c : s.coeffs) d.coeffs.push_back(c.get_d());
    segs.push_back(std::move(d));
  }
  return PiecewiseTaylor<double>(e.problem_id(), e.var_power(), std::move(segs));
}

template PiecewiseTaylor<double> solve<double>(const OdeProblem&, double, double, const SolveOptions&);
template PiecewiseTaylor<long double> solve<long double>(const OdeProblem&, double, double, const SolveOptions&);
template SoftEdgeSolutions<double> solve_soft<double>(double, double, const SolveOptions&);
template SoftEdgeSolutions<long double> solve_soft<long double>(double, double, const SolveOptions&);
template double ode_residual<double>(const OdeProblem&, const PiecewiseTaylor<double>&,
                                     const PiecewiseTaylor<double>*, int);
template double ode_residual<long double>(const OdeProblem&, const PiecewiseTaylor<long double>&,
                                          const PiecewiseTaylor<long double>*, int);

}  // namespace lislab::painleve
