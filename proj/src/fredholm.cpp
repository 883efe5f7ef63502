#include "lislab/fredholm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <sstream>

#include "lislab/errors.hpp"
#include "lislab/specfun.hpp"

namespace lislab {

namespace {

constexpr int kTaylorTerms = 10;  // numerator coefficients 0..9, divided difference through h^8
constexpr double kAiryNearDiag = 1e-2;
constexpr double kBesselNearDiag = 1e-2;
const double kCbrt2 = std::cbrt(2.0);

using Coeffs = std::array<double, kTaylorTerms>;

// [f(m+h) g(m-h) - g(m+h) f(m-h)] / (2h) from Taylor coefficients about m.
double divided_difference(const Coeffs& f, const Coeffs& g, double h) {
  double acc = 0;
  double hp = 1;  // h^(j+k-1)
  for (int d = 1; d < kTaylorTerms; d += 2) {
    double c = 0;
    for (int j = 0; j <= d; ++j) {
      const int k = d - j;
      const double term = f[j] * g[k] - g[j] * f[k];
      c += (k % 2 == 0) ? term : -term;
    }
    acc += 0.5 * c * hp;
    hp *= h * h;
  }
  return acc;
}

// Taylor coefficients of Ai and Ai' about m.
void airy_taylor(double m, double ai, double aip, Coeffs& f, Coeffs& g) {
  f[0] = ai;
  g[0] = aip;
  for (int k = 0; k + 1 < kTaylorTerms; ++k) {
    f[k + 1] = g[k] / (k + 1);
    g[k + 1] = (m * f[k] + (k > 0 ? f[k - 1] : 0.0)) / (k + 1);
  }
}

// Taylor coefficients of phi(x) = J_a(sqrt x), psi(x) = sqrt(x) J_a'(sqrt x) about m > 0.
void bessel_taylor(double a, double m, double phi, double psi, Coeffs& f, Coeffs& g) {
  f[0] = phi;
  g[0] = psi;
  for (int k = 0; k + 1 < kTaylorTerms; ++k) {
    const double fm1 = k > 0 ? f[k - 1] : 0.0;
    f[k + 1] = (g[k] - 2.0 * k * f[k]) / (2.0 * m * (k + 1));
    g[k + 1] = (-(m - a * a) * f[k] - fm1 - 2.0 * k * g[k]) / (2.0 * m * (k + 1));
  }
}

struct BesselPair {
  double phi, psi;
};

BesselPair bessel_pair(double a, double x) {
  const double u = std::sqrt(x);
  return {specfun::bessel_j(a, u), x > 0 ? u * specfun::bessel_j_prime(a, u) : 0.0};
}

double airy_kernel(double x, double y, specfun::AiryPair px, specfun::AiryPair py) {
  if (std::abs(x - y) < kAiryNearDiag) {
    const double m = 0.5 * (x + y);
    const specfun::AiryPair pm = (x == y) ? px : specfun::airy_pair(m);
    Coeffs f, g;
    airy_taylor(m, pm.ai, pm.aip, f, g);
    return divided_difference(f, g, 0.5 * (x - y));
  }
  return (px.ai * py.aip - px.aip * py.ai) / (x - y);
}

double bessel_kernel(double a, double x, double y, BesselPair px, BesselPair py) {
  const double m = 0.5 * (x + y);
  if (m == 0) return a == 0 ? 0.25 : 0.0;
  if (std::abs(x - y) < kBesselNearDiag * std::min(m, std::sqrt(m))) {
    const BesselPair pm = (x == y) ? px : bessel_pair(a, m);
    Coeffs f, g;
    bessel_taylor(a, m, pm.phi, pm.psi, f, g);
    return 0.5 * divided_difference(f, g, 0.5 * (x - y));
  }
  return (px.phi * py.psi - px.psi * py.phi) / (2.0 * (x - y));
}

double l_kernel(double x, double y, specfun::AiryPair px, specfun::AiryPair py) {
  return ((px.ai * py.aip + px.aip * py.ai) / 5.0 + (x * x + x * y + y * y) / 30.0 * px.ai * py.ai -
          (x + y) / 30.0 * px.aip * py.aip) /
         kCbrt2;
}

double m_kernel(double t, double x, double y) {
  const double sg = t + x + y;
  return ((2 * x + 2 * y - 8 * t) * specfun::airy_ai(sg) +
          (24 * x * x + 24 * y * y - 12 * x * t - 12 * x * y - 12 * y * t - t * t) / 3.0 *
              specfun::airy_ai_prime(sg)) /
         (10.0 * kCbrt2);
}

double v_hard_kernel(double a, double s, double x, double y) {
  return 0.5 * std::sqrt(s) * specfun::bessel_j(a, std::sqrt(x * y * s));
}

void check_point(const KernelSpec& k, double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw DomainError("eval_kernel: non-finite argument");
  switch (k.kind) {
    case KernelKind::BesselHard:
    case KernelKind::VSoft:
    case KernelKind::MCorr:
      if (x < 0 || y < 0) throw DomainError("eval_kernel: arguments must be >= 0 for " + to_string(k.kind));
      break;
    case KernelKind::VHard:
      if (x < 0 || y < 0 || x > 1 || y > 1) throw DomainError("eval_kernel: VHard arguments must lie in [0,1]");
      break;
    default:
      break;
  }
}

double airy_cut(KernelKind kind) {
  static const double x16 = specfun::airy_decay_point(1e-16);
  static const double x18 = specfun::airy_decay_point(1e-18);
  return (kind == KernelKind::LCorr || kind == KernelKind::MCorr) ? x18 : x16;
}

constexpr double kBesselCutEps = 1e-18;

}  // namespace

std::string to_string(KernelKind k) {
  switch (k) {
    case KernelKind::Zero: return "Zero";
    case KernelKind::AirySoft: return "AirySoft";
    case KernelKind::BesselHard: return "BesselHard";
    case KernelKind::VSoft: return "VSoft";
    case KernelKind::VHard: return "VHard";
    case KernelKind::LCorr: return "LCorr";
    case KernelKind::MCorr: return "MCorr";
  }
  return "?";
}

void KernelSpec::validate() const {
  if (!std::isfinite(a) || !std::isfinite(s) || !std::isfinite(t))
    throw DomainError("KernelSpec: non-finite parameter");
  if ((kind == KernelKind::BesselHard || kind == KernelKind::VHard) && a < 0)
    throw DomainError("KernelSpec: Bessel order must be >= 0");
  if (kind == KernelKind::VHard && !(s > 0)) throw DomainError("KernelSpec: VHard scale must be > 0");
}

double eval_kernel(const KernelSpec& k, double x, double y) {
  k.validate();
  check_point(k, x, y);
  switch (k.kind) {
    case KernelKind::Zero: return 0.0;
    case KernelKind::AirySoft: return airy_kernel(x, y, specfun::airy_pair(x), specfun::airy_pair(y));
    case KernelKind::BesselHard: return bessel_kernel(k.a, x, y, bessel_pair(k.a, x), bessel_pair(k.a, y));
    case KernelKind::VSoft: return specfun::airy_ai(k.t + x + y);
    case KernelKind::VHard: return v_hard_kernel(k.a, k.s, x, y);
    case KernelKind::LCorr: return l_kernel(x, y, specfun::airy_pair(x), specfun::airy_pair(y));
    case KernelKind::MCorr: return m_kernel(k.t, x, y);
  }
  return 0.0;
}

Interval effective_interval(const KernelSpec& k, Interval d) {
  k.validate();
  if (std::isnan(d.lo) || std::isnan(d.hi) || !std::isfinite(d.lo) || !(d.hi > d.lo))
    throw DomainError("fredholm: domain must be a non-empty interval with finite lower end");
  switch (k.kind) {
    case KernelKind::Zero:
      if (!std::isfinite(d.hi)) d.hi = d.lo + 1.0;
      return d;
    case KernelKind::AirySoft:
    case KernelKind::LCorr: {
      const double T = std::max(14.0, airy_cut(k.kind) - d.lo);
      d.hi = std::min(d.hi, d.lo + T);
      return d;
    }
    case KernelKind::VSoft:
    case KernelKind::MCorr: {
      if (d.lo < 0) throw DomainError("fredholm: " + to_string(k.kind) + " lives on (0, inf)");
      const double T = std::max(14.0, airy_cut(k.kind) - k.t - d.lo);
      d.hi = std::min(d.hi, d.lo + T);
      return d;
    }
    case KernelKind::BesselHard: {
      if (d.lo < 0 || !std::isfinite(d.hi)) throw DomainError("fredholm: BesselHard needs a finite domain in [0, inf)");
      const double u = specfun::bessel_small_argument_cut(k.a, kBesselCutEps);
      if (u * u > d.lo && u * u < d.hi) d.lo = u * u;
      return d;
    }
    case KernelKind::VHard: {
      if (d.lo < 0 || d.hi > 1) throw DomainError("fredholm: VHard lives on (0, 1)");
      const double u = specfun::bessel_small_argument_cut(k.a, kBesselCutEps);
      const double x = u * u / k.s;
      if (x > d.lo && x < d.hi) d.lo = x;
      return d;
    }
  }
  return d;
}

int minimum_nodes(const KernelSpec& k, Interval d) {
  switch (k.kind) {
    case KernelKind::BesselHard: return static_cast<int>(std::ceil(0.6 * std::sqrt(d.hi) + 60));
    case KernelKind::VHard: return static_cast<int>(std::ceil(0.6 * std::sqrt(k.s) + 60));
    default: return 1;
  }
}

void FredholmOptions::validate() const {
  if (n < 1 || n_max < n) throw ArgumentError("FredholmOptions: need 1 <= n <= n_max");
  if (!(tol > 0)) throw ArgumentError("FredholmOptions: tol must be positive");
}

Eigen::MatrixXd discretize(const KernelSpec& k, const QuadratureRule& q) {
  k.validate();
  const int n = q.size();
  Eigen::MatrixXd A(n, n);
  std::vector<double> sw(n);
  for (int i = 0; i < n; ++i) sw[i] = std::sqrt(q.weights[i]);
  const auto& x = q.nodes;
  switch (k.kind) {
    case KernelKind::Zero: A.setZero(); return A;
    case KernelKind::AirySoft:
    case KernelKind::LCorr: {
      std::vector<specfun::AiryPair> p(n);
      for (int i = 0; i < n; ++i) p[i] = specfun::airy_pair(x[i]);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          const double v = k.kind == KernelKind::AirySoft ? airy_kernel(x[i], x[j], p[i], p[j])
                                                          : l_kernel(x[i], x[j], p[i], p[j]);
          A(i, j) = A(j, i) = sw[i] * v * sw[j];
        }
      return A;
    }
    case KernelKind::BesselHard: {
      std::vector<BesselPair> p(n);
      for (int i = 0; i < n; ++i) p[i] = bessel_pair(k.a, x[i]);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) A(i, j) = A(j, i) = sw[i] * bessel_kernel(k.a, x[i], x[j], p[i], p[j]) * sw[j];
      return A;
    }
    case KernelKind::VSoft:
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) A(i, j) = A(j, i) = sw[i] * specfun::airy_ai(k.t + x[i] + x[j]) * sw[j];
      return A;
    case KernelKind::MCorr:
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) A(i, j) = A(j, i) = sw[i] * m_kernel(k.t, x[i], x[j]) * sw[j];
      return A;
    case KernelKind::VHard:
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) A(i, j) = A(j, i) = sw[i] * v_hard_kernel(k.a, k.s, x[i], x[j]) * sw[j];
      return A;
  }
  return A;
}

namespace {

void check_sign(int sign) {
  if (sign != 1 && sign != -1) throw ArgumentError("fredholm: sign must be +1 or -1");
}

struct Factored {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  Eigen::MatrixXd B;  // discretized second kernel (may be empty)
};

Factored factor(const KernelSpec& k, const KernelSpec* l, Interval d, int sign, int n) {
  const QuadratureRule q = gauss_legendre(n, d.lo, d.hi);
  Eigen::MatrixXd A = discretize(k, q);
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n) + double(sign) * A;
  Factored f{Eigen::PartialPivLU<Eigen::MatrixXd>(M), l ? discretize(*l, q) : Eigen::MatrixXd()};
  return f;
}

double trace_of(const Factored& f) {
  const double rc = f.lu.rcond();
  if (!(rc > 1e-14)) {
    std::ostringstream os;
    os << "resolvent_trace: singular discretized system (rcond estimate " << rc << ")";
    throw NumericalError(os.str());
  }
  return f.lu.solve(f.B).trace();
}

template <class Eval>
void converge(const FredholmOptions& opts, int n0, Eval&& eval, const char* what) {
  int n = n0;
  eval(n, true);
  if (!opts.adaptive) return;
  while (true) {
    if (2 * n > std::max(opts.n_max, n0 * 2)) {
      std::ostringstream os;
      os << what << ": no convergence to " << opts.tol << " with " << n << " nodes";
      throw NumericalError(os.str());
    }
    n *= 2;
    if (eval(n, false)) return;
  }
}

}  // namespace

double fredholm_det_fixed(const KernelSpec& k, Interval domain, int sign, int n) {
  check_sign(sign);
  const Interval d = effective_interval(k, domain);
  return factor(k, nullptr, d, sign, n).lu.determinant();
}

DetResult fredholm_det(const KernelSpec& k, Interval domain, int sign, const FredholmOptions& opts) {
  check_sign(sign);
  opts.validate();
  const Interval d = effective_interval(k, domain);
  const int n0 = std::max(opts.n, minimum_nodes(k, d));
  DetResult r;
  double prev = 0;
  converge(opts, n0, [&](int n, bool first) {
    const double v = factor(k, nullptr, d, sign, n).lu.determinant();
    r = {v, n, first ? 0.0 : std::abs(v - prev)};
    prev = v;
    return !first && r.est_error < opts.tol;
  }, "fredholm_det");
  return r;
}

DetTraceResult det_and_trace(const KernelSpec& k, const KernelSpec& l, Interval domain, int sign,
                             const FredholmOptions& opts) {
  check_sign(sign);
  opts.validate();
  l.validate();
  const Interval d = effective_interval(k, domain);
  const Interval dl = effective_interval(l, domain);
  const Interval dj{d.lo, std::max(d.hi, dl.hi)};
  const int n0 = std::max({opts.n, minimum_nodes(k, dj), minimum_nodes(l, dj)});
  DetTraceResult r;
  double pd = 0, pt = 0;
  converge(opts, n0, [&](int n, bool first) {
    const Factored f = factor(k, &l, dj, sign, n);
    const double dv = f.lu.determinant();
    const double tv = trace_of(f);
    r.det = {dv, n, first ? 0.0 : std::abs(dv - pd)};
    r.trace = {tv, n, first ? 0.0 : std::abs(tv - pt)};
    pd = dv;
    pt = tv;
    return !first && r.det.est_error < opts.tol && r.trace.est_error < opts.tol * std::max(1.0, std::abs(tv));
  }, "det_and_trace");
  return r;
}

DetResult resolvent_trace(const KernelSpec& k, const KernelSpec& l, Interval domain, int sign,
                          const FredholmOptions& opts) {
  return det_and_trace(k, l, domain, sign, opts).trace;
}

}  // namespace lislab
