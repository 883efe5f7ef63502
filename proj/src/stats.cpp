#include "lislab/stats.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>

#include "lislab/edgelaws.hpp"
#include "lislab/errors.hpp"
#include "lislab/quadrature.hpp"

namespace lislab {

namespace {
constexpr double kTLo = -10, kTHi = 10;
}

MomentSet limit_moments(int beta, const MomentOptions& opts) {
  check_beta(beta);
  if (!(opts.cut > kTLo && opts.cut < kTHi) || opts.panels < 1 || opts.order < 2)
    throw ArgumentError("limit_moments: bad quadrature options");
  const double c = opts.cut;
  auto F = [&](double t) { return gap_soft(beta, t, Route::Painleve); };
  // m1 = c + int_c^inf (1-F) - int_-inf^c F ; m2 = c^2 + 2 int_c^inf t(1-F) - 2 int_-inf^c t F
  const double a1 = integrate_composite([&](double t) { return 1 - F(t); }, c, kTHi, opts.panels, opts.order);
  const double b1 = integrate_composite(F, kTLo, c, opts.panels, opts.order);
  const double a2 = integrate_composite([&](double t) { return t * (1 - F(t)); }, c, kTHi, opts.panels, opts.order);
  const double b2 = integrate_composite([&](double t) { return t * F(t); }, kTLo, c, opts.panels, opts.order);
  MomentSet m;
  m.m1 = c + a1 - b1;
  m.m2 = c * c + 2 * a2 - 2 * b2;
  if (!(m.variance() > 0)) throw NumericalError("limit_moments: nonpositive variance");
  return m;
}

ExactMoments exact_mean_var(const ExactCdfTable& table) {
  try {
    table.check_invariants();
  } catch (const NumericalError& e) {
    throw ArgumentError(std::string("exact_mean_var: incomplete table: ") + e.what());
  }
  ExactMoments out;
  mpq_class sq = 0;
  for (int k = 0; k <= table.N; ++k) {
    const mpq_class tail = 1 - table.probability(k);
    out.mean += tail;
    sq += (2 * k + 1) * tail;
  }
  out.variance = sq - out.mean * out.mean;
  out.mean.canonicalize();
  out.variance.canonicalize();
  return out;
}

HatQuantities hat_quantities(int N, double mean, double variance, const MomentSet& limit) {
  if (N < 1) throw DomainError("hat_quantities: N must be >= 1");
  const double n = N;
  return {mean - (2 * std::sqrt(n) + limit.m1 * std::pow(n, 1.0 / 6.0)),
          variance - limit.variance() * std::cbrt(n)};
}

std::pair<double, double> smoothed_limit_moments(int N) {
  if (N < 1) throw DomainError("smoothed_limit_moments: N must be >= 1");
  const double c = 2 * std::sqrt(static_cast<double>(N)), s = std::pow(static_cast<double>(N), 1.0 / 6.0);
  double mean = 0, sq = 0;
  for (int k = 0; k <= N; ++k) {
    const double t = (k - c) / s;
    if (t > kTHi) break;  // 1 - F below 1e-18 from here on
    const double tail = t < kTLo ? 1.0 : 1 - gap_soft(2, t, Route::Painleve);
    mean += tail;
    sq += (2.0 * k + 1) * tail;
  }
  return {mean, sq - mean * mean};
}

FitResult fit_inverse_cuberoot(const std::vector<std::pair<double, double>>& data) {
  std::set<double> distinct;
  for (const auto& [n, y] : data) {
    if (!(n > 0) || !std::isfinite(y)) throw ArgumentError("fit_inverse_cuberoot: need N > 0 and finite y");
    distinct.insert(n);
  }
  if (distinct.size() < 2) throw NumericalError("fit_inverse_cuberoot: degenerate design (need >= 2 distinct N)");
  const Eigen::Index m = static_cast<Eigen::Index>(data.size());
  Eigen::MatrixXd A(m, 2);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    A(i, 0) = 1;
    A(i, 1) = 1 / std::cbrt(data[i].first);
    y(i) = data[i].second;
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < 2) throw NumericalError("fit_inverse_cuberoot: rank-deficient design");
  const Eigen::Vector2d x = qr.solve(y);
  const Eigen::VectorXd r = y - A * x;
  FitResult f;
  f.c = x(0);
  f.d = x(1);
  for (Eigen::Index i = 0; i < m; ++i) {
    f.N.push_back(data[i].first);
    f.residuals.push_back(r(i));
  }
  const double scale = A.norm() * std::max(y.norm(), 1e-300);
  f.normal_equation_error = (A.transpose() * r).cwiseAbs().maxCoeff() / scale;
  return f;
}

void write_hat_csv(std::ostream& os, const std::vector<HatRow>& rows, const FitResult& mu_fit,
                   const FitResult& sigma_fit) {
  if (mu_fit.residuals.size() != rows.size()) throw ArgumentError("write_hat_csv: fit does not match rows");
  os << "N,mu_hat,sigma2_hat,fit_residual\n" << std::setprecision(17);
  for (std::size_t i = 0; i < rows.size(); ++i)
    os << rows[i].N << ',' << rows[i].hat.mu_hat << ',' << rows[i].hat.sigma2_hat << ',' << mu_fit.residuals[i]
       << '\n';
  auto summary = [&](const char* name, const FitResult& f) {
    double mx = 0;
    for (double v : f.residuals) mx = std::max(mx, std::abs(v));
    os << "# fit " << name << ": model " << f.model << ", c = " << f.c << ", d = " << f.d
       << ", max |residual| = " << mx << '\n';
  };
  summary("mu_hat", mu_fit);
  summary("sigma2_hat", sigma_fit);
}

}  // namespace lislab
