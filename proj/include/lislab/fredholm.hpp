#pragma once

// Nystrom discretization of the integral operators of the soft and hard edge
// and the resulting Fredholm determinants and resolvent traces.

#include <limits>
#include <string>

#include <Eigen/Dense>

#include "lislab/quadrature.hpp"

namespace lislab {

enum class KernelKind { Zero, AirySoft, BesselHard, VSoft, VHard, LCorr, MCorr };

std::string to_string(KernelKind k);

struct KernelSpec {
  KernelKind kind = KernelKind::Zero;
  double a = 0;  // order (BesselHard, VHard)
  double s = 0;  // scale (VHard)
  double t = 0;  // shift (VSoft, MCorr)

  static KernelSpec zero() { return {}; }
  static KernelSpec airy_soft() { return {KernelKind::AirySoft}; }
  static KernelSpec bessel_hard(double a) { return {KernelKind::BesselHard, a}; }
  static KernelSpec v_soft(double t) { return {KernelKind::VSoft, 0, 0, t}; }
  static KernelSpec v_hard(double a, double s) { return {KernelKind::VHard, a, s}; }
  static KernelSpec l_corr() { return {KernelKind::LCorr}; }
  static KernelSpec m_corr(double t) { return {KernelKind::MCorr, 0, 0, t}; }

  // Throws DomainError for invalid parameters.
  void validate() const;
};

struct Interval {
  double lo = 0;
  double hi = std::numeric_limits<double>::infinity();
};

// Kernel value; the removable diagonal singularities are resolved.
double eval_kernel(const KernelSpec& k, double x, double y);

// Interval actually discretized: semi-infinite Airy-type domains are cut where
// the kernel falls below double precision, hard-edge domains start where the
// Bessel factor does.
Interval effective_interval(const KernelSpec& k, Interval domain);

// Minimum node count for the kernel on the (effective) domain.
int minimum_nodes(const KernelSpec& k, Interval domain);

struct FredholmOptions {
  int n = 80;          // initial node count
  int n_max = 640;     // doubling stops here
  double tol = 1e-10;  // target for |value(n) - value(2n)|
  bool adaptive = true;

  void validate() const;
};

struct DetResult {
  double value = 0;
  int order = 0;  // node count of the returned value
  double est_error = 0;
};

struct DetTraceResult {
  DetResult det;
  DetResult trace;
};

// Matrix sqrt(w_i) K(x_i, x_j) sqrt(w_j) on a quadrature rule.
Eigen::MatrixXd discretize(const KernelSpec& k, const QuadratureRule& q);

// det(I + sign K) at a fixed node count.
double fredholm_det_fixed(const KernelSpec& k, Interval domain, int sign, int n);

// det(I + sign K) with node doubling; sign is +1 or -1.
DetResult fredholm_det(const KernelSpec& k, Interval domain, int sign = -1,
                       const FredholmOptions& opts = {});

// Tr((I + sign K)^{-1} L) with node doubling.
DetResult resolvent_trace(const KernelSpec& k, const KernelSpec& l, Interval domain, int sign = -1,
                          const FredholmOptions& opts = {});

// det(I + sign K) and Tr((I + sign K)^{-1} L) computed from one factorization.
DetTraceResult det_and_trace(const KernelSpec& k, const KernelSpec& l, Interval domain, int sign,
                             const FredholmOptions& opts = {});

}  // namespace lislab
