#pragma once

// Taylor-chain solutions of the Painleve-type boundary value problems.
//
//   U0  sigma-PII, u0 ~ Ai'^2 - r Ai^2 (r -> +inf); marched in the differentiated
//       form u0''' = -2u0 + 4r u0' - 6u0'^2.
//   U1  A2 u1'' + B2 u1' + C2 u1 = D2 with coefficients built from u0.
//   Q0  PII q0'' = r q0 + 2 q0^3, q0 ~ Ai.
//   Q1  q1''/2 + C1 q1 = D1 with coefficients built from q0.
//   V_SIGMA_PIII(a)  sigma-PIII' on (0, hi), v ~ -r^{a+1}/(4^{a+1} a! (a+1)!).
//   P_HARD(a)        PIII' in s = sqrt(r), p ~ s^a/(2^a a!).
//
// U/Q problems are seeded at the right end from the Airy asymptotics and
// marched left; V/P start from their exact power series at the origin.

#include <cmath>
#include <limits>
#include <string>

#include <gmpxx.h>

#include "lislab/piecewise_taylor.hpp"

namespace lislab::painleve {

enum class ProblemKind { U0, U1, Q0, Q1, VSigmaPIII, PHard };

struct OdeProblem {
  ProblemKind kind = ProblemKind::U0;
  int a = 0;

  std::string id() const;  // "U0", "V_SIGMA_PIII(20)", ...
  static OdeProblem parse(const std::string& id);
  bool is_soft() const { return kind != ProblemKind::VSigmaPIII && kind != ProblemKind::PHard; }
  void validate() const;
};

struct Recipe {
  int segments;
  int degree;
};

// Segment count and degree used when SolveOptions leaves them at 0.
// U1 and Q0 are marched jointly with their partner (U0 and Q1 respectively)
// and therefore use the partner's recipe.
Recipe default_recipe(ProblemKind kind);

struct SolveOptions {
  int degree = 0;    // 0: recipe default
  int segments = 0;  // 0: recipe default
  double residual_tol = 1e-8;
  int residual_points = 200;
  bool adaptive = true;  // on residual failure, double segments and retry
  int max_refinements = 4;
  // V/P: end of the exact-series piece in r (NaN: chosen from the series).
  double seed_point = std::numeric_limits<double>::quiet_NaN();
  int series_terms = 60;

  void validate() const;
};

inline constexpr double kDefaultSoftLo = -10.0;
inline constexpr double kDefaultSoftHi = 8.0;
inline constexpr int kHardMaxOrder = 40;

// Largest r for which the P_HARD / V_SIGMA_PIII marching is supported at order a.
double hard_window(int a);

template <class Real>
PiecewiseTaylor<Real> solve(const OdeProblem& problem, double lo, double hi, const SolveOptions& opts = {});

template <class Real>
struct SoftEdgeSolutions {
  PiecewiseTaylor<Real> u0, u1, q0, q1;
};

// All four soft-edge transcendents on [lo, hi].
template <class Real>
SoftEdgeSolutions<Real> solve_soft(double lo = kDefaultSoftLo, double hi = kDefaultSoftHi,
                                   const SolveOptions& opts = {});

// Max over `points` uniform points of |equation| / (sum of |terms|).
// `partner` supplies u0 for U1 and q0 for Q1 (ignored otherwise).
template <class Real>
double ode_residual(const OdeProblem& problem, const PiecewiseTaylor<Real>& f,
                    const PiecewiseTaylor<Real>* partner = nullptr, int points = 200);

// u0''' + 2u0 - 4 r u0' + 6 u0'^2 at r, derivatives from the Taylor chain.
double u0_third_order_residual(const PiecewiseTaylor<double>& u0, double r);

// u1(r) + (2^{2/3}/10) [u0'' + (2u0 + r^2/6) u0' + (r/3) u0].
double bj_u1_identity_residual(const SoftEdgeSolutions<double>& sol, double r);

// Exact series v(r;a) = r^{a+1} sum_{k<=M} a_k r^k as a single rational piece.
PiecewiseTaylor<mpq_class> v_series_exact(int a, int M);

// Exact series p(s;a) = s^a sum_{k<=M} b_k s^k in s = sqrt(r).
PiecewiseTaylor<mpq_class> p_hard_series_exact(int a, int M);

// Floating copy of an exact piecewise series.
PiecewiseTaylor<double> to_double(const PiecewiseTaylor<mpq_class>& exact);

// Root-test radius estimate (in the series variable) from coefficients c_0..c_M.
double radius_estimate(const std::vector<double>& c);

}  // namespace lislab::painleve
