#pragma once

// Soft- and hard-edge gap probabilities, leading correction terms, the
// hard-to-soft scaling map and finite-l comparison curves.
//
// Index conventions (operator order a throughout):
//   beta = 2: E2hard(s; a)              = det(I - K_Bessel,a on (0,s))
//   beta = 1: E1hard(s; (a-1)/2)        = det(I - V_hard,a,s on (0,1))
//   beta = 4: E4hard(s; a+1)            = (det(I - V) + det(I + V)) / 2
// delta_hard(beta, l, t) evaluates these at order a = l and s = Q(l; t).

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "lislab/fredholm.hpp"
#include "lislab/painleve.hpp"

namespace lislab {

enum class Route { Fredholm, Painleve, BaikJenkins };

std::string to_string(Route r);
Route parse_route(const std::string& s);

void check_beta(int beta);

// Root z of 2z + X z^{1/3} = l_tilde near l_tilde/2.
double z_of(double l_tilde, double X);
// Q(l; X) = (2 z(l; X))^2.
double Q(double l_tilde, double X);

struct ScalingPoint {
  double l = 0;  // integer in discrete mode
  double z = 0;
  double t = 0;
  double t_tilde = 0;
  double t_star = 0;

  // Discrete mode: l = floor(2z + t z^{1/3}); t_star uses N = z^2.
  static ScalingPoint from_z(double z, double t);
};

// Soft-edge transcendents u0, u1, q0, q1 and their tail integrals over (t, inf),
// extended beyond the solved domain by their Airy asymptotics.
class SoftEdge {
 public:
  explicit SoftEdge(painleve::SoftEdgeSolutions<double> sol);
  // Process-wide instance solved once on the default domain.
  static const SoftEdge& shared();

  double lo() const { return sol_.u0.lo(); }
  double hi() const { return sol_.u0.hi(); }
  double u0(double t) const;
  double u0_prime(double t) const;
  double u1(double t) const;
  double q0(double t) const;
  double q0_prime(double t) const;
  double q1(double t) const;
  // Integrals over (t, inf).
  double int_u0(double t) const;
  double int_u1(double t) const;
  double int_q0(double t) const;
  double int_q1(double t) const;
  const painleve::SoftEdgeSolutions<double>& solutions() const { return sol_; }

 private:
  void check(double t) const;
  painleve::SoftEdgeSolutions<double> sol_;
};

// v(r;a), p(r;a) on (0, s_max] and the integrals of v/r and p/sqrt(r).
class HardEdge {
 public:
  HardEdge(int a, double s_max);
  int order() const { return a_; }
  double s_max() const { return s_max_; }
  double int_v_over_r(double s) const;      // int_0^s v(r)/r dr
  double int_p_over_sqrt_r(double s) const;  // int_0^s p(r)/sqrt(r) dr
  double gap(int beta, double s) const;

 private:
  int a_;
  double s_max_;
  PiecewiseTaylor<double> v_, p_;
  std::vector<double> v_prefix_;
};

double gap_soft(int beta, double t, Route route = Route::Fredholm);
double gap_hard(int beta, double s, double a, Route route = Route::Fredholm);
double correction(int beta, double t, Route route = Route::Fredholm);
double delta_hard(int beta, int l, double t, Route route = Route::Fredholm);

struct CorrectionCurve {
  std::string kind;  // "correction", "delta_hard", "residual"
  int beta = 2;
  int l = 0;  // 0 when not applicable
  Route route = Route::Fredholm;
  std::vector<double> t;
  std::vector<double> value;

  void write_csv(std::ostream& os) const;
};

CorrectionCurve correction_curve(int beta, const std::vector<double>& grid, Route route = Route::Fredholm,
                                 int threads = 1);
CorrectionCurve delta_hard_curve(int beta, int l, const std::vector<double>& grid, Route route = Route::Fredholm,
                                 int threads = 1);
// E_hard - E_soft - l^{-2/3} F over the grid.
CorrectionCurve residual_curve(int beta, int l, const std::vector<double>& grid, Route route = Route::Fredholm,
                               int threads = 1);

}  // namespace lislab
