#include "lislab/specfun.hpp"

namespace lislab::specfun {

AiryPair airy_pair(double x) { return {airy_ai(x), airy_ai_prime(x)}; }

double airy_decay_point(double eps) {
  if (!(eps > 0) || eps >= 0.1) throw DomainError("airy_decay_point: eps out of range");
  double lo = 0.0, hi = 1.0;
  while (airy_ai(hi) >= eps) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    double mid = 0.5 * (lo + hi);
    (airy_ai(mid) >= eps ? lo : hi) = mid;
  }
  return hi;
}

double bessel_small_argument_cut(double nu, double eps) {
  if (nu <= 0 || bessel_j(nu, nu) <= eps) return 0.0;
  double lo = 0.0, hi = nu;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * (1 + nu); ++i) {
    double mid = 0.5 * (lo + hi);
    (bessel_j(nu, mid) <= eps ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace lislab::specfun
