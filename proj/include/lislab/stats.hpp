#pragma once

// Limit-law moments, exact finite-N moments, centred "hat" quantities and
// least-squares fits in N^{-1/3}.

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lislab/enumerate.hpp"

namespace lislab {

struct MomentSet {
  double m1 = 0;
  double m2 = 0;
  double variance() const { return m2 - m1 * m1; }
};

struct MomentOptions {
  double cut = 0;       // split point of the integration by parts
  int panels = 40;      // composite Gauss-Legendre panels on each side
  int order = 20;
};

// Moments of dF with F(t) = E_beta^soft(0; (t, inf)), integrated by parts on
// [-10, cut] and [cut, 10].
MomentSet limit_moments(int beta, const MomentOptions& opts = {});

struct ExactMoments {
  mpq_class mean;
  mpq_class variance;
};
ExactMoments exact_mean_var(const ExactCdfTable& table);

struct HatQuantities {
  double mu_hat = 0;
  double sigma2_hat = 0;
};
// mu_hat = mean - (2 sqrt N + m1 N^{1/6}), sigma2_hat = var - (m2 - m1^2) N^{1/3}.
HatQuantities hat_quantities(int N, double mean, double variance, const MomentSet& limit);

// Mean and variance over k = 0..N with Pr(l_N <= k) replaced by
// E_2^soft((k - 2 sqrt N) / N^{1/6}).
std::pair<double, double> smoothed_limit_moments(int N);

struct FitResult {
  double c = 0;
  double d = 0;
  std::vector<double> N;
  std::vector<double> residuals;  // y - (c + d N^{-1/3})
  double normal_equation_error = 0;  // max |A^T r| / (|A| |y|)
  std::string model = "c + d*N^(-1/3)";
};
FitResult fit_inverse_cuberoot(const std::vector<std::pair<double, double>>& data);

struct HatRow {
  int N;
  HatQuantities hat;
};
// CSV "N,mu_hat,sigma2_hat,fit_residual" (residual of the mean fit), followed
// by a '#'-prefixed summary of both fits.
void write_hat_csv(std::ostream& os, const std::vector<HatRow>& rows, const FitResult& mu_fit,
                   const FitResult& sigma_fit);

}  // namespace lislab
