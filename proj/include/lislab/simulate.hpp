#pragma once

// Monte Carlo sampling of LIS/LDS for uniform permutations, uniform
// fixed-point-free involutions and the Poissonized (Hammersley) model.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "lislab/edgelaws.hpp"
#include "lislab/enumerate.hpp"

namespace lislab {

// xoshiro256** with state derived by splitmix64 from (master seed, stream index).
class Rng {
 public:
  using result_type = std::uint64_t;
  Rng(std::uint64_t master_seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type(0); }
  result_type operator()();
  // Uniform on [0, n), n >= 1, by Lemire's multiply-and-reject method.
  std::uint64_t bounded(std::uint64_t n);

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

// Uniform permutation of 1..N.
std::vector<int> sample_permutation(int N, Rng& rng);
// Uniform fixed-point-free involution of 1..N (N even).
std::vector<int> sample_fpf_involution(int N, Rng& rng);

// Patience-sorting LIS/LDS; the input must be a permutation of 1..N.
int lis(const std::vector<int>& perm);
int lds(const std::vector<int>& perm);

struct HammersleyDraw {
  long N = 0;
  int lis = 0;
};
HammersleyDraw sample_hammersley(double z, Rng& rng);

enum class SimKind { Plain, InvolutionInc, InvolutionDec, Hammersley };
std::string to_string(SimKind k);
SimKind sim_kind_of(PermClass c);

struct SimConfig {
  SimKind kind = SimKind::Plain;
  int N = 1;         // ignored for Hammersley
  double z = 1.0;    // Hammersley only
  long trials = 1;
  std::uint64_t master_seed = 0;

  void validate() const;
};

struct EmpiricalCdf {
  SimConfig config;
  std::vector<long> freq;  // freq[l] = trials with statistic exactly l
  long trials = 0;

  long count_le(int l) const;
  double cdf(int l) const;
  int max_l() const { return static_cast<int>(freq.size()) - 1; }
  void write_csv(std::ostream& os) const;
};

// Deterministic in master_seed; results do not depend on `threads`.
EmpiricalCdf run(const SimConfig& config, int threads = 1);

// sup_l |empirical - exact|.
double sup_distance(const EmpiricalCdf& emp, const ExactCdfTable& exact);
// Dvoretzky-Kiefer-Wolfowitz radius at confidence 1 - alpha.
double dkw_bound(long trials, double alpha = 0.01);

// Scaled difference N^{1/3} [Pr(l_N <= l) - E_beta^soft(t_l)] with
// t_l = (l + shift - 2 sqrt N) / N^{1/6}, beta 2/1/4 and shift 0/+1/-1 for
// PLAIN/DEC/INC, over the integers l with t_l in [t_lo, t_hi] (even l only
// for DEC, whose statistic takes even values).
struct DeltaCurve {
  PermClass cls = PermClass::Plain;
  int N = 1;
  std::vector<int> l;
  std::vector<double> t;
  std::vector<double> value;

  void write_csv(std::ostream& os) const;  // l,t,delta,class,N
};

int soft_beta(PermClass cls);
int delta_shift(PermClass cls);

DeltaCurve delta_curve(PermClass cls, int N, const std::function<double(int)>& cdf, double t_lo = -8,
                       double t_hi = 6, int threads = 1);
DeltaCurve delta_curve(const ExactCdfTable& table, double t_lo = -8, double t_hi = 6, int threads = 1);
DeltaCurve delta_curve(const EmpiricalCdf& emp, double t_lo = -8, double t_hi = 6, int threads = 1);

// sup over the t-overlap of |a - b|, with b linearly interpolated at a's abscissae.
double curve_sup_distance(const DeltaCurve& a, const DeltaCurve& b);

}  // namespace lislab
