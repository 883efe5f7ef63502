#pragma once

// Exact finite-N distributions of the longest increasing (decreasing)
// subsequence, read off the hard-edge generating functions:
//   PLAIN:  sum_N w^N/(N!)^2 #{pi in S_N : lis <= l}
//             = exp(w + int_0^{4w} v(r;l)/r dr)
//   INC:    sum_N z^N/N! #{fpf involutions : lis <= l}
//             = exp(z^2/2 + A(z)) cosh(X(z)),  order a = l - 1
//   DEC:    sum_N z^N/N! #{fpf involutions : lds <= 2m}
//             = exp(z^2/2 + A(z) - X(z)),      order a = 2m + 1
// with A = (1/2) int_0^{4z^2} v(r;a)/r dr and X = (1/2) int_0^{2z} p(s;a) ds.
// Counts are stored as the number of objects, so the top entry is N! (PLAIN)
// or (N-1)!! (fixed-point-free involutions).

#include <gmpxx.h>

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace lislab {

enum class PermClass { Plain, InvolutionInc, InvolutionDec };

std::string to_string(PermClass c);
PermClass parse_perm_class(const std::string& s);  // plain | inc | dec (long names accepted)

// Exact field used for series composition.
enum class ExactBackend { Rational, Modular };

// Total number of objects of size N: N! or (N-1)!! (zero for odd N).
mpz_class class_total(PermClass cls, int N);

struct ExactCdfTable {
  PermClass cls = PermClass::Plain;
  int N = 1;
  std::vector<mpz_class> counts;  // counts[l] for l = 0..N

  const mpz_class& total() const { return counts.back(); }
  mpq_class probability(int l) const;  // l beyond N clamps to 1
  double cdf(int l) const;
  // Nondecreasing, counts[0] = 0, counts[N] = total; throws NumericalError.
  void check_invariants() const;

  void write(std::ostream& os) const;
  static ExactCdfTable read(std::istream& is);
};

// counts for N = 0..N_max at fixed threshold l.
std::vector<mpz_class> enumerate_plain(int N_max, int l, ExactBackend backend = ExactBackend::Modular);
std::vector<mpz_class> enumerate_involution(int N_max, int l, PermClass cls,
                                            ExactBackend backend = ExactBackend::Modular);

// Complete tables for each requested N; every threshold l is one job, run
// on up to `threads` workers.
std::map<int, ExactCdfTable> build_tables(PermClass cls, const std::vector<int>& Ns,
                                          ExactBackend backend = ExactBackend::Modular, int threads = 1);
ExactCdfTable build_table(PermClass cls, int N, ExactBackend backend = ExactBackend::Modular, int threads = 1);

// build_tables with a content-addressed on-disk cache (see io::Cache).
std::map<int, ExactCdfTable> cached_tables(PermClass cls, const std::vector<int>& Ns, bool use_cache = true,
                                           int threads = 1);

// Exhaustive oracle: N <= 8 (PLAIN) or N <= 12 (involutions).
ExactCdfTable oracle_bruteforce(int N, PermClass cls);
// sum over partitions of N with first part <= l of (f^lambda)^2, N <= 40.
mpz_class oracle_hook_length(int N, int l);

}  // namespace lislab
