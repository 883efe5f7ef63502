#include "lislab/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "lislab/errors.hpp"
#include "lislab/io.hpp"
#include "lislab/modular.hpp"
#include "lislab/parallel.hpp"
#include "lislab/series.hpp"

namespace lislab {

std::string to_string(PermClass c) {
  switch (c) {
    case PermClass::Plain:
      return "PLAIN";
    case PermClass::InvolutionInc:
      return "INVOLUTION_INC";
    case PermClass::InvolutionDec:
      return "INVOLUTION_DEC";
  }
  return "?";
}

PermClass parse_perm_class(const std::string& s) {
  std::string u = s;
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char ch) { return std::toupper(ch); });
  if (u == "PLAIN") return PermClass::Plain;
  if (u == "INC" || u == "INVOLUTION_INC") return PermClass::InvolutionInc;
  if (u == "DEC" || u == "INVOLUTION_DEC") return PermClass::InvolutionDec;
  throw ArgumentError("unknown class '" + s + "' (expected plain, inc or dec)");
}

mpz_class class_total(PermClass cls, int N) {
  if (N < 0) throw DomainError("class_total: N must be >= 0");
  mpz_class t = 1;
  if (cls == PermClass::Plain) {
    mpz_fac_ui(t.get_mpz_t(), N);
    return t;
  }
  if (N % 2) return 0;
  for (int k = N - 1; k > 1; k -= 2) t *= k;
  return t;
}

// ---------------------------------------------------------------- tables

mpq_class ExactCdfTable::probability(int l) const {
  if (l < 0) return 0;
  const mpz_class& c = counts[std::min<std::size_t>(l, counts.size() - 1)];
  mpq_class q(c, total());
  q.canonicalize();
  return q;
}

double ExactCdfTable::cdf(int l) const { return probability(l).get_d(); }

void ExactCdfTable::check_invariants() const {
  if (N < 1) throw NumericalError("table: N must be >= 1");
  if (cls != PermClass::Plain && N % 2) throw NumericalError("table: involution classes require even N");
  if (static_cast<int>(counts.size()) != N + 1) throw NumericalError("table: expected N+1 counts");
  if (counts[0] != 0) throw NumericalError("table: counts[0] must be 0");
  if (counts[N] != class_total(cls, N)) throw NumericalError("table: counts[N] must equal the class total");
  for (int l = 1; l <= N; ++l)
    if (counts[l] < counts[l - 1]) throw NumericalError("table: counts decrease at l = " + std::to_string(l));
}

void ExactCdfTable::write(std::ostream& os) const {
  os << to_string(cls) << ' ' << N << '\n';
  for (int l = 0; l <= N; ++l) os << l << ' ' << counts[l].get_str() << '\n';
}

ExactCdfTable ExactCdfTable::read(std::istream& is) {
  ExactCdfTable t;
  std::string cls;
  if (!(is >> cls >> t.N)) throw IoError("table: missing header");
  try {
    t.cls = parse_perm_class(cls);
  } catch (const ArgumentError& e) {
    throw IoError(std::string("table: ") + e.what());
  }
  if (t.N < 1) throw IoError("table: bad N");
  t.counts.resize(t.N + 1);
  for (int l = 0; l <= t.N; ++l) {
    int ll;
    std::string c;
    if (!(is >> ll >> c) || ll != l) throw IoError("table: bad row " + std::to_string(l));
    if (t.counts[l].set_str(c, 10) != 0) throw IoError("table: bad integer in row " + std::to_string(l));
  }
  try {
    t.check_invariants();
  } catch (const NumericalError& e) {
    throw IoError(e.what());
  }
  return t;
}

// ---------------------------------------------------------- generating functions

namespace {

// Series order of the hard-edge transcendents for threshold l; -1 when the
// count is trivially zero for every N >= 1.
int order_of(PermClass cls, int l) {
  switch (cls) {
    case PermClass::Plain:
      return l >= 1 ? l : -1;
    case PermClass::InvolutionInc:
      return l >= 1 ? l - 1 : -1;
    case PermClass::InvolutionDec: {
      const int even = l - (l % 2);
      return even >= 2 ? even + 1 : -1;
    }
  }
  return -1;
}

// Coefficients g_N such that count_N = g_N (N!)^2 (PLAIN) or g_N N! (involutions).
template <class T>
std::vector<T> gf_coefficients(PermClass cls, int a, int N_max) {
  std::vector<T> h(N_max + 1, T(0));
  const auto rec = series::reciprocals<T>(2 * N_max + 2);
  if (cls == PermClass::Plain) {
    if (N_max >= 1) h[1] = T(1);
    const int M = N_max - a - 1;
    if (M >= 0) {
      const auto c = series::v_coefficients<T>(a, M);
      T pw(1);
      for (int i = 0; i < a + 1; ++i) pw *= T(4);
      for (int k = 0; k <= M; ++k, pw *= T(4)) h[a + 1 + k] += c[k] * pw * rec[a + 1 + k];
    }
    return series::exp_series(h, N_max);
  }
  if (N_max >= 2) h[2] = rec[2];
  const int Mv = N_max / 2 - a - 1;
  if (Mv >= 0) {
    const auto c = series::v_coefficients<T>(a, Mv);
    T pw(1);
    for (int i = 0; i < a + 1; ++i) pw *= T(4);
    for (int k = 0; k <= Mv; ++k, pw *= T(4)) h[2 * (a + 1 + k)] += c[k] * pw * rec[2 * (a + 1 + k)];
  }
  std::vector<T> X(N_max + 1, T(0));
  const int Mp = N_max - a - 1;
  if (Mp >= 0) {
    const auto b = series::p_coefficients<T>(a, Mp);
    T pw(1);
    for (int i = 0; i < a + 1; ++i) pw *= T(2);
    for (int k = 0; k <= Mp; ++k, pw *= T(2)) X[a + 1 + k] = b[k] * pw * rec[2 * (a + 1 + k)];
  }
  std::vector<T> hm(N_max + 1);
  for (int i = 0; i <= N_max; ++i) hm[i] = h[i] - X[i];
  auto g = series::exp_series(hm, N_max);
  if (cls == PermClass::InvolutionInc) {
    std::vector<T> hp(N_max + 1);
    for (int i = 0; i <= N_max; ++i) hp[i] = h[i] + X[i];
    const auto gp = series::exp_series(hp, N_max);
    for (int i = 0; i <= N_max; ++i) g[i] = (g[i] + gp[i]) * rec[2];
  }
  return g;
}

void trivial_counts(std::vector<mpz_class>& out, int N_max) {
  out.assign(N_max + 1, 0);
  out[0] = 1;  // the empty object has lis = lds = 0
}

std::vector<mpz_class> counts_rational(PermClass cls, int l, int N_max) {
  std::vector<mpz_class> out;
  const int a = order_of(cls, l);
  if (a < 0) {
    trivial_counts(out, N_max);
    return out;
  }
  const auto g = gf_coefficients<mpq_class>(cls, a, N_max);
  out.resize(N_max + 1);
  mpz_class fact = 1;
  for (int N = 0; N <= N_max; ++N) {
    if (N > 0) fact *= N;
    mpq_class c = g[N] * mpq_class(fact);
    if (cls == PermClass::Plain) c *= mpq_class(fact);
    c.canonicalize();
    if (c.get_den() != 1)
      throw NumericalError("enumerate: non-integral count at N = " + std::to_string(N) + ", l = " + std::to_string(l));
    if (cls != PermClass::Plain && N % 2 && c != 0)
      throw NumericalError("enumerate: nonvanishing odd coefficient at N = " + std::to_string(N));
    out[N] = c.get_num();
    if (out[N] < 0 || out[N] > class_total(cls, N))
      throw NumericalError("enumerate: count out of range at N = " + std::to_string(N));
  }
  return out;
}

// Number of word primes whose product certainly exceeds `bound`, plus one
// redundant prime that must produce a zero mixed-radix digit.
int primes_for(const mpz_class& bound) {
  const int bits = bound == 0 ? 0 : static_cast<int>(mpz_sizeinbase(bound.get_mpz_t(), 2));
  return bits / 61 + 2;  // every prime exceeds 2^61
}

struct PrimeBasis {
  std::vector<std::uint64_t> p;
  std::vector<std::vector<ModP>> inv;  // inv[j][i] = p_i^{-1} mod p_j (Montgomery form for p_j), i < j

  explicit PrimeBasis(int k) : p(word_primes(k)), inv(k) {
    for (int j = 0; j < k; ++j) {
      ModP::Scope s(p[j]);
      for (int i = 0; i < j; ++i) inv[j].push_back(ModP::from_u64(p[i]).inverse());
    }
  }
};

// Residues of the counts for N = 0..N_max modulo the first k primes.
std::vector<std::vector<ModP>> residues(PermClass cls, int a, int N_max, const PrimeBasis& basis, int k) {
  std::vector<std::vector<ModP>> res(k);
  for (int j = 0; j < k; ++j) {
    ModP::Scope s(basis.p[j]);
    auto g = gf_coefficients<ModP>(cls, a, N_max);
    ModP fact(1);
    for (int N = 0; N <= N_max; ++N) {
      if (N > 0) fact *= ModP(N);
      g[N] *= fact;
      if (cls == PermClass::Plain) g[N] *= fact;
    }
    res[j] = std::move(g);
  }
  return res;
}

// Reconstructs the counts at the requested N (all N <= N_max when `wanted` is empty).
std::map<int, mpz_class> counts_modular(PermClass cls, int l, int N_max, const std::vector<int>& wanted,
                                        const PrimeBasis& basis) {
  std::vector<int> Ns = wanted;
  if (Ns.empty()) {
    Ns.resize(N_max + 1);
    std::iota(Ns.begin(), Ns.end(), 0);
  }
  std::map<int, mpz_class> out;
  const int a = order_of(cls, l);
  if (a < 0) {
    for (int N : Ns) out[N] = N == 0 ? 1 : 0;
    return out;
  }
  std::vector<int> kN(Ns.size());
  std::vector<mpz_class> totals(Ns.size());
  int k = 0;
  for (std::size_t n = 0; n < Ns.size(); ++n) {
    totals[n] = class_total(cls, Ns[n]);
    kN[n] = primes_for(totals[n]);
    k = std::max(k, kN[n]);
  }
  if (k > static_cast<int>(basis.p.size())) throw ArgumentError("enumerate: prime basis too small");
  const auto res = residues(cls, a, N_max, basis, k);
  // Garner mixed-radix digits, one prime at a time.
  std::vector<std::vector<std::uint64_t>> d(Ns.size());
  for (int j = 0; j < k; ++j) {
    ModP::Scope s(basis.p[j]);
    for (std::size_t n = 0; n < Ns.size(); ++n) {
      if (j >= kN[n]) continue;
      ModP t = res[j][Ns[n]];
      for (int i = 0; i < j; ++i) t = (t - ModP::from_u64(d[n][i])) * basis.inv[j][i];
      d[n].push_back(t.value());
    }
  }
  for (std::size_t n = 0; n < Ns.size(); ++n) {
    const int N = Ns[n];
    if (d[n].back() != 0)
      throw NumericalError("enumerate: count at N = " + std::to_string(N) + ", l = " + std::to_string(l) +
                           " is not an integer in range (redundant residue mismatch)");
    mpz_class x = 0;
    for (int i = kN[n] - 2; i >= 0; --i) {
      x *= static_cast<unsigned long>(basis.p[i]);
      x += static_cast<unsigned long>(d[n][i]);
    }
    if (x > totals[n])
      throw NumericalError("enumerate: count out of range at N = " + std::to_string(N) + ", l = " + std::to_string(l));
    out[N] = x;
  }
  return out;
}

std::vector<mpz_class> counts_for(PermClass cls, int l, int N_max, ExactBackend backend) {
  if (N_max < 0) throw DomainError("enumerate: N_max must be >= 0");
  if (l < 0) throw DomainError("enumerate: l must be >= 0");
  if (backend == ExactBackend::Rational) return counts_rational(cls, l, N_max);
  const PrimeBasis basis(primes_for(class_total(cls, N_max)));
  const auto m = counts_modular(cls, l, N_max, {}, basis);
  std::vector<mpz_class> out;
  for (const auto& [N, c] : m) out.push_back(c);
  return out;
}

}  // namespace

std::vector<mpz_class> enumerate_plain(int N_max, int l, ExactBackend backend) {
  return counts_for(PermClass::Plain, l, N_max, backend);
}

std::vector<mpz_class> enumerate_involution(int N_max, int l, PermClass cls, ExactBackend backend) {
  if (cls == PermClass::Plain) throw ArgumentError("enumerate_involution: class must be an involution class");
  return counts_for(cls, l, N_max, backend);
}

std::map<int, ExactCdfTable> build_tables(PermClass cls, const std::vector<int>& Ns_in, ExactBackend backend,
                                          int threads) {
  std::set<int> Ns(Ns_in.begin(), Ns_in.end());
  if (Ns.empty()) return {};
  for (int N : Ns) {
    if (N < 1) throw DomainError("build_tables: N must be >= 1");
    if (cls != PermClass::Plain && N % 2) throw DomainError("build_tables: involution classes require even N");
  }
  const int N_max = *Ns.rbegin();
  std::map<int, ExactCdfTable> tables;
  for (int N : Ns) {
    auto& t = tables[N];
    t.cls = cls;
    t.N = N;
    t.counts.assign(N + 1, 0);
    t.counts[N] = class_total(cls, N);
  }
  // Thresholds that need a series job: 1..N_max-1 (DEC: even ones only).
  std::vector<int> jobs;
  for (int l = 1; l < N_max; ++l)
    if (cls != PermClass::InvolutionDec || l % 2 == 0) jobs.push_back(l);
  std::vector<std::map<int, mpz_class>> results(jobs.size());
  std::unique_ptr<PrimeBasis> basis;
  if (backend == ExactBackend::Modular) basis = std::make_unique<PrimeBasis>(primes_for(class_total(cls, N_max)));
  parallel_for(static_cast<int>(jobs.size()), threads, [&](int i) {
    const int l = jobs[i];
    std::vector<int> want;
    for (int N : Ns)
      if (N > l) want.push_back(N);
    const int top = want.back();
    if (backend == ExactBackend::Modular) {
      results[i] = counts_modular(cls, l, top, want, *basis);
    } else {
      const auto c = counts_rational(cls, l, top);
      for (int N : want) results[i][N] = c[N];
    }
  });
  for (std::size_t i = 0; i < jobs.size(); ++i)
    for (const auto& [N, c] : results[i]) tables[N].counts[jobs[i]] = c;
  for (auto& [N, t] : tables) {
    for (int l = 1; l < N; ++l)
      if (cls == PermClass::InvolutionDec && l % 2) t.counts[l] = t.counts[l - 1];
    t.check_invariants();
  }
  return tables;
}

ExactCdfTable build_table(PermClass cls, int N, ExactBackend backend, int threads) {
  return build_tables(cls, {N}, backend, threads).at(N);
}

std::map<int, ExactCdfTable> cached_tables(PermClass cls, const std::vector<int>& Ns, bool use_cache, int threads) {
  const io::Cache cache(io::cache_dir(), use_cache);
  auto record = [&](int N) { return "lislab exact-cdf-table v1 class=" + to_string(cls) + " N=" + std::to_string(N); };
  std::map<int, ExactCdfTable> out;
  std::vector<int> missing;
  for (int N : std::set<int>(Ns.begin(), Ns.end())) {
    if (auto text = cache.load(record(N), ".tbl")) {
      try {
        std::istringstream is(*text);
        auto t = ExactCdfTable::read(is);
        if (t.cls == cls && t.N == N) {
          out.emplace(N, std::move(t));
          continue;
        }
      } catch (const IoError&) {
        // corrupt entry: recompute and overwrite
      }
    }
    missing.push_back(N);
  }
  if (!missing.empty()) {
    auto built = build_tables(cls, missing, ExactBackend::Modular, threads);
    for (auto& [N, t] : built) {
      std::ostringstream os;
      t.write(os);
      cache.store(record(N), ".tbl", os.str());
      out.emplace(N, std::move(t));
    }
  }
  return out;
}

// ---------------------------------------------------------------- oracles

namespace {

int lis_quadratic(const std::vector<int>& p) {
  std::vector<int> best(p.size(), 1);
  int m = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (p[j] < p[i]) best[i] = std::max(best[i], best[j] + 1);
    m = std::max(m, best[i]);
  }
  return m;
}

}  // namespace

ExactCdfTable oracle_bruteforce(int N, PermClass cls) {
  if (N < 1) throw DomainError("oracle_bruteforce: N must be >= 1");
  if (cls == PermClass::Plain && N > 8) throw DomainError("oracle_bruteforce: PLAIN requires N <= 8");
  if (cls != PermClass::Plain && (N > 12 || N % 2))
    throw DomainError("oracle_bruteforce: involution classes require even N <= 12");
  std::vector<long> hist(N + 1, 0);
  auto tally = [&](const std::vector<int>& p) {
    int v;
    if (cls == PermClass::InvolutionDec) {
      std::vector<int> r(p.rbegin(), p.rend());
      v = lis_quadratic(r);
    } else {
      v = lis_quadratic(p);
    }
    ++hist[v];
  };
  if (cls == PermClass::Plain) {
    std::vector<int> p(N);
    std::iota(p.begin(), p.end(), 1);
    do tally(p);
    while (std::next_permutation(p.begin(), p.end()));
  } else {
    std::vector<int> p(N, 0);
    std::function<void()> rec = [&] {
      int i = 0;
      while (i < N && p[i]) ++i;
      if (i == N) return tally(p);
      for (int j = i + 1; j < N; ++j)
        if (!p[j]) {
          p[i] = j + 1;
          p[j] = i + 1;
          rec();
          p[i] = p[j] = 0;
        }
    };
    rec();
  }
  ExactCdfTable t;
  t.cls = cls;
  t.N = N;
  t.counts.assign(N + 1, 0);
  long acc = 0;
  for (int l = 0; l <= N; ++l) t.counts[l] = (acc += hist[l]);
  return t;
}

mpz_class oracle_hook_length(int N, int l) {
  if (N < 0 || N > 40) throw DomainError("oracle_hook_length: requires 0 <= N <= 40");
  if (l < 0) throw DomainError("oracle_hook_length: l must be >= 0");
  mpz_class nfact;
  mpz_fac_ui(nfact.get_mpz_t(), N);
  mpz_class sum = 0;
  std::vector<int> lam;
  std::function<void(int, int)> rec = [&](int rest, int maxpart) {
    if (rest == 0) {
      std::vector<int> conj(lam.empty() ? 0 : lam[0], 0);
      for (int r : lam)
        for (int j = 0; j < r; ++j) ++conj[j];
      mpz_class hooks = 1;
      for (std::size_t i = 0; i < lam.size(); ++i)
        for (int j = 0; j < lam[i]; ++j) hooks *= (lam[i] - j - 1) + (conj[j] - static_cast<int>(i) - 1) + 1;
      const mpz_class f = nfact / hooks;
      sum += f * f;
      return;
    }
    for (int part = std::min(rest, maxpart); part >= 1; --part) {
      lam.push_back(part);
      rec(rest - part, part);
      lam.pop_back();
    }
  };
  rec(N, l);
  return sum;
}

}  // namespace lislab
