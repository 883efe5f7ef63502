#include "lislab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "lislab/errors.hpp"
#include "lislab/parallel.hpp"

namespace lislab {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t master_seed, std::uint64_t stream) {
  std::uint64_t k = master_seed;
  std::uint64_t st = splitmix64(k) ^ (stream * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull);
  for (auto& w : s_) w = splitmix64(st);
}

Rng::result_type Rng::operator()() {
  auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Rng::bounded(std::uint64_t n) {
  using u128 = unsigned __int128;
  u128 m = static_cast<u128>((*this)()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<u128>((*this)()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::vector<int> sample_permutation(int N, Rng& rng) {
  if (N < 0) throw DomainError("sample_permutation: N must be >= 0");
  std::vector<int> p(N);
  std::iota(p.begin(), p.end(), 1);
  for (int i = N - 1; i > 0; --i) std::swap(p[i], p[rng.bounded(i + 1)]);
  return p;
}

std::vector<int> sample_fpf_involution(int N, Rng& rng) {
  if (N < 0 || N % 2) throw ArgumentError("sample_fpf_involution: N must be even and >= 0");
  std::vector<int> p(N + 1, 0), pool(N), pos(N + 1);
  std::iota(pool.begin(), pool.end(), 1);
  std::iota(pos.begin(), pos.end(), -1);
  auto remove = [&](int v) {
    const int i = pos[v], last = pool.back();
    pool[i] = last;
    pos[last] = i;
    pool.pop_back();
  };
  for (int i = 1; i <= N; ++i) {
    if (p[i]) continue;
    remove(i);
    const int j = pool[rng.bounded(pool.size())];
    remove(j);
    p[i] = j;
    p[j] = i;
  }
  return std::vector<int>(p.begin() + 1, p.end());
}

namespace {

void check_permutation(const std::vector<int>& perm) {
  std::vector<char> seen(perm.size() + 1, 0);
  for (int v : perm) {
    if (v < 1 || v > static_cast<int>(perm.size()) || seen[v])
      throw ArgumentError("lis: input is not a permutation of 1..N");
    seen[v] = 1;
  }
}

template <class It>
int patience(It first, It last) {
  std::vector<int> tails;
  for (; first != last; ++first) {
    auto it = std::lower_bound(tails.begin(), tails.end(), *first);
    if (it == tails.end())
      tails.push_back(*first);
    else
      *it = *first;
  }
  return static_cast<int>(tails.size());
}

}  // namespace

int lis(const std::vector<int>& perm) {
  check_permutation(perm);
  return patience(perm.begin(), perm.end());
}

int lds(const std::vector<int>& perm) {
  check_permutation(perm);
  return patience(perm.rbegin(), perm.rend());
}

HammersleyDraw sample_hammersley(double z, Rng& rng) {
  if (!(z > 0) || !std::isfinite(z)) throw DomainError("sample_hammersley: z must be positive");
  HammersleyDraw d;
  d.N = std::poisson_distribution<long>(z * z)(rng);
  if (d.N > (1l << 30)) throw DomainError("sample_hammersley: z too large");
  const auto p = sample_permutation(static_cast<int>(d.N), rng);
  d.lis = patience(p.begin(), p.end());
  return d;
}

std::string to_string(SimKind k) {
  switch (k) {
    case SimKind::Plain:
      return "PLAIN";
    case SimKind::InvolutionInc:
      return "INVOLUTION_INC";
    case SimKind::InvolutionDec:
      return "INVOLUTION_DEC";
    case SimKind::Hammersley:
      return "HAMMERSLEY";
  }
  return "?";
}

SimKind sim_kind_of(PermClass c) {
  switch (c) {
    case PermClass::Plain:
      return SimKind::Plain;
    case PermClass::InvolutionInc:
      return SimKind::InvolutionInc;
    case PermClass::InvolutionDec:
      return SimKind::InvolutionDec;
  }
  return SimKind::Plain;
}

void SimConfig::validate() const {
  if (trials < 1) throw ArgumentError("simulate: trials must be >= 1");
  if (kind == SimKind::Hammersley) {
    if (!(z > 0) || !std::isfinite(z)) throw ArgumentError("simulate: z must be positive");
    return;
  }
  if (N < 1) throw ArgumentError("simulate: N must be >= 1");
  if (kind != SimKind::Plain && N % 2) throw ArgumentError("simulate: involution classes require even N");
}

long EmpiricalCdf::count_le(int l) const {
  if (l < 0) return 0;
  const int top = std::min(l, max_l());
  long c = 0;
  for (int i = 0; i <= top; ++i) c += freq[i];
  return c;
}

double EmpiricalCdf::cdf(int l) const { return static_cast<double>(count_le(l)) / static_cast<double>(trials); }

void EmpiricalCdf::write_csv(std::ostream& os) const {
  os << "l,count,cumulative,trials,seed,class,N\n";
  long cum = 0;
  std::ostringstream n;
  if (config.kind == SimKind::Hammersley)
    n << std::setprecision(17) << config.z;  // Poisson intensity parameter in place of N
  else
    n << config.N;
  for (int l = 0; l <= max_l(); ++l) {
    cum += freq[l];
    os << l << ',' << freq[l] << ',' << cum << ',' << trials << ',' << config.master_seed << ','
       << to_string(config.kind) << ',' << n.str() << '\n';
  }
}

EmpiricalCdf run(const SimConfig& config, int threads) {
  config.validate();
  constexpr long kBlock = 4096;
  const long blocks = (config.trials + kBlock - 1) / kBlock;
  if (blocks > (1l << 30)) throw ArgumentError("simulate: too many trials");
  std::vector<std::vector<long>> partial(blocks);
  parallel_for(static_cast<int>(blocks), threads, [&](int b) {
    auto& f = partial[b];
    const long t1 = std::min(config.trials, (b + 1) * kBlock);
    for (long t = b * kBlock; t < t1; ++t) {
      Rng rng(config.master_seed, static_cast<std::uint64_t>(t));
      int v = 0;
      switch (config.kind) {
        case SimKind::Plain: {
          const auto p = sample_permutation(config.N, rng);
          v = patience(p.begin(), p.end());
          break;
        }
        case SimKind::InvolutionInc:
        case SimKind::InvolutionDec: {
          const auto p = sample_fpf_involution(config.N, rng);
          const int inc = patience(p.begin(), p.end()), dec = patience(p.rbegin(), p.rend());
          if (static_cast<long>(inc) * dec < config.N)
            throw NumericalError("simulate: lis * lds < N for a sampled involution");
          v = config.kind == SimKind::InvolutionInc ? inc : dec;
          break;
        }
        case SimKind::Hammersley:
          v = sample_hammersley(config.z, rng).lis;
          break;
      }
      if (v >= static_cast<int>(f.size())) f.resize(v + 1, 0);
      ++f[v];
    }
  });
  EmpiricalCdf out;
  out.config = config;
  out.trials = config.trials;
  std::size_t width = config.kind == SimKind::Hammersley ? 1 : static_cast<std::size_t>(config.N) + 1;
  for (const auto& f : partial) width = std::max(width, f.size());
  out.freq.assign(width, 0);
  for (const auto& f : partial)
    for (std::size_t l = 0; l < f.size(); ++l) out.freq[l] += f[l];
  return out;
}

double sup_distance(const EmpiricalCdf& emp, const ExactCdfTable& exact) {
  if (emp.config.kind != sim_kind_of(exact.cls) || emp.config.N != exact.N)
    throw ArgumentError("sup_distance: class or N mismatch");
  double d = 0;
  for (int l = 0; l <= std::max(exact.N, emp.max_l()); ++l) d = std::max(d, std::abs(emp.cdf(l) - exact.cdf(l)));
  return d;
}

double dkw_bound(long trials, double alpha) {
  if (trials < 1 || !(alpha > 0 && alpha < 1)) throw ArgumentError("dkw_bound: need trials >= 1, 0 < alpha < 1");
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(trials)));
}

int soft_beta(PermClass cls) {
  switch (cls) {
    case PermClass::Plain:
      return 2;
    case PermClass::InvolutionDec:
      return 1;
    case PermClass::InvolutionInc:
      return 4;
  }
  return 2;
}

int delta_shift(PermClass cls) {
  switch (cls) {
    case PermClass::Plain:
      return 0;
    case PermClass::InvolutionDec:
      return 1;
    case PermClass::InvolutionInc:
      return -1;
  }
  return 0;
}

void DeltaCurve::write_csv(std::ostream& os) const {
  os << "l,t,delta,class,N\n" << std::setprecision(17);
  for (std::size_t i = 0; i < l.size(); ++i)
    os << l[i] << ',' << t[i] << ',' << value[i] << ',' << to_string(cls) << ',' << N << '\n';
}

DeltaCurve delta_curve(PermClass cls, int N, const std::function<double(int)>& cdf, double t_lo, double t_hi,
                       int threads) {
  if (N < 1) throw DomainError("delta_curve: N must be >= 1");
  if (!(t_lo < t_hi) || t_lo < -10 || t_hi > 10) throw DomainError("delta_curve: need -10 <= t_lo < t_hi <= 10");
  const double c = 2 * std::sqrt(static_cast<double>(N)), s = std::pow(static_cast<double>(N), 1.0 / 6.0);
  const int shift = delta_shift(cls), beta = soft_beta(cls);
  DeltaCurve out;
  out.cls = cls;
  out.N = N;
  for (int l = std::max(0, static_cast<int>(std::ceil(c + t_lo * s - shift)));
       l <= static_cast<int>(std::floor(c + t_hi * s - shift)); ++l) {
    const double t = (l + shift - c) / s;
    if (t < t_lo || t > t_hi) continue;
    if (cls == PermClass::InvolutionDec && l % 2) continue;  // LDS is even: the CDF only steps at even l
    out.l.push_back(l);
    out.t.push_back(t);
  }
  out.value.resize(out.l.size());
  const double scale = std::cbrt(static_cast<double>(N));
  parallel_for(static_cast<int>(out.l.size()), threads, [&](int i) {
    out.value[i] = scale * (cdf(out.l[i]) - gap_soft(beta, out.t[i], Route::Painleve));
  });
  return out;
}

DeltaCurve delta_curve(const ExactCdfTable& table, double t_lo, double t_hi, int threads) {
  std::vector<double> p(table.N + 1);
  for (int l = 0; l <= table.N; ++l) p[l] = table.cdf(l);
  return delta_curve(
      table.cls, table.N, [&](int l) { return l > table.N ? 1.0 : p[l]; }, t_lo, t_hi, threads);
}

DeltaCurve delta_curve(const EmpiricalCdf& emp, double t_lo, double t_hi, int threads) {
  PermClass cls;
  switch (emp.config.kind) {
    case SimKind::Plain:
      cls = PermClass::Plain;
      break;
    case SimKind::InvolutionInc:
      cls = PermClass::InvolutionInc;
      break;
    case SimKind::InvolutionDec:
      cls = PermClass::InvolutionDec;
      break;
    default:
      throw ArgumentError("delta_curve: Hammersley runs have no fixed N");
  }
  return delta_curve(
      cls, emp.config.N, [&](int l) { return emp.cdf(l); }, t_lo, t_hi, threads);
}

double curve_sup_distance(const DeltaCurve& a, const DeltaCurve& b) {
  if (b.t.size() < 2) throw ArgumentError("curve_sup_distance: second curve needs >= 2 points");
  double d = 0;
  bool any = false;
  for (std::size_t i = 0; i < a.t.size(); ++i) {
    const double t = a.t[i];
    if (t < b.t.front() || t > b.t.back()) continue;
    auto it = std::upper_bound(b.t.begin(), b.t.end(), t);
    std::size_t j = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - b.t.begin(), 1), b.t.size() - 1);
    const double w = (t - b.t[j - 1]) / (b.t[j] - b.t[j - 1]);
    const double bv = (1 - w) * b.value[j - 1] + w * b.value[j];
    d = std::max(d, std::abs(a.value[i] - bv));
    any = true;
  }
  if (!any) throw ArgumentError("curve_sup_distance: curves do not overlap");
  return d;
}

}  // namespace lislab
