#include "lislab/modular.hpp"

#include "lislab/errors.hpp"

namespace lislab {

thread_local ModP::Ctx ModP::ctx_{};

ModP::Scope::Scope(u64 p) {
  saved_ = ctx_;
  if (p % 2 == 0 || p >= (1ull << 62) || p < 3) throw ArgumentError("ModP: modulus must be an odd prime < 2^62");
  u64 inv = p;  // Newton iteration for p^{-1} mod 2^64
  for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
  const u64 r1 = (0 - p) % p;  // 2^64 mod p
  ctx_ = {p, 0 - inv, static_cast<u64>(static_cast<u128>(r1) * r1 % p)};
}

ModP ModP::inverse() const {
  if (v_ == 0) throw NumericalError("ModP: inverse of zero");
  return pow(mod() - 2);
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1;
  for (b %= m; e; e >>= 1, b = mulmod(b, b, m))
    if (e & 1) r = mulmod(r, b, m);
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
    if (n % p == 0) return n == p;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace

std::vector<u64> word_primes(int count) {
  std::vector<u64> out;
  for (u64 n = (1ull << 62) - 1; static_cast<int>(out.size()) < count; n -= 2)
    if (is_prime(n)) out.push_back(n);
  return out;
}

mpz_class crt_reconstruct(const std::vector<u64>& residues, const std::vector<u64>& primes) {
  if (residues.size() != primes.size() || primes.empty())
    throw ArgumentError("crt_reconstruct: residue/prime count mismatch");
  mpz_class x = static_cast<unsigned long>(residues[0]);
  mpz_class M = static_cast<unsigned long>(primes[0]);
  mpz_class tmp;
  for (std::size_t i = 1; i < primes.size(); ++i) {
    const u64 p = primes[i];
    const mpz_class pz = static_cast<unsigned long>(p);
    tmp = x % pz;
    const u64 xm = tmp.get_ui();
    tmp = M % pz;
    const u64 Mm = tmp.get_ui();
    const u64 diff = (residues[i] % p + p - xm) % p;
    const u64 t = mulmod(diff, powmod(Mm, p - 2, p), p);
    x += M * static_cast<unsigned long>(t);
    M *= pz;
  }
  return x;
}

}  // namespace lislab
