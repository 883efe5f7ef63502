#pragma once

// Arithmetic modulo a word-size prime, and Chinese remaindering to GMP integers.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace lislab {

// Residue modulo the calling thread's current prime (set via ModP::Scope),
// stored in Montgomery form with R = 2^64. Primes must be odd and < 2^62.
class ModP {
  struct Ctx {
    std::uint64_t p = 0, pinv = 0, r2 = 0;
  };

 public:
  using u64 = std::uint64_t;
  using u128 = unsigned __int128;
  static constexpr bool kBatchInvert = true;  // inversion costs ~90 multiplications

  ModP() = default;
  ModP(long long v) {  // NOLINT: implicit like an integer literal
    const u64 p = ctx_.p;
    long long r = static_cast<long long>(static_cast<__int128>(v) % static_cast<__int128>(p));
    const u64 x = static_cast<u64>(r < 0 ? r + static_cast<long long>(p) : r);
    v_ = redc(static_cast<u128>(x) * ctx_.r2);
  }

  static u64 mod() { return ctx_.p; }
  // Any x < 2^64 (not necessarily reduced).
  static ModP from_u64(u64 x) {
    ModP r;
    r.v_ = redc(static_cast<u128>(x) * ctx_.r2);  // x * r2 < p * 2^64
    return r;
  }

  struct Scope {
    explicit Scope(u64 p);
    ~Scope() { ctx_ = saved_; }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    Ctx saved_;
  };

  // Canonical residue in [0, p).
  u64 value() const { return redc(v_); }

  ModP& operator+=(ModP o) {
    v_ += o.v_;
    if (v_ >= ctx_.p) v_ -= ctx_.p;
    return *this;
  }
  ModP& operator-=(ModP o) {
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + ctx_.p - o.v_;
    return *this;
  }
  ModP& operator*=(ModP o) {
    v_ = redc(static_cast<u128>(v_) * o.v_);
    return *this;
  }
  ModP& operator/=(ModP o) { return *this *= o.inverse(); }
  ModP operator-() const { return ModP() -= *this; }
  friend ModP operator+(ModP a, ModP b) { return a += b; }
  friend ModP operator-(ModP a, ModP b) { return a -= b; }
  friend ModP operator*(ModP a, ModP b) { return a *= b; }
  friend ModP operator/(ModP a, ModP b) { return a /= b; }
  friend bool operator==(ModP a, ModP b) { return a.v_ == b.v_; }

  ModP pow(u64 e) const {
    ModP r(1), b = *this;
    for (; e; e >>= 1, b *= b)
      if (e & 1) r *= b;
    return r;
  }
  ModP inverse() const;  // throws NumericalError on zero

  // sum_{i<n} a[i] * b[-i] with a single reduction: the exact 192-bit sum
  // S of Montgomery products is mapped to S / 2^64 mod p.
  static ModP dot_rev(const ModP* a, const ModP* b, int n) {
    u128 lo = 0;
    u64 hi = 0;
    for (int i = 0; i < n; ++i) {
      const u128 t = static_cast<u128>(a[i].v_) * b[-i].v_;
      lo += t;
      hi += lo < t;
    }
    const u64 p = ctx_.p;
    // S = hi 2^128 + x 2^64 + y  ->  hi R + x + y R^{-1}  (mod p)
    const u64 x = static_cast<u64>(lo >> 64), y = static_cast<u64>(lo);
    ModP r;
    r.v_ = redc(y);
    ModP t;
    t.v_ = x % p;
    r += t;
    if (hi) {
      t.v_ = redc(static_cast<u128>(hi) * ctx_.r2);
      r += t;
    }
    return r;
  }

 private:
  static u64 redc(u128 t) {
    const u64 m = static_cast<u64>(t) * ctx_.pinv;
    const u64 r = static_cast<u64>((t + static_cast<u128>(m) * ctx_.p) >> 64);
    return r >= ctx_.p ? r - ctx_.p : r;
  }

  u64 v_ = 0;
  static thread_local Ctx ctx_;
  friend struct Scope;
};

// The `count` largest primes below 2^62, in decreasing order.
std::vector<std::uint64_t> word_primes(int count);

// Integer x with 0 <= x < prod(primes) and x = residues[i] mod primes[i].
mpz_class crt_reconstruct(const std::vector<std::uint64_t>& residues, const std::vector<std::uint64_t>& primes);

}  // namespace lislab
