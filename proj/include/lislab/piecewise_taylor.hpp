#pragma once

// Chain of polynomial (Taylor) pieces covering an interval.

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <gmpxx.h>

#include "lislab/errors.hpp"

namespace lislab {

// Variable of the series: r itself, or s = sqrt(r).
enum class VarPower { Linear, Sqrt };

template <class T>
struct TaylorSegment {
  T center{};
  T step{};  // signed; the segment covers [center, center + step]
  std::vector<T> coeffs;

  T lower() const { return step < T(0) ? T(center + step) : center; }
  T upper() const { return step < T(0) ? center : T(center + step); }

  T eval(const T& x) const {
    const T h = x - center;
    T v(0);
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * h + coeffs[k];
    return v;
  }
  T eval_deriv(const T& x, int order) const {
    const T h = x - center;
    T v(0);
    for (std::size_t k = coeffs.size(); k-- > static_cast<std::size_t>(order);) {
      T f(1);
      for (int j = 0; j < order; ++j) f *= T(static_cast<long>(k) - j);
      v = v * h + f * coeffs[k];
    }
    return v;
  }
  // Integral of the polynomial from center to x.
  T antiderivative(const T& x) const {
    const T h = x - center;
    T v(0);
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * h + coeffs[k] / T(static_cast<long>(k) + 1);
    return v * h;
  }
};

template <class T>
class PiecewiseTaylor {
 public:
  PiecewiseTaylor() = default;
  PiecewiseTaylor(std::string id, VarPower vp, std::vector<TaylorSegment<T>> segs)
      : id_(std::move(id)), var_(vp), segs_(std::move(segs)) {
    finalize();
  }

  const std::string& problem_id() const { return id_; }
  VarPower var_power() const { return var_; }
  const std::vector<TaylorSegment<T>>& segments() const { return segs_; }
  // Domain in the series variable.
  T var_lo() const { return segs_.front().lower(); }
  T var_hi() const { return segs_.back().upper(); }
  // Domain in r.
  T lo() const { return to_r(var_lo()); }
  T hi() const { return to_r(var_hi()); }
  bool contains(const T& r) const { return !(r < lo()) && !(hi() < r); }

  // Value at r (r mapped to the series variable when var_power is Sqrt).
  T eval(const T& r) const { return eval_var(to_var(r)); }
  // d^order/dr^order; order <= 2 for Sqrt.
  T eval_deriv(const T& r, int order) const {
    if (order == 0) return eval(r);
    if (var_ == VarPower::Linear) return eval_var_deriv(r, order);
    const T s = to_var(r);
    const T d1 = eval_var_deriv(s, 1);
    if (order == 1) return d1 / (T(2) * s);
    if (order == 2) return (eval_var_deriv(s, 2) - d1 / s) / (T(4) * s * s);
    throw ArgumentError("PiecewiseTaylor: derivative order > 2 in sqrt variable");
  }

  T eval_var(const T& x) const { return segment_for(x).eval(x); }
  T eval_var_deriv(const T& x, int order) const {
    if (order < 0) throw ArgumentError("PiecewiseTaylor: negative derivative order");
    return segment_for(x).eval_deriv(x, order);
  }

  // Integral over [x0, x1] in the series variable (exact per piece).
  T integral_var(const T& x0, const T& x1) const { return primitive(x1) - primitive(x0); }

  // Integral over [r0, r1] with respect to r.
  T integral(const T& r0, const T& r1) const {
    if (var_ == VarPower::Linear) return integral_var(r0, r1);
    // dr = 2 s ds.
    return primitive_r(to_var(r1)) - primitive_r(to_var(r0));
  }

  void write(std::ostream& os) const;
  static PiecewiseTaylor read(std::istream& is);

 private:
  T to_var(const T& r) const {
    if (var_ == VarPower::Linear) return r;
    if constexpr (std::is_floating_point_v<T>) {
      if (r < T(0)) throw DomainError("PiecewiseTaylor: negative r for sqrt variable");
      return std::sqrt(r);
    } else {
      throw ArgumentError("PiecewiseTaylor: sqrt variable needs a floating type; use eval_var");
    }
  }
  T to_r(const T& x) const { return var_ == VarPower::Linear ? x : T(x * x); }

  const TaylorSegment<T>& segment_for(const T& x) const {
    if (segs_.empty()) throw DomainError("PiecewiseTaylor: empty");
    if constexpr (std::is_floating_point_v<T>) {
      // Accept endpoints reproduced with rounding error.
      const T tol = T(64) * std::numeric_limits<T>::epsilon() * (T(1) + std::abs(x));
      if (x < var_lo() && !(var_lo() - x > tol)) return segs_.front();
      if (var_hi() < x && !(x - var_hi() > tol)) return segs_.back();
    }
    if (x < var_lo() || var_hi() < x) {
      std::ostringstream os;
      os << "PiecewiseTaylor(" << id_ << "): point outside solved domain";
      throw DomainError(os.str());
    }
    auto it = std::upper_bound(lowers_.begin(), lowers_.end(), x);
    std::size_t i = it == lowers_.begin() ? 0 : static_cast<std::size_t>(it - lowers_.begin()) - 1;
    return segs_[i];
  }

  T primitive(const T& x) const {
    const auto& seg = segment_for(x);
    const std::size_t i = &seg - segs_.data();
    return prefix_[i] + seg.antiderivative(x) - seg.antiderivative(seg.lower());
  }

  static TaylorSegment<T> times_2s(const TaylorSegment<T>& seg) {
    TaylorSegment<T> g{seg.center, seg.step, std::vector<T>(seg.coeffs.size() + 1, T(0))};
    for (std::size_t k = 0; k < seg.coeffs.size(); ++k) {
      g.coeffs[k + 1] += T(2) * seg.coeffs[k];
      g.coeffs[k] += T(2) * seg.center * seg.coeffs[k];
    }
    return g;
  }

  T primitive_r(const T& x) const {
    const auto& seg = segment_for(x);
    const std::size_t i = &seg - segs_.data();
    const TaylorSegment<T> g = times_2s(seg);
    return prefix_r_[i] + g.antiderivative(x) - g.antiderivative(g.lower());
  }

  void finalize() {
    std::sort(segs_.begin(), segs_.end(),
              [](const TaylorSegment<T>& a, const TaylorSegment<T>& b) { return a.lower() < b.lower(); });
    lowers_.clear();
    prefix_.assign(1, T(0));
    for (const auto& s : segs_) {
      if (s.coeffs.size() < 3) throw ArgumentError("PiecewiseTaylor: segments need >= 3 coefficients");
      lowers_.push_back(s.lower());
      prefix_.push_back(prefix_.back() + s.antiderivative(s.upper()) - s.antiderivative(s.lower()));
    }
    prefix_r_.assign(1, T(0));
    if (var_ == VarPower::Sqrt)
      for (const auto& s : segs_) {
        const TaylorSegment<T> g = times_2s(s);
        prefix_r_.push_back(prefix_r_.back() + g.antiderivative(g.upper()) - g.antiderivative(g.lower()));
      }
  }

  std::string id_;
  VarPower var_ = VarPower::Linear;
  std::vector<TaylorSegment<T>> segs_;
  std::vector<T> lowers_;
  std::vector<T> prefix_;    // integral from var_lo to the lower end of segment i
  std::vector<T> prefix_r_;  // same, with respect to r (Sqrt only)
};

namespace detail {
template <class T>
void write_number(std::ostream& os, const T& v) {
  if constexpr (std::is_same_v<T, mpq_class>) {
    os << v.get_str();
  } else {
    os << std::setprecision(std::numeric_limits<T>::max_digits10) << v;
  }
}
template <class T>
T parse_number(const std::string& s) {
  if constexpr (std::is_same_v<T, mpq_class>) {
    mpq_class q(s);
    q.canonicalize();
    return q;
  } else {
    std::size_t pos = 0;
    T v;
    if (s.find('/') != std::string::npos) {
      mpq_class q(s);
      return static_cast<T>(q.get_d());
    }
    if constexpr (std::is_same_v<T, long double>) v = std::stold(s, &pos);
    else v = static_cast<T>(std::stod(s, &pos));
    if (pos != s.size()) throw IoError("PiecewiseTaylor: bad number '" + s + "'");
    return v;
  }
}
}  // namespace detail

inline constexpr const char* kPiecewiseTaylorMagic = "lislab-piecewise-taylor";
inline constexpr int kPiecewiseTaylorVersion = 1;

template <class T>
void PiecewiseTaylor<T>::write(std::ostream& os) const {
  os << kPiecewiseTaylorMagic << ' ' << kPiecewiseTaylorVersion << '\n';
  os << "problem " << id_ << '\n';
  os << "var_power " << (var_ == VarPower::Linear ? "1" : "1/2") << '\n';
  os << "segments " << segs_.size() << '\n';
  for (const auto& s : segs_) {
    detail::write_number(os, s.center);
    os << ' ';
    detail::write_number(os, s.step);
    os << ' ' << s.coeffs.size();
    for (const auto& c : s.coeffs) {
      os << ' ';
      detail::write_number(os, c);
    }
    os << '\n';
  }
  if (!os) throw IoError("PiecewiseTaylor: write failed");
}

template <class T>
PiecewiseTaylor<T> PiecewiseTaylor<T>::read(std::istream& is) {
  std::string magic, key, id, vp;
  int version = 0;
  std::size_t n = 0;
  if (!(is >> magic >> version) || magic != kPiecewiseTaylorMagic)
    throw IoError("PiecewiseTaylor: not a piecewise-taylor file");
  if (version != kPiecewiseTaylorVersion) throw IoError("PiecewiseTaylor: unsupported version");
  if (!(is >> key >> id) || key != "problem") throw IoError("PiecewiseTaylor: missing problem line");
  if (!(is >> key >> vp) || key != "var_power" || (vp != "1" && vp != "1/2"))
    throw IoError("PiecewiseTaylor: missing var_power line");
  if (!(is >> key >> n) || key != "segments") throw IoError("PiecewiseTaylor: missing segments line");
  std::vector<TaylorSegment<T>> segs(n);
  for (auto& s : segs) {
    std::string c, st;
    std::size_t m = 0;
    if (!(is >> c >> st >> m)) throw IoError("PiecewiseTaylor: truncated segment");
    s.center = detail::parse_number<T>(c);
    s.step = detail::parse_number<T>(st);
    s.coeffs.resize(m);
    for (auto& x : s.coeffs) {
      std::string w;
      if (!(is >> w)) throw IoError("PiecewiseTaylor: truncated coefficients");
      x = detail::parse_number<T>(w);
    }
  }
  return PiecewiseTaylor<T>(id, vp == "1" ? VarPower::Linear : VarPower::Sqrt, std::move(segs));
}

}  // namespace lislab
