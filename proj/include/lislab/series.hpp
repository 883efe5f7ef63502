#pragma once

// Formal power-series recurrences shared by the floating solvers and the
// exact enumeration backends. T is any field type constructible from int:
// double, long double, mpq_class, ModP.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "lislab/errors.hpp"

namespace lislab::series {

template <class T>
T factorial(int n) {
  T f(1);
  for (int i = 2; i <= n; ++i) f *= T(i);
  return f;
}

// sum_{i<n} a[i] * b[-i]; types may supply a fused T::dot_rev.
template <class T>
T dot_rev(const T* a, const T* b, int n) {
  if constexpr (requires { T::dot_rev(a, b, n); }) {
    return T::dot_rev(a, b, n);
  } else {
    T s(0);
    for (int i = 0; i < n; ++i) s += a[i] * b[-i];
    return s;
  }
}

// Coefficient k of the Cauchy product of a and b (entries past the end are zero).
template <class T>
T cauchy(const std::vector<T>& a, const std::vector<T>& b, int k) {
  const int ja = std::min<int>(k, static_cast<int>(a.size()) - 1);
  const int j0 = std::max(0, k - (static_cast<int>(b.size()) - 1));
  if (ja < j0) return T(0);
  return dot_rev(a.data() + j0, b.data() + (k - j0), ja - j0 + 1);
}

// r[i] = 1/i for i = 1..n (r[0] = 0). Types declaring kBatchInvert (where
// inversion is costly relative to multiplication) use a single inversion.
template <class T>
std::vector<T> reciprocals(int n) {
  std::vector<T> r(std::max(n, 0) + 1, T(0));
  if constexpr (requires { T::kBatchInvert; }) {
    std::vector<T> pre(r.size(), T(1));
    for (int i = 1; i <= n; ++i) pre[i] = pre[i - 1] * T(i);
    T inv = T(1) / pre[n];
    for (int i = n; i >= 1; --i) {
      r[i] = inv * pre[i - 1];
      inv *= T(i);
    }
  } else {
    for (int i = 1; i <= n; ++i) r[i] = T(1) / T(i);
  }
  return r;
}

namespace detail {
inline void require_nonzero(bool zero, const char* what, int order) {
  if (zero) throw NumericalError(std::string(what) + ": vanishing linear factor at order " + std::to_string(order));
}
}  // namespace detail

// a_0..a_M with v(r;a) = r^{a+1} sum_k a_k r^k solving the sigma-PIII' boundary
// problem; solved order by order from the differentiated third-order form.
template <class T>
std::vector<T> v_coefficients(int a, int M) {
  if (a < 0) throw DomainError("v_coefficients: a must be >= 0");
  if (M < 0) throw DomainError("v_coefficients: M must be >= 0");
  // B_j = (a+1+j) c_j and C_j = (6(a+1+j) - 4) c_j, so that the quadratic
  // terms -4 (c*B)_m + 6 (B*B)_m collapse to the single product (C*B)_m.
  std::vector<T> c(M + 1, T(0)), B(M + 1, T(0)), C(M + 1, T(0));
  const auto rec = reciprocals<T>(2 * a + M + 2);
  T den(1);
  for (int i = 0; i < a + 1; ++i) den *= T(4);
  c[0] = T(-1) / (den * factorial<T>(a) * factorial<T>(a + 1));
  B[0] = T(a + 1) * c[0];
  C[0] = T(6 * (a + 1) - 4) * c[0];
  for (int k = 1; k <= M; ++k) {
    T rhs = -(T(2 * (a + k) - 1) * rec[2]) * c[k - 1];
    const int m = k - a - 1;
    if (m >= 0) rhs -= cauchy(C, B, m);  // entries through k-1 >= m are final
    detail::require_nonzero(T(a + 1 + k) * T(k) * T(2 * a + k) == T(0), "v_coefficients", k);
    c[k] = rhs * rec[a + 1 + k] * rec[k] * rec[2 * a + k];
    B[k] = T(a + 1 + k) * c[k];
    C[k] = T(6 * (a + 1 + k) - 4) * c[k];
  }
  return c;
}

// b_0..b_M with p(s;a) = s^a sum_k b_k s^k, s = sqrt(r), solving the PIII'
// boundary problem. For a = 0 the solution is p == 1.
template <class T>
std::vector<T> p_coefficients(int a, int M) {
  if (a < 0) throw DomainError("p_coefficients: a must be >= 0");
  if (M < 0) throw DomainError("p_coefficients: M must be >= 0");
  std::vector<T> b(M + 1, T(0));
  b[0] = T(1);
  if (a == 0) return b;
  const auto rec = reciprocals<T>(2 * a + M);
  T den(1);
  for (int i = 0; i < a; ++i) den *= T(2);
  b[0] = T(1) / (den * factorial<T>(a));
  std::vector<T> E, F, sq, cube, quint, ee, sqF, bee;
  auto extend = [&](int m) {
    while (static_cast<int>(sq.size()) <= m) {
      const int j = static_cast<int>(sq.size());
      E.push_back(T(a + j) * b[j]);
      F.push_back(T(a + j) * E[j]);
      sq.push_back(cauchy(b, b, j));
      cube.push_back(cauchy(sq, b, j));
      quint.push_back(cauchy(cube, sq, j));
      ee.push_back(cauchy(E, E, j));
      sqF.push_back(cauchy(sq, F, j));
      bee.push_back(cauchy(b, ee, j));
    }
  };
  for (int k = 1; k <= M; ++k) {
    T rhs = k >= 2 ? T(-b[k - 2]) : T(0);
    const int m1 = k - 2 * a, m2 = k - 2 * a - 2, m3 = k - 4 * a - 2;
    if (m1 >= 0) {
      extend(m1);
      rhs += sqF[m1] - bee[m1];
    }
    if (m2 >= 0) rhs += T(2) * cube[m2];
    if (m3 >= 0) rhs -= quint[m3];
    detail::require_nonzero(T(k) * T(2 * a + k) == T(0), "p_coefficients", k);
    b[k] = rhs * rec[k] * rec[2 * a + k];
  }
  return b;
}

// exp(h) truncated after degree n, for h with h[0] = 0.
template <class T>
std::vector<T> exp_series(const std::vector<T>& h, int n) {
  if (!h.empty() && !(h[0] == T(0))) throw ArgumentError("exp_series: constant term must vanish");
  // Nonzero runs [first, last] of k h_k, summed with one fused product each.
  std::vector<T> kh(n + 1, T(0));
  std::vector<std::pair<int, int>> runs;
  for (int k = 1; k < static_cast<int>(h.size()) && k <= n; ++k)
    if (!(h[k] == T(0))) {
      kh[k] = T(k) * h[k];
      if (!runs.empty() && runs.back().second == k - 1)
        runs.back().second = k;
      else
        runs.emplace_back(k, k);
    }
  const auto rec = reciprocals<T>(n);
  std::vector<T> e(n + 1, T(0));
  e[0] = T(1);
  for (int m = 1; m <= n; ++m) {
    T s(0);
    for (const auto& [lo, hi] : runs) {
      if (lo > m) break;
      const int top = std::min(hi, m);
      s += dot_rev(kh.data() + lo, e.data() + (m - lo), top - lo + 1);
    }
    e[m] = s * rec[m];
  }
  return e;
}

}  // namespace lislab::series
