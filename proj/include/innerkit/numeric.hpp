#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <type_traits>

namespace innerkit {

// Neumaier-compensated accumulation; summation order is the call order, so
// results are deterministic.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    if constexpr (std::is_floating_point_v<T>) {
      add_real(sum_, comp_, x);
    } else {
      auto re = sum_.real(), ce = comp_.real();
      auto im = sum_.imag(), ci = comp_.imag();
      add_real(re, ce, x.real());
      add_real(im, ci, x.imag());
      sum_ = T(re, im);
      comp_ = T(ce, ci);
    }
  }
  T value() const { return sum_ + comp_; }

 private:
  template <typename R>
  static void add_real(R& s, R& c, R x) {
    const R t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }

  T sum_{};
  T comp_{};
};

// n (n-1) ... (n-m+1); zero when m > n.
inline double falling_factorial(std::size_t n, std::size_t m) {
  if (m > n) return 0.0;
  double p = 1.0;
  for (std::size_t k = 0; k < m; ++k) p *= static_cast<double>(n - k);
  return p;
}

inline double factorial(std::size_t m) { return falling_factorial(m, m); }

// Bound on sum_{n > start} term(n) for nonnegative terms. ratio_sup(n) must be a
// certified bound on sup_{m >= n} term(m+1)/term(m). Terms are summed
// explicitly until the ratio bound drops below 1, then the geometric closure
// term(n) q / (1 - q) finishes the estimate. Returns +inf if the ratio never
// drops below 1 within max_walk steps.
inline double geometric_tail(const std::function<double(std::size_t)>& term,
                             const std::function<double(std::size_t)>& ratio_sup,
                             std::size_t start, std::size_t max_walk = 1u << 20) {
  double acc = 0.0;
  std::size_t n = start;
  for (std::size_t step = 0; step < max_walk; ++step, ++n) {
    const double q = ratio_sup(n);
    if (q < 1.0) return acc + term(n) * q / (1.0 - q);
    acc += term(n + 1);
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace innerkit
