#pragma once

#include <cmath>
#include <utility>

namespace cmpk::detail {

/// Unevaluated sum hi + lo with |lo| <= ulp(hi) / 2.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;
};

inline std::pair<double, double> two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline std::pair<double, double> two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

/// Accumulates sum_i a_i * (b_i + c_i) with the a_i * b_i products kept in
/// double-double; the a_i * c_i corrections are small and added in double.
class CompensatedSum {
 public:
  void add_product(double a, double b, double c = 0.0) {
    const auto [p, pe] = two_prod(a, b);
    const auto [s, se] = two_sum(hi_, p);
    hi_ = s;
    lo_ += se + pe + a * c;
  }
  void add(double v) {
    const auto [s, se] = two_sum(hi_, v);
    hi_ = s;
    lo_ += se;
  }
  DoubleDouble value() const {
    const auto [s, e] = two_sum(hi_, lo_);
    return {s, e};
  }

 private:
  double hi_ = 0.0;
  double lo_ = 0.0;
};

}  // namespace cmpk::detail
