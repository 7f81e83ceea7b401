#pragma once

#include <vector>

namespace oracle {

// Fornberg's weights for the derivative of order `order` at 0 from the given
// offsets, in long double.
inline std::vector<long double> fd_weights(const std::vector<long double>& offsets, int order) {
  const int n = static_cast<int>(offsets.size()) - 1;
  std::vector<std::vector<long double>> c(n + 1, std::vector<long double>(order + 1, 0.0L));
  long double c1 = 1.0L;
  long double c4 = offsets[0];
  c[0][0] = 1.0L;
  for (int i = 1; i <= n; ++i) {
    const int mn = i < order ? i : order;
    long double c2 = 1.0L;
    const long double c5 = c4;
    c4 = offsets[i];
    for (int j = 0; j < i; ++j) {
      const long double c3 = offsets[i] - offsets[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<long double> w(n + 1);
  for (int i = 0; i <= n; ++i) w[i] = c[i][order];
  return w;
}

// Central difference of order `order` with 2*half+1 points and spacing h.
template <class F>
long double central_derivative(F&& f, long double x, long double h, int order, int half) {
  std::vector<long double> offsets;
  for (int i = -half; i <= half; ++i) offsets.push_back(static_cast<long double>(i));
  const auto w = fd_weights(offsets, order);
  long double acc = 0.0L;
  for (int i = -half; i <= half; ++i) acc += w[i + half] * f(x + i * h);
  long double scale = 1.0L;
  for (int i = 0; i < order; ++i) scale *= h;
  return acc / scale;
}

}  // namespace oracle
