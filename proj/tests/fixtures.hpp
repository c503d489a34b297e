#pragma once

#include <cmath>

#include "ecss/metric.hpp"

namespace fx {

inline ecss::MetricInstance triangle() {
  return ecss::MetricInstance::euclidean("triangle", 2,
                                         {{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}});
}

inline ecss::MetricInstance collinear(int n = 3) {
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < n; ++i) pts.push_back({static_cast<double>(i)});
  return ecss::MetricInstance::euclidean("line", 1, pts);
}

inline ecss::MetricInstance square() {
  return ecss::MetricInstance::euclidean("square", 2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

}  // namespace fx
