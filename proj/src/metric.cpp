#include "ecss/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace ecss {

MetricInstance MetricInstance::euclidean(std::string name, int dim,
                                         std::vector<std::vector<double>> points) {
  if (dim < 1 || dim > 3) {
    throw InvalidInstance("euclidean dimension must be 1, 2 or 3, got " +
                          std::to_string(dim));
  }
  if (points.empty()) throw InvalidInstance("instance has no points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != static_cast<std::size_t>(dim)) {
      throw InvalidInstance("point " + std::to_string(i) + " has " +
                            std::to_string(points[i].size()) +
                            " coordinates, expected " + std::to_string(dim));
    }
    for (double c : points[i]) {
      if (!std::isfinite(c)) {
        throw InvalidInstance("point " + std::to_string(i) +
                              " has a non-finite coordinate");
      }
    }
  }
  MetricInstance m;
  m.name_ = std::move(name);
  m.kind_ = Kind::kEuclidean;
  m.dim_ = dim;
  m.n_ = points.size();
  m.points_ = std::move(points);
  m.fill_from_points();
  for (std::size_t i = 0; i < m.n_; ++i) {
    for (std::size_t j = i + 1; j < m.n_; ++j) {
      if (m.dist_[i * m.n_ + j] <= kDistEps) {
        throw InvalidInstance("points " + std::to_string(i) + " and " +
                              std::to_string(j) + " coincide");
      }
    }
  }
  return m;
}

void MetricInstance::fill_from_points() {
  dist_.assign(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      double acc = 0.0;
      for (int c = 0; c < dim_; ++c) {
        const double diff = points_[i][c] - points_[j][c];
        acc += diff * diff;
      }
      const double d = std::sqrt(acc);
      dist_[i * n_ + j] = d;
      dist_[j * n_ + i] = d;
    }
  }
}

MetricInstance MetricInstance::matrix(std::string name,
                                      std::vector<std::vector<double>> dist) {
  const std::size_t n = dist.size();
  if (n == 0) throw InvalidInstance("instance has no points");
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) {
      throw InvalidInstance("matrix row " + std::to_string(i) + " has length " +
                            std::to_string(dist[i].size()) + ", expected " +
                            std::to_string(n));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(dist[i][i]) > kDistEps) {
      throw InvalidInstance("non-zero diagonal at " + std::to_string(i));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(dist[i][j])) {
        throw InvalidInstance("non-finite distance at (" + std::to_string(i) +
                              "," + std::to_string(j) + ")");
      }
      if (std::abs(dist[i][j] - dist[j][i]) > kDistEps) {
        throw InvalidInstance("asymmetric entry at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
      }
      if (i != j && dist[i][j] <= kDistEps) {
        throw InvalidInstance("non-positive distance between distinct points " +
                              std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        const double excess = dist[x][z] - dist[x][y] - dist[y][z];
        if (excess > kDistEps) {
          std::ostringstream msg;
          msg << "triangle inequality violated: d(" << x << "," << z
              << ")=" << dist[x][z] << " > d(" << x << "," << y
              << ")+d(" << y << "," << z << ")=" << dist[x][y] + dist[y][z]
              << " (excess " << excess << ")";
          throw InvalidInstance(msg.str());
        }
      }
    }
  }
  MetricInstance m;
  m.name_ = std::move(name);
  m.kind_ = Kind::kMatrix;
  m.n_ = n;
  m.dist_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // Symmetrize so that d(a,b) == d(b,a) bit for bit.
      m.dist_[i * n + j] = i < j ? dist[i][j] : dist[j][i];
    }
    m.dist_[i * n + i] = 0.0;
  }
  return m;
}

MetricInstance MetricInstance::restrict(const PointSet& subset,
                                        std::string name) const {
  MetricInstance m;
  m.name_ = name.empty() ? name_ : std::move(name);
  m.kind_ = kind_;
  m.dim_ = dim_;
  m.n_ = subset.size();
  if (kind_ == Kind::kEuclidean) {
    m.points_.reserve(subset.size());
    for (PointId p : subset) m.points_.push_back(points_[p]);
  }
  m.dist_.resize(m.n_ * m.n_);
  for (std::size_t i = 0; i < m.n_; ++i) {
    for (std::size_t j = 0; j < m.n_; ++j) {
      m.dist_[i * m.n_ + j] = (*this)(subset[i], subset[j]);
    }
  }
  return m;
}

MetricInstance MetricInstance::scaled(double factor) const {
  MetricInstance m = *this;
  for (auto& row : m.points_) {
    for (double& c : row) c *= factor;
  }
  for (double& d : m.dist_) d *= factor;
  return m;
}

PointSet MetricInstance::all_points() const {
  PointSet all(n_);
  std::iota(all.begin(), all.end(), PointId{0});
  return all;
}

MetricStats metric_stats(const MetricInstance& instance) {
  return metric_stats(instance, instance.all_points());
}

MetricStats metric_stats(const MetricInstance& instance, const PointSet& subset) {
  MetricStats s;
  if (subset.size() < 2) return s;
  s.min_interpoint = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      const double d = instance(subset[i], subset[j]);
      s.diameter = std::max(s.diameter, d);
      s.min_interpoint = std::min(s.min_interpoint, d);
    }
  }
  s.aspect_ratio = s.diameter / s.min_interpoint;
  return s;
}

PointSet ball_members(const MetricInstance& instance, const Ball& ball) {
  return ball_members(instance, instance.all_points(), ball);
}

PointSet ball_members(const MetricInstance& instance, const PointSet& within,
                      const Ball& ball) {
  PointSet out;
  for (PointId p : within) {
    if (instance(ball.center, p) <= ball.radius + kDistEps) out.push_back(p);
  }
  return out;
}

PointSet build_net(const MetricInstance& instance, const PointSet& subset,
                   double alpha) {
  return build_net_seeded(instance, subset, {}, alpha);
}

PointSet build_net_seeded(const MetricInstance& instance, const PointSet& subset,
                          const PointSet& seeds, double alpha) {
  PointSet chosen = seeds;
  for (PointId p : subset) {
    bool far = true;
    for (PointId c : chosen) {
      if (c == p || instance(c, p) <= alpha) {
        far = false;
        break;
      }
    }
    if (far) chosen.push_back(p);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

NetCheck verify_net(const MetricInstance& instance, const PointSet& subset,
                    const PointSet& net, double alpha) {
  NetCheck check;
  check.is_covering = std::all_of(subset.begin(), subset.end(), [&](PointId x) {
    return std::any_of(net.begin(), net.end(), [&](PointId y) {
      return instance(x, y) <= alpha + kDistEps;
    });
  });
  check.is_packing = true;
  for (std::size_t i = 0; i < net.size() && check.is_packing; ++i) {
    for (std::size_t j = i + 1; j < net.size(); ++j) {
      if (!(instance(net[i], net[j]) > alpha)) {
        check.is_packing = false;
        break;
      }
    }
  }
  return check;
}

namespace {

// Radius-r balls centered anywhere in the instance, each chosen to cover the
// most uncovered members.
std::size_t greedy_cover(const MetricInstance& instance, const PointSet& members, double r) {
  std::vector<char> covered(members.size(), 0);
  std::size_t left = members.size(), balls = 0;
  while (left > 0) {
    std::size_t best_gain = 0;
    PointId best = 0;
    for (PointId c = 0; c < instance.size(); ++c) {
      std::size_t gain = 0;
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (!covered[i] && instance(c, members[i]) <= r + kDistEps) ++gain;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (!covered[i] && instance(best, members[i]) <= r + kDistEps) {
        covered[i] = 1;
        --left;
      }
    }
    ++balls;
  }
  return balls;
}

}  // namespace

int estimate_doubling_dimension(const MetricInstance& instance) {
  const std::size_t n = instance.size();
  std::size_t worst = 1;
  std::vector<PointId> order(n);
  PointSet members;
  std::vector<PointId> net;
  for (PointId x = 0; x < n; ++x) {
    std::iota(order.begin(), order.end(), PointId{0});
    std::sort(order.begin(), order.end(), [&](PointId a, PointId b) {
      const double da = instance(x, a), db = instance(x, b);
      return da < db || (da == db && a < b);
    });
    for (std::size_t yi = 1; yi < n; ++yi) {
      // Equal radii give identical balls.
      if (yi + 1 < n && instance(x, order[yi]) == instance(x, order[yi + 1])) continue;
      const double r = instance(x, order[yi]) / 2.0;
      members.clear();
      for (PointId p : order) {
        if (instance(x, p) > 2.0 * r + kDistEps) break;
        members.push_back(p);
      }
      std::sort(members.begin(), members.end());
      net.clear();
      for (PointId p : members) {
        bool far = true;
        for (PointId c : net) {
          if (instance(c, p) <= r) {
            far = false;
            break;
          }
        }
        if (far) net.push_back(p);
      }
      if (net.size() <= worst) continue;
      worst = std::max(worst, std::min(net.size(), greedy_cover(instance, members, r)));
    }
  }
  int k = 0;
  while ((std::size_t{1} << k) < worst) ++k;
  return k;
}

}  // namespace ecss
