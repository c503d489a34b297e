#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ecss {

/// Dense point index in [0, n).
using PointId = std::uint32_t;

/// Ascending list of distinct point ids.
using PointSet = std::vector<PointId>;

/// Absolute tolerance for every distance comparison in the library.
inline constexpr double kDistEps = 1e-9;

class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A finite metric space. Distances are materialized into an n x n table on
/// construction, so lookups are O(1) regardless of the backend.
class MetricInstance {
 public:
  enum class Kind { kEuclidean, kMatrix };

  /// Points given as rows of `dim` coordinates, dim in {1, 2, 3}.
  static MetricInstance euclidean(std::string name, int dim,
                                  std::vector<std::vector<double>> points);

  /// Explicit distance matrix. Rejects non-square, asymmetric, non-zero
  /// diagonal, non-positive off-diagonal and triangle-violating input.
  static MetricInstance matrix(std::string name,
                               std::vector<std::vector<double>> dist);

  std::size_t size() const { return n_; }
  const std::string& name() const { return name_; }
  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const std::vector<std::vector<double>>& points() const { return points_; }

  double operator()(PointId a, PointId b) const { return dist_[a * n_ + b]; }

  /// Sub-instance over `subset`; local id i corresponds to subset[i].
  MetricInstance restrict(const PointSet& subset, std::string name = {}) const;

  /// Same points with every distance multiplied by `factor` > 0.
  MetricInstance scaled(double factor) const;

  PointSet all_points() const;

 private:
  MetricInstance() = default;
  void fill_from_points();

  std::string name_;
  Kind kind_ = Kind::kMatrix;
  int dim_ = 0;
  std::size_t n_ = 0;
  std::vector<std::vector<double>> points_;
  std::vector<double> dist_;
};

struct Ball {
  PointId center = 0;
  double radius = 0.0;
};

struct MetricStats {
  double diameter = 0.0;
  double min_interpoint = 0.0;
  double aspect_ratio = 1.0;
};

MetricStats metric_stats(const MetricInstance& instance);
MetricStats metric_stats(const MetricInstance& instance, const PointSet& subset);

/// Closed ball: every point within `radius` of the center.
PointSet ball_members(const MetricInstance& instance, const Ball& ball);
PointSet ball_members(const MetricInstance& instance, const PointSet& within,
                      const Ball& ball);

/// Greedy alpha-net: scan `subset` in ascending id and keep a point iff it is
/// farther than alpha from every point kept so far.
PointSet build_net(const MetricInstance& instance, const PointSet& subset,
                   double alpha);

/// Same greedy rule, but `seeds` are placed first. Seeds must already be
/// pairwise farther than alpha apart for the result to be a packing.
PointSet build_net_seeded(const MetricInstance& instance, const PointSet& subset,
                          const PointSet& seeds, double alpha);

struct NetCheck {
  bool is_covering = false;
  bool is_packing = false;
};

NetCheck verify_net(const MetricInstance& instance, const PointSet& subset,
                    const PointSet& net, double alpha);

/// Upper-bound estimate of the doubling dimension: the smallest k such that
/// for every point x and every r in {d(x,y)/2}, B(x, 2r) is covered by at most
/// 2^k radius-r balls: the smaller of its greedy r-net and a max-coverage
/// greedy cover.
int estimate_doubling_dimension(const MetricInstance& instance);

}  // namespace ecss
