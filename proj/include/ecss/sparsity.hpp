#pragma once

#include <optional>
#include <vector>

#include "ecss/hierarchy.hpp"
#include "ecss/metric.hpp"

namespace ecss {

struct SparsityParams {
  double q = 1.0;        ///< sparsity threshold
  double q_prime = 13.0;  ///< relaxed threshold the sparse part must meet
  double delta = 0.5;     ///< short/long edge threshold factor, in (0, 1)
  int h_candidates = 64;
};

/// q = (s/eps)^{2k} 2^{k^2} (clamped to a finite double), q' from q, and
/// delta = eps / 2^{10k}.
SparsityParams default_sparsity_params(std::size_t n, double s, int k, double epsilon);

/// q' = ceil(13 q (log2 n)^{1/8}); the log factor is at least 1.
double relaxed_threshold(double q, std::size_t n);

/// Weight of the MST over the points of `within` inside the closed ball.
double mst_ball_weight(const MetricInstance& instance, const PointSet& within,
                       PointId center, double radius);
double mst_ball_weight(const MetricInstance& instance, PointId center, double radius);

struct SparsityViolation {
  PointId center = 0;
  int level = 0;
  double q_star = 0.0;
};

/// Scans levels from the singletons up to the root. At each level every
/// cluster center v is tested for mst_ball_weight(v, 3 S) > 2 q S; the first
/// level with a failure yields its densest center.
std::optional<SparsityViolation> find_sparsity_violation(const MetricInstance& instance,
                                                         const ClusterTree& tree,
                                                         double q);

struct SparsityStep {
  PointId center = 0;  ///< in the ids of the instance passed to decompose
  int level = 0;
  double q_star = 0.0;
  double h = 0.0;
  std::size_t x1_size = 0;
  std::size_t x2_size = 0;
};

struct SparsityReport {
  std::optional<SparsityViolation> violating;
  std::optional<double> chosen_h;
  PointSet sparse_part;  ///< X1
  PointSet dense_part;   ///< X2
  /// Disjoint cover of the instance: X1 first, then the pieces produced by
  /// recursively decomposing X2 (the last piece is the final dense core).
  std::vector<PointSet> parts;
  std::vector<SparsityStep> steps;
};

/// Chooses the cut radius h in [12 S, 13 S] (S = scale of the violating level)
/// minimizing the MST weight of balls B(u, 4 s^{l'}) over level-l' portals u in
/// the annulus (h - 5 delta S, h + 5 delta S). Ties go to the smaller h.
double choose_cut_radius(const MetricInstance& instance, const ClusterTree& tree,
                         const SparsityViolation& violation, const SparsityParams& params);

/// Sparse/dense split with recursion on the dense part. Trees for the
/// recursive pieces are rebuilt from `partition` with the supplied rng.
SparsityReport decompose_sparse_dense(const MetricInstance& instance,
                                      const ClusterTree& tree,
                                      const SparsityParams& params,
                                      const PartitionParams& partition, Rng& rng);

}  // namespace ecss
