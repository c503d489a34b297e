#include "ecss/generators.hpp"

#include <cmath>

#include "ecss/instance_io.hpp"
#include "ecss/random.hpp"

namespace ecss {

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "uniform-cube") return GeneratorKind::kUniformCube;
  if (name == "grid") return GeneratorKind::kGrid;
  if (name == "gaussian-clusters") return GeneratorKind::kGaussianClusters;
  if (name == "line") return GeneratorKind::kLine;
  if (name == "matrix-file") return GeneratorKind::kMatrixFile;
  throw std::invalid_argument("unknown generator '" + name + "'");
}

std::string generator_kind_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kUniformCube: return "uniform-cube";
    case GeneratorKind::kGrid: return "grid";
    case GeneratorKind::kGaussianClusters: return "gaussian-clusters";
    case GeneratorKind::kLine: return "line";
    case GeneratorKind::kMatrixFile: return "matrix-file";
  }
  return "unknown";
}

namespace {

bool too_close(const std::vector<std::vector<double>>& pts, const std::vector<double>& p) {
  for (const auto& q : pts) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) d2 += (p[i] - q[i]) * (p[i] - q[i]);
    if (d2 < 1e-12) return true;
  }
  return false;
}

}  // namespace

MetricInstance generate_instance(const GeneratorSpec& spec, std::uint64_t seed) {
  if (spec.kind == GeneratorKind::kMatrixFile) return load_instance(spec.path);
  if (spec.n == 0) throw InvalidInstance("generator needs n >= 1");
  const int dim = spec.kind == GeneratorKind::kLine ? 1 : spec.dim;
  if (dim < 1 || dim > 3) throw InvalidInstance("generator dimension must be 1, 2 or 3");
  const std::string name = generator_kind_name(spec.kind) + "-n" + std::to_string(spec.n) + "-d" +
                           std::to_string(dim) + "-s" + std::to_string(seed);
  Rng rng(seed);
  std::vector<std::vector<double>> pts;
  switch (spec.kind) {
    case GeneratorKind::kLine:
      for (std::size_t i = 0; i < spec.n; ++i) pts.push_back({static_cast<double>(i)});
      break;
    case GeneratorKind::kGrid: {
      std::size_t side = 1;
      while (static_cast<std::size_t>(std::pow(side, dim)) < spec.n) ++side;
      for (std::size_t i = 0; pts.size() < spec.n; ++i) {
        std::vector<double> p(dim);
        std::size_t rest = i;
        for (int a = dim - 1; a >= 0; --a) {
          p[a] = static_cast<double>(rest % side);
          rest /= side;
        }
        pts.push_back(p);
      }
      break;
    }
    case GeneratorKind::kUniformCube:
      while (pts.size() < spec.n) {
        std::vector<double> p(dim);
        for (double& x : p) x = rng.uniform();
        if (!too_close(pts, p)) pts.push_back(p);
      }
      break;
    case GeneratorKind::kGaussianClusters: {
      const int k = std::max(spec.clusters, 1);
      std::vector<std::vector<double>> centers(k, std::vector<double>(dim));
      for (auto& c : centers) {
        for (double& x : c) x = rng.uniform();
      }
      while (pts.size() < spec.n) {
        const auto& c = centers[pts.size() % k];
        std::vector<double> p(dim);
        for (int a = 0; a < dim; ++a) p[a] = c[a] + spec.spread * rng.normal();
        if (!too_close(pts, p)) pts.push_back(p);
      }
      break;
    }
    case GeneratorKind::kMatrixFile:
      break;
  }
  return MetricInstance::euclidean(name, dim, std::move(pts));
}

}  // namespace ecss
