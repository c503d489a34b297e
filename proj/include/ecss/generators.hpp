#pragma once

#include <cstdint>
#include <string>

#include "ecss/metric.hpp"

namespace ecss {

enum class GeneratorKind { kUniformCube, kGrid, kGaussianClusters, kLine, kMatrixFile };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kUniformCube;
  std::size_t n = 10;
  int dim = 2;
  int clusters = 3;      ///< gaussian-clusters only
  double spread = 0.05;  ///< gaussian-clusters only
  std::string path;      ///< matrix-file only
};

GeneratorKind parse_generator_kind(const std::string& name);
std::string generator_kind_name(GeneratorKind kind);

/// Deterministic in (spec, seed). Coordinates that would coincide with an
/// earlier point are redrawn.
MetricInstance generate_instance(const GeneratorSpec& spec, std::uint64_t seed);

}  // namespace ecss
