#pragma once

#include <compare>
#include <cstddef>
#include <vector>

namespace ecss {

/// Boundary state of a cluster: how often each portal is crossed, which used
/// crossing slots are joined inside the cluster, and which classes still need
/// a second external connection.
struct PortalConfiguration {
  std::vector<int> usage;         ///< per portal, in {0, 1, 2}
  std::vector<int> component_of;  ///< per used slot (portal order), restricted growth string
  std::vector<bool> deficient;    ///< per class

  int slot_count() const;
  int class_count() const { return static_cast<int>(deficient.size()); }

  friend bool operator==(const PortalConfiguration&, const PortalConfiguration&) = default;
  friend auto operator<=>(const PortalConfiguration&, const PortalConfiguration&) = default;
};

/// Every configuration over m portals with total usage at most r: each usage
/// vector, each set partition of its labelled slots and each deficiency
/// labelling of the classes. Sorted, no duplicates.
std::vector<PortalConfiguration> enumerate_configs(std::size_t m, int r);

/// Closed-form count: sum over usage vectors of sum_j S(U, j) 2^j, where U is
/// the number of used slots and S the Stirling numbers of the second kind.
std::size_t count_configs(std::size_t m, int r);

}  // namespace ecss
