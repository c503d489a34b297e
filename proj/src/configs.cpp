#include "ecss/configs.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace ecss {

int PortalConfiguration::slot_count() const {
  int total = 0;
  for (int u : usage) total += u;
  return total;
}

namespace {

void for_each_usage(std::size_t m, int r, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> usage(m, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == m) {
      visit(usage);
      return;
    }
    for (int u = 0; u <= std::min(2, left); ++u) {
      usage[i] = u;
      rec(i + 1, left - u);
    }
    usage[i] = 0;
  };
  rec(0, r);
}

// Restricted growth strings of length `slots`.
void for_each_partition(int slots, const std::function<void(const std::vector<int>&, int)>& visit) {
  std::vector<int> rgs(slots, 0);
  std::function<void(int, int)> rec = [&](int i, int classes) {
    if (i == slots) {
      visit(rgs, classes);
      return;
    }
    for (int c = 0; c <= classes; ++c) {
      rgs[i] = c;
      rec(i + 1, std::max(classes, c + 1));
    }
  };
  rec(0, 0);
}

}  // namespace

std::vector<PortalConfiguration> enumerate_configs(std::size_t m, int r) {
  if (r < 0) throw std::invalid_argument("crossing limit must be non-negative");
  std::vector<PortalConfiguration> out;
  for_each_usage(m, r, [&](const std::vector<int>& usage) {
    int slots = 0;
    for (int u : usage) slots += u;
    for_each_partition(slots, [&](const std::vector<int>& rgs, int classes) {
      for (unsigned flags = 0; flags < (1u << classes); ++flags) {
        PortalConfiguration c;
        c.usage = usage;
        c.component_of = rgs;
        c.deficient.resize(classes);
        for (int j = 0; j < classes; ++j) c.deficient[j] = (flags >> j) & 1u;
        out.push_back(std::move(c));
      }
    });
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t count_configs(std::size_t m, int r) {
  if (r < 0) return 0;
  const int max_slots = static_cast<int>(std::min<std::size_t>(2 * m, r));
  // stirling[u][j]
  std::vector<std::vector<std::size_t>> stirling(max_slots + 1,
                                                 std::vector<std::size_t>(max_slots + 1, 0));
  stirling[0][0] = 1;
  for (int u = 1; u <= max_slots; ++u) {
    for (int j = 1; j <= u; ++j) stirling[u][j] = j * stirling[u - 1][j] + stirling[u - 1][j - 1];
  }
  std::vector<std::size_t> per_slots(max_slots + 1, 0);
  for (int u = 0; u <= max_slots; ++u) {
    for (int j = 0; j <= u; ++j) per_slots[u] += stirling[u][j] << j;
  }
  // ways[t] = number of usage vectors with total t
  std::vector<std::size_t> ways(max_slots + 1, 0);
  ways[0] = 1;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> next(max_slots + 1, 0);
    for (int t = 0; t <= max_slots; ++t) {
      for (int u = 0; u <= 2 && t + u <= max_slots; ++u) next[t + u] += ways[t];
    }
    ways = std::move(next);
  }
  std::size_t total = 0;
  for (int t = 0; t <= max_slots; ++t) total += ways[t] * per_slots[t];
  return total;
}

}  // namespace ecss
