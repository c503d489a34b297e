#include <doctest.h>

#include <functional>
#include <numeric>

#include "ecss/configs.hpp"

using namespace ecss;

namespace {

// Independent count: walk every usage vector, every labelling of the used
// slots that is a restricted growth string, and every deficiency flag set.
std::size_t brute_count(std::size_t m, int r) {
  std::size_t total = 0;
  std::vector<int> usage(m, 0);
  std::function<void(std::size_t, int)> walk = [&](std::size_t i, int left) {
    if (i == m) {
      const int slots = std::accumulate(usage.begin(), usage.end(), 0);
      std::vector<int> label(slots, 0);
      std::function<void(int, int)> lab = [&](int j, int classes) {
        if (j == slots) {
          total += std::size_t{1} << classes;
          return;
        }
        for (int c = 0; c <= classes; ++c) {
          label[j] = c;
          lab(j + 1, std::max(classes, c + 1));
        }
      };
      lab(0, 0);
      return;
    }
    for (int u = 0; u <= 2 && u <= left; ++u) {
      usage[i] = u;
      walk(i + 1, left - u);
    }
  };
  walk(0, r);
  return total;
}

}  // namespace

TEST_CASE("configuration counts") {
  CHECK(enumerate_configs(1, 0).size() == 1);
  CHECK(enumerate_configs(3, 0).size() == 1);
  // usage 0: 1; usage 1: 2 flags; usage 2: one class (2 flags) or two
  // classes (4 flags).
  CHECK(enumerate_configs(1, 2).size() == 9);
  CHECK(count_configs(1, 2) == 9);
  for (std::size_t m = 1; m <= 3; ++m) {
    for (int r = 0; r <= 3; ++r) {
      const auto all = enumerate_configs(m, r);
      CHECK(all.size() == brute_count(m, r));
      CHECK(count_configs(m, r) == brute_count(m, r));
      CHECK(std::is_sorted(all.begin(), all.end()));
      CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
    }
  }
  CHECK_THROWS(enumerate_configs(2, -1));
}

TEST_CASE("configurations respect their invariants") {
  for (const PortalConfiguration& c : enumerate_configs(3, 4)) {
    int used = 0;
    for (int u : c.usage) {
      CHECK(u >= 0);
      CHECK(u <= 2);
      used += u;
    }
    CHECK(used <= 4);
    CHECK(c.slot_count() == used);
    CHECK(static_cast<int>(c.component_of.size()) == used);
    int next = 0;
    for (int x : c.component_of) {
      CHECK(x <= next);
      next = std::max(next, x + 1);
    }
    CHECK(c.class_count() == next);
  }
}
