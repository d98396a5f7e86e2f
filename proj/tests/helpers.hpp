#pragma once

#include <random>
#include <string>
#include <vector>

#include "olab/space.hpp"

namespace olab::testutil {

// Deterministic random spaces for property suites.
inline FiniteSpace random_space(std::mt19937_64& rng, int max_points = 6,
                                bool allow_subbase = true) {
  std::uniform_int_distribution<int> npts(1, max_points);
  int n = npts(rng);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  std::uniform_int_distribution<int> pt(0, n - 1);
  std::uniform_int_distribution<int> npairs(0, 2 * n);
  std::vector<std::pair<int, int>> pairs;
  int k = npairs(rng);
  for (int i = 0; i < k; ++i) pairs.emplace_back(pt(rng), pt(rng));
  TopologySpec topo = TopologySpec::discrete();
  if (allow_subbase && (rng() & 1)) {
    std::uniform_int_distribution<int> nsets(1, n + 1);
    std::vector<Mask> sets;
    int s = nsets(rng);
    for (int i = 0; i < s; ++i)
      sets.push_back(static_cast<Mask>(rng()) & ((Mask{1} << n) - 1));
    topo = TopologySpec::from_subbase(std::move(sets));
  }
  return build_space("rnd", std::move(labels), pairs, topo);
}

inline std::vector<Mask> nonempty_opens(const FiniteSpace& s) {
  std::vector<Mask> out;
  for (Mask m : s.opens())
    if (m) out.push_back(m);
  return out;
}

}  // namespace olab::testutil
