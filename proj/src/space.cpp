#include "olab/space.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace olab {

Mask FiniteSpace::up(Mask a) const {
  Mask out = 0;
  Mask m = a;
  while (m) {
    int i = std::countr_zero(m);
    out |= up_of[i];
    m &= m - 1;
  }
  return out;
}

Mask FiniteSpace::down(Mask a) const {
  Mask out = 0;
  Mask m = a;
  while (m) {
    int i = std::countr_zero(m);
    out |= down_of[i];
    m &= m - 1;
  }
  return out;
}

bool FiniteSpace::is_open(Mask a) const {
  if (discrete) return subset(a, full());
  return std::binary_search(explicit_opens.begin(), explicit_opens.end(), a,
                            canonical_less);
}

Mask FiniteSpace::interior(Mask a) const {
  if (discrete) return a & full();
  Mask out = 0;
  for (Mask u : explicit_opens)
    if (subset(u, a)) out |= u;
  return out;
}

const std::vector<Mask>& FiniteSpace::opens() const {
  if (!discrete) return explicit_opens;
  if (cached_opens.empty()) {
    if (n() > discrete_enum_cap)
      throw CapacityError("discrete topology enumeration above cap (" +
                          std::to_string(n()) + " points, cap " +
                          std::to_string(discrete_enum_cap) + ")");
    cached_opens.reserve(std::size_t{1} << n());
    for (Mask m = 0; m <= full(); ++m) {
      cached_opens.push_back(m);
      if (m == full()) break;
    }
    std::sort(cached_opens.begin(), cached_opens.end(), canonical_less);
  }
  return cached_opens;
}

int FiniteSpace::point_index(const std::string& label) const {
  for (int i = 0; i < n(); ++i)
    if (points[i] == label) return i;
  return -1;
}

Mask FiniteSpace::mask_of(const std::vector<std::string>& labels) const {
  Mask m = 0;
  for (const auto& l : labels) {
    int i = point_index(l);
    if (i < 0) throw InputError("unknown point label: " + l);
    m |= bit(i);
  }
  return m;
}

std::string FiniteSpace::format_mask(Mask m) const {
  std::string out = "{";
  bool first = true;
  for (int i : mask_indices(m)) {
    if (!first) out += ",";
    out += points[i];
    first = false;
  }
  out += "}";
  return out;
}

static std::vector<Mask> close_topology(std::vector<Mask> subbase, Mask fullm) {
  std::set<Mask> opens{0, fullm};
  for (Mask s : subbase) opens.insert(s);
  // Worklist saturation under binary union and intersection.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Mask> cur(opens.begin(), opens.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        if (opens.insert(cur[i] | cur[j]).second) changed = true;
        if (opens.insert(cur[i] & cur[j]).second) changed = true;
      }
  }
  std::vector<Mask> out(opens.begin(), opens.end());
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

FiniteSpace build_space(std::string name, std::vector<std::string> points,
                        const std::vector<std::pair<int, int>>& order_pairs,
                        const TopologySpec& topo) {
  if (points.size() > kMaxPoints)
    throw CapacityError("spaces are capped at 64 points");
  {
    std::set<std::string> seen;
    for (const auto& p : points)
      if (!seen.insert(p).second) throw InputError("duplicate label: " + p);
  }
  FiniteSpace s;
  s.name = std::move(name);
  s.points = std::move(points);
  int n = s.n();
  s.up_of.assign(n, 0);
  for (int i = 0; i < n; ++i) s.up_of[i] = bit(i);
  for (auto [a, b] : order_pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw InputError("order pair index out of range");
    s.up_of[a] |= bit(b);
  }
  // Reflexive-transitive closure (Warshall over masks).
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      Mask next = s.up_of[i];
      Mask m = s.up_of[i];
      while (m) {
        int j = std::countr_zero(m);
        next |= s.up_of[j];
        m &= m - 1;
      }
      if (next != s.up_of[i]) {
        s.up_of[i] = next;
        changed = true;
      }
    }
  }
  s.down_of.assign(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (s.up_of[j] & bit(i)) s.down_of[i] |= bit(j);

  if (topo.kind == TopologySpec::Kind::Discrete) {
    s.discrete = true;
  } else {
    s.discrete = false;
    for (Mask b : topo.subbase)
      if (!subset(b, s.full())) throw InputError("subbase set out of range");
    s.explicit_opens = close_topology(topo.subbase, s.full());
  }
  return s;
}

FiniteSpace build_space_labels(
    std::string name, std::vector<std::string> points,
    const std::vector<std::pair<std::string, std::string>>& order_pairs,
    const TopologySpec& topo) {
  std::map<std::string, int> idx;
  for (std::size_t i = 0; i < points.size(); ++i)
    idx[points[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [a, b] : order_pairs) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end() || ib == idx.end())
      throw InputError("order pair references unknown label");
    pairs.emplace_back(ia->second, ib->second);
  }
  return build_space(std::move(name), std::move(points), pairs, topo);
}

OpenConesVerdict has_open_cones(const FiniteSpace& s) {
  OpenConesVerdict v;
  if (s.discrete) return v;  // all subsets open
  for (Mask u : s.opens()) {
    bool upf = !s.is_open(s.up(u));
    bool downf = !s.is_open(s.down(u));
    if (upf || downf) {
      v.holds = false;
      v.witness = u;
      v.up_fails = upf;
      v.down_fails = downf;
      return v;
    }
  }
  return v;
}

bool egli_milner(const FiniteSpace& s, Mask u, Mask v) {
  return subset(u, s.down(v)) && subset(v, s.up(u));
}

FiniteSpace chain3() {
  return build_space_labels("CHAIN3", {"a", "b", "c"},
                            {{"a", "b"}, {"b", "c"}}, TopologySpec::discrete());
}

FiniteSpace vee() {
  return build_space_labels("VEE", {"x", "y", "z"}, {{"x", "z"}, {"y", "z"}},
                            TopologySpec::discrete());
}

FiniteSpace star() {
  std::vector<std::string> pts{"s", "m", "z", "p"};
  auto m = [&](std::vector<std::string> ls) {
    Mask out = 0;
    for (auto& l : ls)
      out |= bit(static_cast<int>(
          std::find(pts.begin(), pts.end(), l) - pts.begin()));
    return out;
  };
  return build_space(
      "STAR", pts, {{0, 2}},
      TopologySpec::from_subbase({m({"m"}), m({"p"}), m({"m", "z", "p"}),
                                  m({"s"})}));
}

FiniteSpace lvfail() {
  std::vector<std::string> pts{"a0", "a1", "b-1", "b0", "b1"};
  auto m = [&](std::vector<std::string> ls) {
    Mask out = 0;
    for (auto& l : ls)
      out |= bit(static_cast<int>(
          std::find(pts.begin(), pts.end(), l) - pts.begin()));
    return out;
  };
  return build_space(
      "LVFAIL", pts, {{0, 3}, {1, 4}},
      TopologySpec::from_subbase({m({"a0", "a1"}), m({"a1"}), m({"b-1"}),
                                  m({"b1"}), m({"b-1", "b0", "b1"})}));
}

std::optional<FiniteSpace> named_space(const std::string& name) {
  if (name == "CHAIN3") return chain3();
  if (name == "VEE") return vee();
  if (name == "STAR") return star();
  if (name == "LVFAIL") return lvfail();
  return std::nullopt;
}

}  // namespace olab
