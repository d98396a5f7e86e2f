// Finite preordered spaces with finite topologies.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "olab/mask.hpp"

namespace olab {

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TopologySpec {
  enum class Kind { Discrete, Subbase } kind = Kind::Discrete;
  std::vector<Mask> subbase;  // used when kind == Subbase

  static TopologySpec discrete() { return {}; }
  static TopologySpec from_subbase(std::vector<Mask> sets) {
    return {Kind::Subbase, std::move(sets)};
  }
};

class FiniteSpace {
 public:
  std::string name;
  std::vector<std::string> points;
  // up_of[i] = {j : i <= j}, down_of[i] = {j : j <= i}; reflexive-transitive.
  std::vector<Mask> up_of;
  std::vector<Mask> down_of;
  bool discrete = true;
  int discrete_enum_cap = 16;

  int n() const { return static_cast<int>(points.size()); }
  Mask full() const { return n() == 64 ? ~Mask{0} : (Mask{1} << n()) - 1; }

  Mask up(Mask a) const;
  Mask down(Mask a) const;
  bool is_open(Mask a) const;
  Mask interior(Mask a) const;
  // Canonically ordered list of all opens. For discrete spaces this
  // materializes 2^n opens and is gated by discrete_enum_cap.
  const std::vector<Mask>& opens() const;
  bool opens_enumerable() const {
    return !discrete || n() <= discrete_enum_cap;
  }

  int point_index(const std::string& label) const;  // -1 if absent
  Mask mask_of(const std::vector<std::string>& labels) const;
  std::string format_mask(Mask m) const;  // e.g. {a,b}

  // Internal: explicit topology storage (canonical order).
  std::vector<Mask> explicit_opens;
  mutable std::vector<Mask> cached_opens;  // lazily materialized (discrete)
};

FiniteSpace build_space(std::string name, std::vector<std::string> points,
                        const std::vector<std::pair<int, int>>& order_pairs,
                        const TopologySpec& topo);

FiniteSpace build_space_labels(
    std::string name, std::vector<std::string> points,
    const std::vector<std::pair<std::string, std::string>>& order_pairs,
    const TopologySpec& topo);

struct OpenConesVerdict {
  bool holds = true;
  Mask witness = 0;       // first failing open in canonical order
  bool up_fails = false;  // which cone fails for the witness
  bool down_fails = false;
};

OpenConesVerdict has_open_cones(const FiniteSpace& s);

bool egli_milner(const FiniteSpace& s, Mask u, Mask v);

// Named scenario spaces.
FiniteSpace chain3();
FiniteSpace vee();
FiniteSpace star();
FiniteSpace lvfail();
std::optional<FiniteSpace> named_space(const std::string& name);

}  // namespace olab
