// Localic paths, refinement, concatenation, restriction.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "olab/locale.hpp"

namespace olab {

struct PathError : std::runtime_error {
  int index;
  PathError(std::string msg, int idx)
      : std::runtime_error(std::move(msg)), index(idx) {}
};

struct Path {
  std::vector<Mask> steps;  // validated: nonempty, consecutive steps related

  Mask start() const { return steps.front(); }  // p_bottom
  Mask end() const { return steps.back(); }     // p_top
  int len() const { return static_cast<int>(steps.size()); }
  bool operator==(const Path&) const = default;
};

Path make_path(const OrderedLocale& L, std::vector<Mask> steps);

// Sequential concatenation: first, then second, sharing one step
// (first.end() == second.start()).
Path concat(const OrderedLocale& L, const Path& first, const Path& second);

struct RefinementWitness {
  // assignment[n] = index into the fine path whose step is contained in
  // coarse step n; earliest such index.
  std::vector<int> assignment;
};

// Does q refine p (every step of p contains some step of q)?
std::optional<RefinementWitness> refines(const Path& q, const Path& p);

// Restriction of p to W <= p.end() (past) / V <= p.start() (future).
Path restrict_past(const OrderedLocale& L, const Path& p, Mask w);
Path restrict_future(const OrderedLocale& L, const Path& p, Mask v);

struct LemmaInstanceFailure {
  std::string lemma;
  std::string detail;
};

struct PathLemmaReport {
  long long instances = 0;
  std::vector<LemmaInstanceFailure> failures;
  bool ok() const { return failures.empty(); }
};

// Exhaustive lemma suite over paths of length <= max_len on an enumerable
// frame: restriction functoriality, join over restrictions (binary covers),
// refinement preservation under the side condition, and point preservation
// on spaces with open cones.
PathLemmaReport check_path_lemmas(const OrderedLocale& L, int max_len = 3,
                                  long long budget = 50000000);

}  // namespace olab
