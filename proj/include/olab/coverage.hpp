// Bounded decision of causal coverage with certificates.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "olab/path.hpp"

namespace olab {

struct CoverageConfig {
  // Opens usable as path steps (all nonempty opens when empty and the frame
  // is enumerable; grids install the rectangle basis).
  std::vector<Mask> step_universe;
  // Candidate refinement endpoints W considered below a path endpoint; when
  // empty, every nonempty step-universe open below the endpoint qualifies as
  // a candidate (plus the endpoint itself).
  std::vector<Mask> endpoint_universe;
  int max_target_path_len = 0;  // 0: default 2 * |opens|
  int max_refinement_len = 0;   // 0: default (N+2) * (|opens|+1)
  long long budget = 50000000;

  int target_len(std::size_t universe_size) const {
    if (max_target_path_len > 0) return max_target_path_len;
    return std::max(2, 2 * static_cast<int>(universe_size));
  }
  int refinement_len(int target_path_len, std::size_t universe_size) const {
    return max_refinement_len > 0
               ? max_refinement_len
               : (target_path_len + 2) *
                     (static_cast<int>(universe_size) + 2);
  }
};

enum class CoverageOutcome { Covered, NotCovered, Unknown };

struct RefinementMember {
  Mask endpoint = 0;  // W
  Path witness;       // q with q.end() == W
  RefinementWitness against_restriction;
  int inhabit_index = -1;  // index of a step below A
};

struct LocalRefinementFamily {
  Path target;
  std::vector<RefinementMember> members;
};

struct CoverageVerdict {
  CoverageOutcome outcome = CoverageOutcome::Unknown;
  int covered_up_to = 0;           // certified target-path length bound
  std::optional<Path> witness;     // NotCovered: first bad path
  std::string reason;
  std::vector<LocalRefinementFamily> certificates;  // representative paths
  CoverageConfig config;           // bounds actually used (self-describing)
  int max_target_path_len = 0;
  int max_refinement_len = 0;
};

// All paths over cfg's step universe with length <= max_target_path_len and
// endpoint below ends_in, in canonical order (shorter first).
std::vector<Path> enumerate_paths(const OrderedLocale& L,
                                  const CoverageConfig& cfg, Mask ends_in,
                                  bool* truncated = nullptr);

// Direct per-path search matching the membership definition: find a family of
// refinements of restrictions of p whose endpoints join to p.end(), each
// inhabiting A.
std::optional<LocalRefinementFamily> find_local_past_refinement(
    const OrderedLocale& L, const Path& p, Mask a, const CoverageConfig& cfg,
    bool* inconclusive = nullptr);

// Section-7 style certificate: split p at k, insert A ^ upcone(p_k) ^
// downcone(p_{k+1}), rejoin via restrictions.
std::optional<Path> canonical_interleave(const OrderedLocale& L, const Path& p,
                                         Mask a, int k);

CoverageVerdict cov_minus(const OrderedLocale& L, Mask a, Mask u,
                          const CoverageConfig& cfg = {});
CoverageVerdict cov_plus(const OrderedLocale& L, Mask b, Mask u,
                         const CoverageConfig& cfg = {});

// Outcome only, skipping certificate construction.
CoverageOutcome cov_outcome(const OrderedLocale& L, Mask a, Mask u,
                            const CoverageConfig& cfg, bool below);

struct CovPropertyReport {
  long long instances = 0;
  long long unknowns = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Section-5 property suite (a),(b),(d+/-),(e),(f), binary Cov-V, and
// transitivity instances, under bounded semantics.
CovPropertyReport verify_cov_properties(const OrderedLocale& L,
                                        const CoverageConfig& cfg = {});

}  // namespace olab
