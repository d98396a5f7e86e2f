// Sieves on the frame and the induced down-cone Grothendieck topology.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "olab/coverage.hpp"

namespace olab {

struct Sieve {
  Mask root = 0;
  std::vector<Mask> members;  // down-closed within the frame, canonical order
};

Sieve maximal_sieve(const FiniteSpace& s, Mask u);
// Down-closure of generators below root.
Sieve sieve_from_generators(const FiniteSpace& s, Mask root,
                            const std::vector<Mask>& gens);
// h: v <= r.root; h*(R) = {v ^ w : w in R}.
Sieve pullback(const FiniteSpace& s, Mask v, const Sieve& r);
Mask sieve_join(const Sieve& r);
bool canonical_cover_member(Mask u, const Sieve& r);

CoverageOutcome j_minus_member(const OrderedLocale& L, Mask u, const Sieve& r,
                               const CoverageConfig& cfg = {});

struct GTReport {
  std::string axiom;  // (i), (ii), (iii), (i'), (i''), kleisli
  CheckStatus status = CheckStatus::Holds;
  std::string detail;
};

// All sieves rooted at root, enumerated as down-closures of antichains.
std::vector<Sieve> all_sieves(const FiniteSpace& s, Mask root,
                              long long budget = 10000000);

std::vector<GTReport> verify_down_gt_axioms(const OrderedLocale& L,
                                            const CoverageConfig& cfg = {},
                                            long long budget = 10000000);

}  // namespace olab
