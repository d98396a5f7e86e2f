// Abstract causal coverages, influence monads, domains of dependence.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "olab/coverage.hpp"

namespace olab {

enum class CovDirection { Below, Above };

class AbstractCoverage {
 public:
  // Bounded coverage of an ordered locale.
  static AbstractCoverage from_ordered_locale(const OrderedLocale& L,
                                              CoverageConfig cfg = {});
  // Test seam: explicit membership tables (sets of covering opens per open).
  static AbstractCoverage explicit_table(
      std::shared_ptr<const FiniteSpace> space,
      std::map<Mask, std::vector<Mask>> below,
      std::map<Mask, std::vector<Mask>> above);

  CoverageOutcome member(Mask a, Mask u, CovDirection dir) const;
  const FiniteSpace& space() const { return *space_; }
  const std::vector<Mask>& universe() const { return universe_; }

 private:
  std::shared_ptr<const FiniteSpace> space_;
  std::vector<Mask> universe_;  // opens quantified over (frame, canonical)
  std::function<CoverageOutcome(Mask, Mask, CovDirection)> oracle_;
  mutable std::map<std::tuple<Mask, Mask, CovDirection>, CoverageOutcome>
      cache_;
};

struct SiteAxiomReport {
  std::string axiom;  // C1..C5
  CheckStatus status = CheckStatus::Holds;
  std::string detail;
  long long unknowns = 0;
};

std::vector<SiteAxiomReport> check_causal_site_axioms(
    const AbstractCoverage& c);

struct InfluenceResult {
  std::map<Mask, Mask> L_plus, L_minus;
  long long unknowns = 0;
  std::vector<std::string> monad_violations;
};

InfluenceResult influence(const AbstractCoverage& c);

struct DependenceResult {
  std::map<Mask, Mask> D_plus, D_minus;
  // provenance[(A,V,dir)] = outcome used while joining.
  std::map<std::tuple<Mask, Mask, CovDirection>, CoverageOutcome> provenance;
  long long unknowns = 0;
};

DependenceResult domain_of_dependence(const AbstractCoverage& c);

struct DependenceLemmaReport {
  long long instances = 0;
  long long unknowns = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

DependenceLemmaReport verify_dependence_lemmas(const AbstractCoverage& c,
                                               const OrderedLocale* L = nullptr);

struct RoundtripReport {
  long long equal = 0, differing = 0, unknowns = 0;
  std::vector<std::string> differences;
  std::string note;
};

// Rebuild an ordered locale from the influence monads and diff the induced
// bounded coverage against c.
RoundtripReport roundtrip_experiment(const AbstractCoverage& c,
                                     CoverageConfig cfg = {});

// Exhaustive search for an explicit coverage satisfying C1..C5 on a two-point
// discrete frame that differs from every ordered-locale-induced coverage.
std::string roundtrip_counterexample_search();

}  // namespace olab
