// Ordered locales over a finite frame and axiom/lemma checkers.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "olab/space.hpp"

namespace olab {

using ConeFn = std::function<Mask(Mask)>;

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class OrderedLocale {
 public:
  enum class Source { EgliMilner, MonadPair, Equality, Upper };

  static OrderedLocale from_egli_milner(std::shared_ptr<const FiniteSpace> s);
  static OrderedLocale equality_order(std::shared_ptr<const FiniteSpace> s);
  // The upper order: U <| V iff V is contained in the point-wise up of U.
  // Used only in tests of nullary (c-V) failure.
  static OrderedLocale upper_order(std::shared_ptr<const FiniteSpace> s);
  // Validates monad laws over validation_universe (defaults to all opens when
  // enumerable). Throws ConstructionError naming the violated law and open.
  static OrderedLocale from_monad_pair(std::shared_ptr<const FiniteSpace> s,
                                       ConeFn up, ConeFn down,
                                       std::vector<Mask> validation_universe =
                                           {});

  bool leq(Mask u, Mask v) const;  // U <| V
  Mask cone_up(Mask u) const;      // upcone
  Mask cone_down(Mask u) const;

  const FiniteSpace& space() const { return *space_; }
  std::shared_ptr<const FiniteSpace> space_ptr() const { return space_; }
  Source source() const { return source_; }

  // Same frame with the order direction flipped (cones swapped). Used to
  // derive the "from above" variants of path/coverage operations.
  OrderedLocale reversed() const;

 private:
  std::shared_ptr<const FiniteSpace> space_;
  Source source_ = Source::EgliMilner;
  ConeFn up_fn_, down_fn_;
  bool flipped_ = false;
};

enum class CheckStatus { Holds, Violated, Unknown };

struct AxiomReport {
  std::string axiom;
  CheckStatus status = CheckStatus::Holds;
  std::vector<Mask> witness;  // violating tuple, canonical-minimal
  std::string detail;
};

// Axiom identifiers: "(V)", "(c-<|)", "(c-V)", "(^+)", "(^-)", "(0)",
// "(F-)", "(F+)", "parallel". Empty selection means all.
std::vector<AxiomReport> check_axioms(const OrderedLocale& L,
                                      const std::vector<std::string>&
                                          selection = {},
                                      long long budget = 200000000);

struct EquivalenceReport {
  std::string name;
  bool lhs = false;
  bool rhs = false;
  bool agree = false;
  std::string detail;
};

std::vector<EquivalenceReport> check_equivalences(const OrderedLocale& L,
                                                  long long budget =
                                                      200000000);

}  // namespace olab
