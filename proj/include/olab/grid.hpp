// Discrete Minkowski-like grids, chains, and domain-of-dependence operators.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "olab/dependence.hpp"

namespace olab {

struct Cell {
  int x = 0, t = 0;
  bool operator==(const Cell&) const = default;
  auto operator<=>(const Cell&) const = default;
};

enum class ChainMode { Causal, Chron };

class GridSpacetime {
 public:
  int width = 0, height = 0;
  int up_slope = 1, down_slope = 1;
  std::vector<Cell> holes;
  std::shared_ptr<const FiniteSpace> space;  // surviving cells, discrete
  std::vector<Cell> cells;                   // index -> coordinates

  bool equal_slopes() const { return up_slope == down_slope; }
  int cell_index(Cell c) const;              // -1 when absent
  bool inside(Cell c) const;
  Mask region(const std::vector<Cell>& cs) const;
  std::vector<Cell> cells_of(Mask m) const;
  Mask row(int t) const;

  // Formula relation on coordinates (ignores holes).
  bool causal_leq(Cell a, Cell b) const;   // slope = up_slope
  bool chron_lt(Cell a, Cell b) const;
  bool mode_rel(Cell a, Cell b, ChainMode mode) const;
  Mask mode_past(Cell c, ChainMode mode) const;  // strict for Chron

  // All surviving immediate (dt = 1) causal predecessors; past
  // inextendibility means row 0 or this set empty while dt = 1 geometric
  // predecessors existed (they are holes).
  bool startable(Cell c) const;

  // Ordered locale: Egli-Milner for equal slopes, the slope monad pair
  // otherwise.
  OrderedLocale locale() const;

  // Order-convex rectangle basis (x-interval times t-interval, intersected
  // with the surviving cells), canonical order.
  std::vector<Mask> rectangle_basis() const;
  // Coverage configuration for localic computations: rectangle steps plus
  // the region of interest and its one-cell enlargements, singleton
  // refinement endpoints.
  CoverageConfig coverage_config(Mask a) const;
};

GridSpacetime build_grid(int width, int height, int up_slope, int down_slope,
                         std::vector<Cell> holes = {});

struct Chain {
  std::vector<Cell> cells;  // strictly time-increasing
};

std::vector<Chain> chains_through(const GridSpacetime& g, Cell cell,
                                  ChainMode mode, bool inextendible,
                                  long long budget = 1000000);

struct ChainCoverVerdict {
  bool covered = false;
  std::optional<Chain> witness;  // dodging chain when not covered
  std::string reason;
};

// A covers U from below with chains: A inside the causal past of U, and every
// causally linked chain ending in U meets A or has its start's mode-past meet
// A (the mode picks the chronological or the causal past of the start).
ChainCoverVerdict chain_cover_minus(const GridSpacetime& g, Mask a, Mask u,
                                    ChainMode mode);

enum class DomainKind {
  InextCausal = 0,
  InextChron = 1,
  BoundedCausal = 2,
  BoundedChron = 3,
  Localic = 4
};

inline const char* domain_name(DomainKind k) {
  switch (k) {
    case DomainKind::InextCausal: return "inext-causal";
    case DomainKind::InextChron: return "inext-chron";
    case DomainKind::BoundedCausal: return "bounded-causal";
    case DomainKind::BoundedChron: return "bounded-chron";
    case DomainKind::Localic: return "localic";
  }
  return "?";
}

struct DomainReport {
  std::array<Mask, 5> domains{};
  bool localic_available = false;
  long long localic_unknowns = 0;
  // inclusion[i][j]: domains[i] subset of domains[j]; strict_witness[i][j]
  // is a cell in j minus i when the containment is strict (else nullopt).
  std::array<std::array<bool, 5>, 5> inclusion{};
  std::array<std::array<std::optional<Cell>, 5>, 5> strict_witness{};
};

DomainReport domains_all(const GridSpacetime& g, Mask a);

// Single-domain computations.
Mask domain_inext(const GridSpacetime& g, Mask a, ChainMode mode);
Mask domain_bounded(const GridSpacetime& g, Mask a, ChainMode mode);
Mask domain_localic(const GridSpacetime& g, Mask a, long long* unknowns);

struct Scenario {
  std::string name;
  GridSpacetime grid;
  Mask A = 0;
  Mask U = 0;
  std::string expectation;  // prose fragment describing the golden facts
};

std::optional<Scenario> scenario(const std::string& name);
std::vector<std::string> scenario_names();

std::string render_ascii(const GridSpacetime& g, const DomainReport& rep,
                         Mask a);
std::string render_svg(const GridSpacetime& g, const DomainReport& rep,
                       Mask a);

}  // namespace olab
