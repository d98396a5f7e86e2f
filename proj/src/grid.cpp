#include "olab/grid.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <unordered_map>

namespace olab {

int GridSpacetime::cell_index(Cell c) const {
  for (int i = 0; i < static_cast<int>(cells.size()); ++i)
    if (cells[i] == c) return i;
  return -1;
}

bool GridSpacetime::inside(Cell c) const {
  return c.x >= 0 && c.x < width && c.t >= 0 && c.t < height;
}

Mask GridSpacetime::region(const std::vector<Cell>& cs) const {
  Mask m = 0;
  for (Cell c : cs) {
    int i = cell_index(c);
    if (i < 0) {
      std::ostringstream os;
      os << "cell (" << c.x << "," << c.t << ") is not a surviving grid cell";
      throw InputError(os.str());
    }
    m |= bit(i);
  }
  return m;
}

std::vector<Cell> GridSpacetime::cells_of(Mask m) const {
  std::vector<Cell> out;
  for (int i : mask_indices(m)) out.push_back(cells[i]);
  return out;
}

Mask GridSpacetime::row(int t) const {
  Mask m = 0;
  for (int i = 0; i < static_cast<int>(cells.size()); ++i)
    if (cells[i].t == t) m |= bit(i);
  return m;
}

bool GridSpacetime::causal_leq(Cell a, Cell b) const {
  int dt = b.t - a.t;
  return dt >= 0 && std::abs(b.x - a.x) * up_slope <= dt;
}

bool GridSpacetime::chron_lt(Cell a, Cell b) const {
  int dt = b.t - a.t;
  return dt > 0 && std::abs(b.x - a.x) * up_slope < dt;
}

// Chain link relation: strictly time-increasing in both modes.
bool GridSpacetime::mode_rel(Cell a, Cell b, ChainMode mode) const {
  if (b.t <= a.t) return false;
  int dt = b.t - a.t;
  int dx = std::abs(b.x - a.x) * up_slope;
  return mode == ChainMode::Causal ? dx <= dt : dx < dt;
}

Mask GridSpacetime::mode_past(Cell c, ChainMode mode) const {
  Mask m = 0;
  for (int i = 0; i < static_cast<int>(cells.size()); ++i)
    if (mode_rel(cells[i], c, mode)) m |= bit(i);
  return m;
}

bool GridSpacetime::startable(Cell c) const {
  if (c.t == 0) return true;
  // Immediate predecessors live one row down within the causal cone. The
  // cell is a legitimate chain start only when every in-bounds one is a hole.
  for (int x = 0; x < width; ++x) {
    Cell d{x, c.t - 1};
    if (std::abs(c.x - x) * up_slope <= 1 && cell_index(d) >= 0) return false;
  }
  return true;
}

OrderedLocale GridSpacetime::locale() const {
  if (equal_slopes()) return OrderedLocale::from_egli_milner(space);
  auto self = *this;
  auto memo_up = std::make_shared<std::unordered_map<Mask, Mask>>();
  auto memo_down = std::make_shared<std::unordered_map<Mask, Mask>>();
  ConeFn up = [self, memo_up](Mask u) {
    auto it = memo_up->find(u);
    if (it != memo_up->end()) return it->second;
    Mask out = 0;
    for (int i = 0; i < static_cast<int>(self.cells.size()); ++i) {
      for (int j : mask_indices(u)) {
        Cell a = self.cells[j], b = self.cells[i];
        int dt = b.t - a.t;
        if (dt >= 0 && std::abs(b.x - a.x) * self.up_slope <= dt) {
          out |= bit(i);
          break;
        }
      }
    }
    (*memo_up)[u] = out;
    return out;
  };
  ConeFn down = [self, memo_down](Mask u) {
    auto it = memo_down->find(u);
    if (it != memo_down->end()) return it->second;
    Mask out = 0;
    for (int i = 0; i < static_cast<int>(self.cells.size()); ++i) {
      for (int j : mask_indices(u)) {
        Cell a = self.cells[i], b = self.cells[j];
        int dt = b.t - a.t;
        if (dt >= 0 && std::abs(b.x - a.x) * self.down_slope <= dt) {
          out |= bit(i);
          break;
        }
      }
    }
    (*memo_down)[u] = out;
    return out;
  };
  std::vector<Mask> validation;
  if (!space->opens_enumerable()) validation = rectangle_basis();
  return OrderedLocale::from_monad_pair(space, up, down, validation);
}

std::vector<Mask> GridSpacetime::rectangle_basis() const {
  std::set<Mask> seen;
  std::vector<Mask> out;
  for (int x0 = 0; x0 < width; ++x0)
    for (int x1 = x0; x1 < width; ++x1)
      for (int t0 = 0; t0 < height; ++t0)
        for (int t1 = t0; t1 < height; ++t1) {
          Mask m = 0;
          for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
            Cell c = cells[i];
            if (c.x >= x0 && c.x <= x1 && c.t >= t0 && c.t <= t1) m |= bit(i);
          }
          if (m && seen.insert(m).second) out.push_back(m);
        }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

CoverageConfig GridSpacetime::coverage_config(Mask a) const {
  CoverageConfig cfg;
  cfg.step_universe = rectangle_basis();
  // The domain region and its one-cell enlargements join the universe: a cell
  // lies in some covered open iff A joined with that cell is covered (covered
  // opens are closed under joins), so these candidates make the localic
  // domain computation exact over the configured steps.
  if (a) cfg.step_universe.push_back(a);
  for (int i = 0; i < static_cast<int>(cells.size()); ++i)
    cfg.step_universe.push_back(a | bit(i));
  std::sort(cfg.step_universe.begin(), cfg.step_universe.end(),
            canonical_less);
  cfg.step_universe.erase(
      std::unique(cfg.step_universe.begin(), cfg.step_universe.end()),
      cfg.step_universe.end());
  for (int i = 0; i < static_cast<int>(cells.size()); ++i)
    cfg.endpoint_universe.push_back(bit(i));
  cfg.max_target_path_len = 2 * static_cast<int>(cells.size());
  return cfg;
}

GridSpacetime build_grid(int width, int height, int up_slope, int down_slope,
                         std::vector<Cell> holes) {
  if (width <= 0 || height <= 0) throw InputError("grid dimensions must be positive");
  if (up_slope <= 0 || down_slope <= 0) throw InputError("slopes must be positive");
  GridSpacetime g;
  g.width = width;
  g.height = height;
  g.up_slope = up_slope;
  g.down_slope = down_slope;
  g.holes = holes;
  auto holed = [&](Cell c) {
    return std::count(holes.begin(), holes.end(), c) > 0;
  };
  for (Cell h : holes)
    if (!g.inside(h)) throw InputError("hole outside the grid");
  std::vector<std::string> labels;
  for (int t = 0; t < height; ++t)
    for (int x = 0; x < width; ++x) {
      Cell c{x, t};
      if (holed(c)) continue;
      g.cells.push_back(c);
      labels.push_back(std::to_string(x) + "," + std::to_string(t));
    }
  if (g.cells.size() > static_cast<std::size_t>(kMaxPoints))
    throw CapacityError("grid exceeds 64 surviving cells");
  std::vector<std::pair<int, int>> order;
  for (int i = 0; i < static_cast<int>(g.cells.size()); ++i)
    for (int j = 0; j < static_cast<int>(g.cells.size()); ++j)
      if (i != j && g.causal_leq(g.cells[i], g.cells[j]))
        order.emplace_back(i, j);
  std::ostringstream nm;
  nm << "grid" << width << "x" << height << "s" << up_slope << "/"
     << down_slope;
  g.space = std::make_shared<FiniteSpace>(build_space(
      nm.str(), std::move(labels), order, TopologySpec::discrete()));
  return g;
}

namespace {

void chains_dfs(const GridSpacetime& g, ChainMode mode, bool inextendible,
                std::vector<int>& stack, std::vector<Chain>& out,
                long long& budget) {
  if (--budget < 0) throw BudgetError("chain enumeration budget exhausted");
  Cell front = g.cells[stack.back()];
  if (!inextendible || g.startable(front)) {
    Chain c;
    for (auto it = stack.rbegin(); it != stack.rend(); ++it)
      c.cells.push_back(g.cells[*it]);
    out.push_back(std::move(c));
  }
  for (int i = 0; i < static_cast<int>(g.cells.size()); ++i)
    if (g.mode_rel(g.cells[i], front, mode)) {
      stack.push_back(i);
      chains_dfs(g, mode, inextendible, stack, out, budget);
      stack.pop_back();
    }
}

}  // namespace

std::vector<Chain> chains_through(const GridSpacetime& g, Cell cell,
                                  ChainMode mode, bool inextendible,
                                  long long budget) {
  int idx = g.cell_index(cell);
  if (idx < 0) throw InputError("chain anchor is not a surviving cell");
  std::vector<int> stack{idx};
  std::vector<Chain> out;
  chains_dfs(g, mode, inextendible, stack, out, budget);
  return out;
}

namespace {

// badEnd[c]: some causal chain ending at c dodges A entirely and starts at a
// cell whose mode-past also misses A. Chains are causally linked in both
// modes; the mode only selects which past of the start must reach A. With
// timelike links instead, a lightlike dodge like (2,0),(1,1) would count
// against the localic column but not against the chron one, breaking the
// bounded-chron vs localic comparison. Cells sorted by time give a forward DP.
struct DodgeDP {
  std::vector<char> bad;
  std::vector<int> parent;  // previous chain cell, -1 at a chain start
};

DodgeDP dodge_dp(const GridSpacetime& g, Mask a, ChainMode mode) {
  int n = static_cast<int>(g.cells.size());
  DodgeDP dp;
  dp.bad.assign(n, 0);
  dp.parent.assign(n, -1);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return g.cells[i].t < g.cells[j].t;
  });
  for (int i : order) {
    if (subset(bit(i), a)) continue;
    if ((g.mode_past(g.cells[i], mode) & a) == 0) {
      dp.bad[i] = 1;
      dp.parent[i] = -1;
      continue;
    }
    for (int j = 0; j < n; ++j)
      if (dp.bad[j] && g.mode_rel(g.cells[j], g.cells[i], ChainMode::Causal)) {
        dp.bad[i] = 1;
        dp.parent[i] = j;
        break;
      }
  }
  return dp;
}

Chain reconstruct(const GridSpacetime& g, const DodgeDP& dp, int end) {
  std::vector<Cell> cs;
  for (int i = end; i >= 0; i = dp.parent[i]) cs.push_back(g.cells[i]);
  std::reverse(cs.begin(), cs.end());
  return Chain{std::move(cs)};
}

}  // namespace

ChainCoverVerdict chain_cover_minus(const GridSpacetime& g, Mask a, Mask u,
                                    ChainMode mode) {
  ChainCoverVerdict v;
  if (!subset(a, g.space->down(u))) {
    v.covered = false;
    v.reason = "A is not contained in the causal past of U";
    return v;
  }
  DodgeDP dp = dodge_dp(g, a, mode);
  for (int i : mask_indices(u))
    if (dp.bad[i]) {
      v.covered = false;
      v.witness = reconstruct(g, dp, i);
      v.reason = "dodging chain found";
      return v;
    }
  v.covered = true;
  v.reason = "every chain into U meets A or has its past meet A";
  return v;
}

Mask domain_inext(const GridSpacetime& g, Mask a, ChainMode mode) {
  int n = static_cast<int>(g.cells.size());
  std::vector<char> avoid(n, 0);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return g.cells[i].t < g.cells[j].t;
  });
  for (int i : order) {
    if (subset(bit(i), a)) continue;
    if (g.startable(g.cells[i])) {
      avoid[i] = 1;
      continue;
    }
    for (int j = 0; j < n; ++j)
      if (avoid[j] && g.mode_rel(g.cells[j], g.cells[i], mode)) {
        avoid[i] = 1;
        break;
      }
  }
  Mask d = 0;
  for (int i = 0; i < n; ++i)
    if (!avoid[i]) d |= bit(i);
  return d;
}

Mask domain_bounded(const GridSpacetime& g, Mask a, ChainMode mode) {
  DodgeDP dp = dodge_dp(g, a, mode);
  Mask d = 0;
  for (int i = 0; i < static_cast<int>(g.cells.size()); ++i)
    if (!dp.bad[i]) d |= bit(i);
  return d;
}

Mask domain_localic(const GridSpacetime& g, Mask a, long long* unknowns) {
  OrderedLocale L = g.locale();
  CoverageConfig cfg = g.coverage_config(a);
  Mask d = 0;
  long long unk = 0;
  for (int i = 0; i < static_cast<int>(g.cells.size()); ++i) {
    switch (cov_outcome(L, a, a | bit(i), cfg, true)) {
      case CoverageOutcome::Covered: d |= bit(i); break;
      case CoverageOutcome::Unknown: ++unk; break;
      case CoverageOutcome::NotCovered: break;
    }
  }
  if (unknowns) *unknowns = unk;
  return d;
}

DomainReport domains_all(const GridSpacetime& g, Mask a) {
  if (!g.equal_slopes())
    throw InputError("chain domains need equal slopes");
  DomainReport rep;
  rep.domains[0] = domain_inext(g, a, ChainMode::Causal);
  rep.domains[1] = domain_inext(g, a, ChainMode::Chron);
  rep.domains[2] = domain_bounded(g, a, ChainMode::Causal);
  rep.domains[3] = domain_bounded(g, a, ChainMode::Chron);
  rep.domains[4] = domain_localic(g, a, &rep.localic_unknowns);
  rep.localic_available = true;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      rep.inclusion[i][j] = subset(rep.domains[i], rep.domains[j]);
      if (rep.inclusion[i][j] && rep.domains[i] != rep.domains[j]) {
        Mask diff = rep.domains[j] & ~rep.domains[i];
        rep.strict_witness[i][j] = g.cells[mask_indices(diff).front()];
      }
    }
  return rep;
}

std::optional<Scenario> scenario(const std::string& name) {
  auto top_row = [](Scenario& s) { s.U = s.grid.row(s.grid.height - 1); };
  if (name == "MINKOWSKI_PLAIN") {
    Scenario s;
    s.name = name;
    s.grid = build_grid(5, 3, 1, 1);
    s.A = s.grid.row(0);
    top_row(s);
    s.expectation = "all five domains equal the whole grid";
    return s;
  }
  if (name == "POINT_REMOVED") {
    Scenario s;
    s.name = name;
    s.grid = build_grid(5, 3, 1, 1, {{2, 1}});
    s.A = s.grid.row(0);
    top_row(s);
    s.expectation =
        "a single removed cell leaves immediate predecessors of every "
        "survivor, so no domain shrinks";
    return s;
  }
  if (name == "CONE_CUT") {
    Scenario s;
    s.name = name;
    s.grid = build_grid(5, 3, 1, 1, {{1, 1}, {2, 1}, {3, 1}});
    s.A = s.grid.row(0);
    top_row(s);
    s.expectation =
        "(2,2) loses all immediate predecessors: trapped singleton chains "
        "put it in bounded but not inextendible domains";
    return s;
  }
  if (name == "CURVE_REMOVED_FROM_A") {
    Scenario s;
    s.name = name;
    s.grid = build_grid(5, 3, 1, 1);
    s.A = s.grid.row(0) & ~bit(s.grid.cell_index({2, 0}));
    top_row(s);
    s.expectation =
        "column removed from A only; discrete chains thread the gap and "
        "bounded-chron equals localic";
    return s;
  }
  if (name == "REGION_REMOVED") {
    Scenario s;
    s.name = name;
    s.grid = build_grid(5, 4, 1, 1, {{1, 1}, {2, 1}, {1, 2}, {2, 2}});
    s.A = s.grid.row(0);
    s.U = s.grid.row(3);
    s.expectation = "removed closed rectangle casts a notch in every domain";
    return s;
  }
  if (name.rfind("TWO_SLOPES", 0) == 0) {
    int a = 1, b = 2;
    if (name.size() > 10) {
      if (name[10] != '(' || name.back() != ')') return std::nullopt;
      std::istringstream is(name.substr(11, name.size() - 12));
      char comma = 0;
      if (!(is >> a >> comma >> b) || comma != ',' || a <= 0 || b <= 0)
        return std::nullopt;
    }
    Scenario s;
    s.name = "TWO_SLOPES(" + std::to_string(a) + "," + std::to_string(b) + ")";
    s.grid = build_grid(3, 3, a, b);
    s.A = s.grid.row(0);
    s.U = s.grid.row(2);
    s.expectation = a == b
                        ? "equal slopes: the locale is parallel ordered"
                        : "unequal slopes break parallel-orderedness";
    return s;
  }
  return std::nullopt;
}

std::vector<std::string> scenario_names() {
  return {"MINKOWSKI_PLAIN",       "POINT_REMOVED",  "CONE_CUT",
          "CURVE_REMOVED_FROM_A", "REGION_REMOVED", "TWO_SLOPES(1,2)"};
}

namespace {

std::string format_cells(const GridSpacetime& g, Mask m) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (Cell c : g.cells_of(m)) {
    if (!first) os << ",";
    first = false;
    os << "(" << c.x << "," << c.t << ")";
  }
  os << "}";
  return os.str();
}

}  // namespace

std::string render_ascii(const GridSpacetime& g, const DomainReport& rep,
                         Mask a) {
  std::ostringstream os;
  os << "grid " << g.width << "x" << g.height << " slopes " << g.up_slope
     << "/" << g.down_slope << "\n";
  for (int t = g.height - 1; t >= 0; --t) {
    for (int x = 0; x < g.width; ++x) {
      int i = g.cell_index({x, t});
      if (i < 0) {
        os << '#';
        continue;
      }
      if (subset(bit(i), a)) {
        os << 'A';
        continue;
      }
      int layers = 0;
      for (int k = 0; k < 5; ++k)
        if (subset(bit(i), rep.domains[k])) ++layers;
      os << (layers == 0 ? '.' : static_cast<char>('0' + layers));
    }
    os << "\n";
  }
  os << "legend: # hole, A region, digit = domain layers containing cell\n";
  for (int k = 0; k < 5; ++k)
    os << domain_name(static_cast<DomainKind>(k)) << ": "
       << format_cells(g, rep.domains[k]) << "\n";
  return os.str();
}

std::string render_svg(const GridSpacetime& g, const DomainReport& rep,
                       Mask a) {
  const int cs = 40;
  int w = g.width * cs, h = g.height * cs;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
     << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
     << "\">\n";
  for (int t = 0; t < g.height; ++t)
    for (int x = 0; x < g.width; ++x) {
      int px = x * cs, py = (g.height - 1 - t) * cs;
      int i = g.cell_index({x, t});
      const char* fill = i < 0 ? "#444444"
                        : (i >= 0 && subset(bit(i), a)) ? "#f2c14e"
                                                        : "#ffffff";
      os << "  <rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cs
         << "\" height=\"" << cs << "\" fill=\"" << fill
         << "\" stroke=\"#333333\"/>\n";
      if (i >= 0) {
        int layers = 0;
        for (int k = 0; k < 5; ++k)
          if (subset(bit(i), rep.domains[k])) ++layers;
        if (layers > 0)
          os << "  <rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cs
             << "\" height=\"" << cs << "\" fill=\"#4a90d9\" fill-opacity=\"0."
             << layers << "\"/>\n";
      }
    }
  // Dashed light-cone edges rising from the region's span.
  auto acells = g.cells_of(a);
  if (!acells.empty()) {
    int lo = acells.front().x, hi = acells.front().x, at = acells.front().t;
    for (Cell c : acells) {
      lo = std::min(lo, c.x);
      hi = std::max(hi, c.x);
      at = std::min(at, c.t);
    }
    int basey = (g.height - 1 - at) * cs + cs / 2;
    int rise = basey;  // to the top edge
    int run = rise / (cs * g.up_slope) * cs;
    os << "  <line x1=\"" << lo * cs + cs / 2 << "\" y1=\"" << basey
       << "\" x2=\"" << lo * cs + cs / 2 - run
       << "\" y2=\"0\" stroke=\"#d9534a\" stroke-dasharray=\"6 4\"/>\n";
    os << "  <line x1=\"" << hi * cs + cs / 2 << "\" y1=\"" << basey
       << "\" x2=\"" << hi * cs + cs / 2 + run
       << "\" y2=\"0\" stroke=\"#d9534a\" stroke-dasharray=\"6 4\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace olab
