// olab: finite-model workbench for ordered locales and causal coverage.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "olab/serialize.hpp"
#include "olab/sites.hpp"

using nlohmann::json;
using namespace olab;

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitInput = 3;

long long global_budget() {
  const char* env = std::getenv("OLAB_BUDGET");
  if (!env) return 0;
  char* end = nullptr;
  long long v = std::strtoll(env, &end, 10);
  if (end == env || v <= 0) throw InputError("OLAB_BUDGET must be a positive integer");
  return v;
}

struct Resolved {
  ParsedInput parsed;
  std::string name;
  std::string expectation;
};

Resolved resolve_input(const std::string& arg) {
  Resolved r;
  if (auto sc = scenario(arg)) {
    r.parsed.grid = sc->grid;
    r.parsed.region_a = sc->A;
    r.parsed.region_u = sc->U;
    r.name = sc->name;
    r.expectation = sc->expectation;
    return r;
  }
  if (auto sp = named_space(arg)) {
    r.parsed.space = std::move(*sp);
    r.name = arg;
    return r;
  }
  std::ifstream in(arg);
  if (!in) throw InputError("cannot open input: " + arg);
  std::stringstream buf;
  buf << in.rdbuf();
  r.parsed = parse_input_json(buf.str());
  r.name = arg;
  return r;
}

const FiniteSpace& space_of(const Resolved& r) {
  if (r.parsed.space) return *r.parsed.space;
  return *r.parsed.grid->space;
}

OrderedLocale locale_of(const Resolved& r) {
  if (r.parsed.grid) return r.parsed.grid->locale();
  return OrderedLocale::from_egli_milner(
      std::make_shared<FiniteSpace>(*r.parsed.space));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Space regions are comma-separated labels; grid regions are
// semicolon-separated "x,t" cells. Empty string means the empty region.
Mask parse_region(const Resolved& r, const std::string& text) {
  if (text.empty()) return 0;
  if (r.parsed.grid) {
    std::vector<Cell> cs;
    for (const auto& part : split(text, ';')) {
      auto xy = split(part, ',');
      if (xy.size() != 2) throw InputError("grid region cells are x,t pairs");
      try {
        cs.push_back({std::stoi(xy[0]), std::stoi(xy[1])});
      } catch (const std::exception&) {
        throw InputError("grid region cells are x,t pairs");
      }
    }
    return r.parsed.grid->region(cs);
  }
  return space_of(r).mask_of(split(text, ','));
}

json mask_json(const FiniteSpace& s, Mask m) {
  json arr = json::array();
  for (int i : mask_indices(m)) arr.push_back(s.points[i]);
  return arr;
}

json path_json(const FiniteSpace& s, const Path& p) {
  json arr = json::array();
  for (Mask m : p.steps) arr.push_back(mask_json(s, m));
  return arr;
}

const char* status_str(CheckStatus st) {
  switch (st) {
    case CheckStatus::Holds: return "holds";
    case CheckStatus::Violated: return "violated";
    case CheckStatus::Unknown: return "unknown";
  }
  return "?";
}

const char* outcome_str(CoverageOutcome oc) {
  switch (oc) {
    case CoverageOutcome::Covered: return "covered";
    case CoverageOutcome::NotCovered: return "not-covered";
    case CoverageOutcome::Unknown: return "unknown";
  }
  return "?";
}

int worst_exit(bool violated, bool unknown) {
  if (violated) return kExitViolated;
  if (unknown) return kExitUnknown;
  return kExitHolds;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json bounds_json(const CoverageConfig& cfg, std::size_t universe) {
  return {{"max_target_path_len", cfg.target_len(universe)},
          {"max_refinement_len",
           cfg.refinement_len(cfg.target_len(universe), universe)},
          {"budget", cfg.budget}};
}

int cmd_check_axioms(const Resolved& r, const std::string& axioms_csv) {
  OrderedLocale L = locale_of(r);
  std::vector<std::string> selection;
  if (!axioms_csv.empty()) selection = split(axioms_csv, ',');
  long long budget = global_budget();
  auto reports = check_axioms(L, selection, budget > 0 ? budget : 200000000);
  const FiniteSpace& s = L.space();
  json out;
  out["command"] = "check-axioms";
  out["input"] = r.name;
  out["budget"] = budget > 0 ? budget : 200000000;
  json arr = json::array();
  bool violated = false, unknown = false;
  for (const auto& rep : reports) {
    json item;
    item["axiom"] = rep.axiom;
    item["status"] = status_str(rep.status);
    item["detail"] = rep.detail;
    json w = json::array();
    for (Mask m : rep.witness) w.push_back(mask_json(s, m));
    item["witness"] = w;
    arr.push_back(item);
    violated |= rep.status == CheckStatus::Violated;
    unknown |= rep.status == CheckStatus::Unknown;
  }
  out["reports"] = arr;
  emit(out);
  return worst_exit(violated, unknown);
}

int cmd_cones(const Resolved& r, const std::string& region) {
  OrderedLocale L = locale_of(r);
  const FiniteSpace& s = L.space();
  Mask u = parse_region(r, region);
  json out;
  out["command"] = "cones";
  out["input"] = r.name;
  out["region"] = mask_json(s, u);
  out["up"] = mask_json(s, L.cone_up(u));
  out["down"] = mask_json(s, L.cone_down(u));
  auto oc = has_open_cones(s);
  out["open_cones"] = oc.holds;
  if (!oc.holds) out["open_cones_witness"] = mask_json(s, oc.witness);
  emit(out);
  return kExitHolds;
}

CoverageConfig make_cfg(const Resolved& r, Mask a, int max_path,
                        int max_refine) {
  CoverageConfig cfg;
  if (r.parsed.grid) cfg = r.parsed.grid->coverage_config(a);
  if (max_path > 0) cfg.max_target_path_len = max_path;
  if (max_refine > 0) cfg.max_refinement_len = max_refine;
  long long budget = global_budget();
  if (budget > 0) cfg.budget = budget;
  return cfg;
}

int cmd_cover(const Resolved& r, const std::string& a_text,
              const std::string& u_text, const std::string& direction,
              int max_path, int max_refine) {
  OrderedLocale L = locale_of(r);
  const FiniteSpace& s = L.space();
  Mask a = parse_region(r, a_text), u = parse_region(r, u_text);
  if (direction != "below" && direction != "above")
    throw InputError("direction must be below or above");
  CoverageConfig cfg = make_cfg(r, a, max_path, max_refine);
  CoverageVerdict v = direction == "below" ? cov_minus(L, a, u, cfg)
                                           : cov_plus(L, a, u, cfg);
  json out;
  out["command"] = "cover";
  out["input"] = r.name;
  out["A"] = mask_json(s, a);
  out["U"] = mask_json(s, u);
  out["direction"] = direction;
  out["bounds"] = {{"max_target_path_len", v.max_target_path_len},
                   {"max_refinement_len", v.max_refinement_len},
                   {"budget", cfg.budget}};
  out["outcome"] = outcome_str(v.outcome);
  out["reason"] = v.reason;
  if (v.witness) out["witness_path"] = path_json(s, *v.witness);
  json certs = json::array();
  for (const auto& fam : v.certificates) {
    json f;
    f["target"] = path_json(s, fam.target);
    json ms = json::array();
    for (const auto& m : fam.members) {
      json mj;
      mj["endpoint"] = mask_json(s, m.endpoint);
      mj["witness"] = path_json(s, m.witness);
      mj["inhabit_index"] = m.inhabit_index;
      ms.push_back(mj);
    }
    f["members"] = ms;
    certs.push_back(f);
  }
  out["certificates"] = certs;
  emit(out);
  switch (v.outcome) {
    case CoverageOutcome::Covered: return kExitHolds;
    case CoverageOutcome::NotCovered: return kExitViolated;
    case CoverageOutcome::Unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

json grid_mask_json(const GridSpacetime& g, Mask m) {
  json arr = json::array();
  for (Cell c : g.cells_of(m)) arr.push_back({c.x, c.t});
  return arr;
}

json domain_report_json(const GridSpacetime& g, const DomainReport& rep) {
  json out;
  for (int k = 0; k < 5; ++k)
    out["domains"][domain_name(static_cast<DomainKind>(k))] =
        grid_mask_json(g, rep.domains[k]);
  json incl = json::array();
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i == j) continue;
      json e;
      e["from"] = domain_name(static_cast<DomainKind>(i));
      e["to"] = domain_name(static_cast<DomainKind>(j));
      e["subset"] = rep.inclusion[i][j];
      if (rep.strict_witness[i][j]) {
        e["strict"] = true;
        e["witness_cell"] = {rep.strict_witness[i][j]->x,
                             rep.strict_witness[i][j]->t};
      } else {
        e["strict"] = false;
      }
      incl.push_back(e);
    }
  out["inclusions"] = incl;
  out["localic_unknowns"] = rep.localic_unknowns;
  return out;
}

int cmd_domain(const Resolved& r, const std::string& region,
               const std::string& direction, const std::string& semantics,
               const std::string& format, int max_path, int max_refine) {
  json out;
  out["command"] = "domain";
  out["input"] = r.name;
  out["semantics"] = semantics;
  if (r.parsed.grid) {
    const GridSpacetime& g = *r.parsed.grid;
    Mask a = region.empty() ? r.parsed.region_a : parse_region(r, region);
    out["region"] = grid_mask_json(g, a);
    if (semantics == "all") {
      DomainReport rep = domains_all(g, a);
      if (format == "ascii") {
        std::cout << render_ascii(g, rep, a);
        return kExitHolds;
      }
      if (format == "svg") {
        std::cout << render_svg(g, rep, a);
        return kExitHolds;
      }
      out["report"] = domain_report_json(g, rep);
      CoverageConfig cfg = g.coverage_config(a);
      out["bounds"] = bounds_json(cfg, cfg.step_universe.size());
      emit(out);
      return kExitHolds;
    }
    Mask d = 0;
    long long unknowns = 0;
    if (semantics == "localic") {
      d = domain_localic(g, a, &unknowns);
      CoverageConfig cfg = g.coverage_config(a);
      out["bounds"] = bounds_json(cfg, cfg.step_universe.size());
    } else if (semantics == "chain-causal") {
      d = domain_bounded(g, a, ChainMode::Causal);
    } else if (semantics == "chain-chron") {
      d = domain_bounded(g, a, ChainMode::Chron);
    } else if (semantics == "inext-causal") {
      d = domain_inext(g, a, ChainMode::Causal);
    } else if (semantics == "inext-chron") {
      d = domain_inext(g, a, ChainMode::Chron);
    } else {
      throw InputError("unknown semantics: " + semantics);
    }
    out["domain"] = grid_mask_json(g, d);
    out["unknowns"] = unknowns;
    emit(out);
    return unknowns > 0 ? kExitUnknown : kExitHolds;
  }
  if (semantics != "localic")
    throw InputError("space inputs support only localic semantics");
  if (direction != "future" && direction != "past")
    throw InputError("direction must be future or past");
  OrderedLocale L = locale_of(r);
  const FiniteSpace& s = L.space();
  Mask a = parse_region(r, region);
  CoverageConfig cfg = make_cfg(r, a, max_path, max_refine);
  if (!s.opens_enumerable())
    throw InputError("frame too large to enumerate opens");
  Mask d = 0;
  long long unknowns = 0;
  for (Mask v : s.opens()) {
    CoverageOutcome oc = cov_outcome(L, a, v, cfg, direction == "future");
    if (oc == CoverageOutcome::Covered) d |= v;
    if (oc == CoverageOutcome::Unknown) ++unknowns;
  }
  out["region"] = mask_json(s, a);
  out["direction"] = direction;
  out["bounds"] = bounds_json(cfg, s.opens().size());
  out["domain"] = mask_json(s, d);
  out["unknowns"] = unknowns;
  emit(out);
  return unknowns > 0 ? kExitUnknown : kExitHolds;
}

int cmd_gtop(const Resolved& r) {
  OrderedLocale L = locale_of(r);
  CoverageConfig cfg = make_cfg(r, 0, 0, 0);
  long long budget = global_budget();
  auto reports = verify_down_gt_axioms(L, cfg, budget > 0 ? budget : 10000000);
  json out;
  out["command"] = "gtop";
  out["input"] = r.name;
  json arr = json::array();
  bool violated = false, unknown = false;
  for (const auto& rep : reports) {
    json item;
    item["axiom"] = rep.axiom;
    item["status"] = status_str(rep.status);
    item["detail"] = rep.detail;
    arr.push_back(item);
    if (rep.axiom != "kleisli") {
      violated |= rep.status == CheckStatus::Violated;
      unknown |= rep.status == CheckStatus::Unknown;
    }
  }
  out["reports"] = arr;
  emit(out);
  return worst_exit(violated, unknown);
}

int cmd_paths_restrict(const Resolved& r, const std::string& steps_text,
                       const std::string& window,
                       const std::string& direction) {
  if (r.parsed.grid)
    throw InputError("paths restrict expects a space input");
  OrderedLocale L = locale_of(r);
  const FiniteSpace& s = L.space();
  std::vector<Mask> steps;
  for (const auto& part : split(steps_text, ';'))
    steps.push_back(s.mask_of(split(part, ',')));
  if (steps.empty()) throw InputError("path needs at least one step");
  Mask w = parse_region(r, window);
  if (direction != "past" && direction != "future")
    throw InputError("direction must be past or future");
  json out;
  out["command"] = "paths-restrict";
  out["input"] = r.name;
  out["window"] = mask_json(s, w);
  out["direction"] = direction;
  try {
    Path p = make_path(L, steps);
    Path q = direction == "past" ? restrict_past(L, p, w)
                                 : restrict_future(L, p, w);
    out["path"] = path_json(s, p);
    out["restricted"] = path_json(s, q);
    emit(out);
    return kExitHolds;
  } catch (const PathError& e) {
    out["error"] = e.what();
    out["index"] = e.index;
    emit(out);
    return kExitViolated;
  }
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name)
    if (std::isalnum(static_cast<unsigned char>(c)))
      out += c;
    else if (!out.empty() && out.back() != '_')
      out += '_';
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

int cmd_scenario(const std::string& name, const std::string& render,
                 const std::string& outdir) {
  auto sc = scenario(name);
  if (!sc) throw InputError("unknown scenario: " + name);
  std::string artifact;
  std::string ext;
  if (render == "json") {
    json j = json::parse(grid_to_json(sc->grid, sc->A, sc->U));
    j["name"] = sc->name;
    j["expectation"] = sc->expectation;
    artifact = j.dump(2) + "\n";
    ext = ".json";
  } else {
    DomainReport rep;
    if (sc->grid.equal_slopes()) rep = domains_all(sc->grid, sc->A);
    artifact = render == "ascii" ? render_ascii(sc->grid, rep, sc->A)
                                 : render_svg(sc->grid, rep, sc->A);
    ext = render == "ascii" ? ".txt" : ".svg";
  }
  std::string fname = outdir + "/" + sanitize(sc->name) + ext;
  std::ofstream f(fname);
  if (!f) throw InputError("cannot write artifact: " + fname);
  f << artifact;
  std::cout << artifact;
  return kExitHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-model workbench for ordered locales"};
  app.require_subcommand(1);
  int workers = 1;
  app.add_option("--workers", workers, "worker count (no semantic effect)");

  std::string input, axioms, region, a_text, u_text;
  std::string direction = "below";
  std::string dom_direction = "future";
  std::string semantics = "all";
  std::string format = "json";
  std::string steps_text, window, restrict_dir = "past";
  std::string render = "ascii", outdir = ".";
  int max_path = 0, max_refine = 0;

  auto* ca = app.add_subcommand("check-axioms", "check ordered-locale axioms");
  ca->add_option("input", input)->required();
  ca->add_option("--axioms", axioms, "comma-separated axiom selection");

  auto* co = app.add_subcommand("cones", "compute localic cones of a region");
  co->add_option("input", input)->required();
  co->add_option("--region", region)->required();

  auto* cv = app.add_subcommand("cover", "decide causal coverage");
  cv->add_option("input", input)->required();
  cv->add_option("--A", a_text)->required();
  cv->add_option("--U", u_text)->required();
  cv->add_option("--direction", direction, "below|above");
  cv->add_option("--max-path", max_path);
  cv->add_option("--max-refine", max_refine);

  auto* dm = app.add_subcommand("domain", "domains of dependence");
  dm->add_option("input", input)->required();
  dm->add_option("--region", region);
  dm->add_option("--direction", dom_direction, "future|past");
  dm->add_option("--semantics", semantics,
                 "localic|chain-causal|chain-chron|inext-causal|inext-chron|all");
  dm->add_option("--format", format, "json|ascii|svg");
  dm->add_option("--max-path", max_path);
  dm->add_option("--max-refine", max_refine);

  auto* gt = app.add_subcommand("gtop", "verify down-cone Grothendieck axioms");
  gt->add_option("input", input)->required();

  auto* pa = app.add_subcommand("paths", "path operations");
  auto* pr = pa->add_subcommand("restrict", "restrict a path to a window");
  pr->add_option("input", input)->required();
  pr->add_option("--steps", steps_text, "semicolon-separated label lists")
      ->required();
  pr->add_option("--window", window)->required();
  pr->add_option("--direction", restrict_dir, "past|future");

  auto* sn = app.add_subcommand("scenario", "emit scenario artifacts");
  sn->add_option("name", input)->required();
  sn->add_option("--render", render, "json|ascii|svg");
  sn->add_option("--out", outdir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (ca->parsed()) return cmd_check_axioms(resolve_input(input), axioms);
    if (co->parsed()) return cmd_cones(resolve_input(input), region);
    if (cv->parsed())
      return cmd_cover(resolve_input(input), a_text, u_text, direction,
                       max_path, max_refine);
    if (dm->parsed())
      return cmd_domain(resolve_input(input), region, dom_direction, semantics,
                        format, max_path, max_refine);
    if (gt->parsed()) return cmd_gtop(resolve_input(input));
    if (pa->parsed() && pr->parsed())
      return cmd_paths_restrict(resolve_input(input), steps_text, window,
                                restrict_dir);
    if (sn->parsed()) return cmd_scenario(input, render, outdir);
    std::cerr << "no subcommand\n";
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitInput;
  } catch (const BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kExitUnknown;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
