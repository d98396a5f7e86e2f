// Acceptance gate: one line per criterion, exit 0 only when all pass.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "olab/dependence.hpp"
#include "olab/grid.hpp"
#include "olab/sites.hpp"
#include "helpers.hpp"

using namespace olab;

namespace {

std::shared_ptr<const FiniteSpace> share(FiniteSpace s) {
  return std::make_shared<const FiniteSpace>(std::move(s));
}

struct Criterion {
  int id;
  const char* title;
  double limit_s;  // 0 = no wall-clock bound
  bool (*check)(std::string& detail);
};

bool expect(bool ok, const std::string& msg, std::string& detail) {
  if (!ok && detail.empty()) detail = msg;
  return ok;
}

// 1: point-operator and localic-cone lemma suites.
bool c1(std::string& detail) {
  bool ok = true;
  std::mt19937_64 rng(20260823);
  for (int trial = 0; trial < 100; ++trial) {
    FiniteSpace s = testutil::random_space(rng);
    Mask full = s.full();
    for (Mask a = 0; a <= full; ++a) {
      Mask ua = s.up(a), da = s.down(a);
      ok &= expect(subset(a, ua) && subset(a, da), "up/down not inflationary",
                   detail);
      ok &= expect(s.up(ua) == ua && s.down(da) == da,
                   "up/down not idempotent", detail);
      Mask b = (a * Mask{2654435761u}) & full;
      ok &= expect(s.up(a | b) == (ua | s.up(b)) &&
                       s.down(a | b) == (da | s.down(b)),
                   "up/down not union-preserving", detail);
      if (subset(a, b))
        ok &= expect(subset(ua, s.up(b)) && subset(da, s.down(b)),
                     "up/down not monotone", detail);
      ok &= expect(((ua & b) != 0) == ((a & s.down(b)) != 0),
                   "up/down duality fails", detail);
      if (a == full) break;
    }
  }
  for (auto make : {chain3, vee, star, lvfail}) {
    auto sp = share(make());
    auto L = OrderedLocale::from_egli_milner(sp);
    for (Mask u : sp->opens()) {
      Mask cu = L.cone_up(u), cd = L.cone_down(u);
      ok &= expect(subset(u, cu) && subset(u, cd),
                   "localic cone not inflationary on " + sp->name, detail);
      ok &= expect(L.cone_up(cu) == cu && L.cone_down(cd) == cd,
                   "localic cone not idempotent on " + sp->name, detail);
      for (Mask v : sp->opens()) {
        if (subset(u, v))
          ok &= expect(subset(cu, L.cone_up(v)) && subset(cd, L.cone_down(v)),
                       "localic cone not monotone on " + sp->name, detail);
        ok &= expect(!L.leq(u, v) || (subset(v, cu) && subset(u, cd)),
                     "order incompatible with cones on " + sp->name, detail);
      }
    }
  }
  // Join formula on the open-cones frames.
  for (auto make : {chain3, vee}) {
    auto sp = share(make());
    auto L = OrderedLocale::from_egli_milner(sp);
    for (Mask u : sp->opens()) {
      Mask ju = 0, jd = 0;
      for (Mask v : sp->opens()) {
        if (L.leq(u, v)) ju |= v;
        if (L.leq(v, u)) jd |= v;
      }
      ok &= expect(L.cone_up(u) == ju && L.cone_down(u) == jd,
                   "join formula fails on " + sp->name, detail);
    }
  }
  return ok;
}

AxiomReport one(const OrderedLocale& L, const std::string& axiom) {
  auto reports = check_axioms(L, {axiom});
  return reports.empty() ? AxiomReport{} : reports.front();
}

// 2: axiom separations with exact witnesses.
bool c2(std::string& detail) {
  bool ok = true;
  auto st = share(star());
  auto Ls = OrderedLocale::from_egli_milner(st);
  auto rf = one(Ls, "(F-)");
  ok &= expect(rf.status == CheckStatus::Violated &&
                   rf.witness.size() == 2 &&
                   rf.witness[0] == st->mask_of({"s"}),
               "star (F-) witness wrong", detail);

  auto lv = share(lvfail());
  auto Ll = OrderedLocale::from_egli_milner(lv);
  auto rc = one(Ll, "(c-V)");
  ok &= expect(rc.status == CheckStatus::Violated && rc.witness.size() == 2,
               "lvfail (c-V) not separated", detail);
  if (ok && rc.witness.size() == 2) {
    Mask u = rc.witness[0], v = rc.witness[1];
    Mask diff = Ll.cone_up(u | v) ^ (Ll.cone_up(u) | Ll.cone_up(v));
    ok &= expect(diff == lv->mask_of({"b0"}),
                 "lvfail union-cone gap is not exactly b0", detail);
  }

  auto bad = scenario("TWO_SLOPES(1,2)");
  auto good = scenario("TWO_SLOPES(1,1)");
  ok &= expect(bad && good, "two-slope scenarios missing", detail);
  if (bad && good) {
    ok &= expect(one(bad->grid.locale(), "parallel").status ==
                     CheckStatus::Violated,
                 "unequal slopes pass parallel-orderedness", detail);
    ok &= expect(one(good->grid.locale(), "parallel").status ==
                     CheckStatus::Holds,
                 "equal slopes fail parallel-orderedness", detail);
  }
  return ok;
}

// 3: path lemma suite, exhaustive and randomized.
bool c3(std::string& detail) {
  bool ok = true;
  for (auto make : {chain3, vee}) {
    auto L = OrderedLocale::from_egli_milner(share(make()));
    auto rep = check_path_lemmas(L);
    ok &= expect(rep.ok() && rep.instances > 0,
                 rep.failures.empty() ? "no path instances"
                                      : rep.failures.front().detail,
                 detail);
  }
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    std::uniform_int_distribution<int> wd(2, 5), hd(2, 3), sd(1, 2);
    int w = wd(rng), h = hd(rng), s = sd(rng);
    GridSpacetime g = build_grid(w, h, s, s);
    OrderedLocale L = g.locale();
    std::vector<Mask> steps;
    for (int t = 0; t < h; ++t) steps.push_back(g.row(t));
    Path p = make_path(L, steps);
    Mask end = p.end(), v = 0, wmask = 0;
    for (int i : mask_indices(end)) {
      if (rng() & 1) v |= bit(i);
      if ((rng() & 3) == 0) wmask |= bit(i);
    }
    if (!v) v = end;
    wmask &= v;
    if (!wmask) wmask = bit(mask_indices(v).front());
    Path direct = restrict_past(L, p, wmask);
    Path via = restrict_past(L, restrict_past(L, p, v), wmask);
    ok &= expect(direct == via, "restriction functoriality fails", detail);
    ok &= expect(refines(direct, p).has_value(),
                 "restriction does not refine", detail);
    Mask w2 = (end & ~wmask) ? (end & ~wmask) : end;
    Path r1 = restrict_past(L, p, wmask);
    Path r2 = restrict_past(L, p, w2);
    for (int n = 0; n < p.len(); ++n)
      ok &= expect((r1.steps[n] | r2.steps[n]) == p.steps[n],
                   "binary cover does not join back", detail);
  }
  return ok;
}

// 4: coverage property suite on axiom-satisfying small frames.
bool c4(std::string& detail) {
  bool ok = true;
  std::vector<OrderedLocale> frames;
  frames.push_back(OrderedLocale::from_egli_milner(share(chain3())));
  frames.push_back(OrderedLocale::from_egli_milner(share(vee())));
  frames.push_back(OrderedLocale::equality_order(share(star())));
  frames.push_back(OrderedLocale::equality_order(share(chain3())));
  for (const auto& L : frames) {
    if (L.space().opens().size() > 16) continue;
    auto rep = verify_cov_properties(L);
    ok &= expect(rep.ok(), rep.violations.empty() ? "" : rep.violations.front(),
                 detail);
    ok &= expect(rep.unknowns == 0,
                 "coverage suite left unknowns on " + L.space().name, detail);
    ok &= expect(rep.instances > 0, "coverage suite ran no instances", detail);
  }
  return ok;
}

// 5: equality-locale coverage is trivial and matches the canonical topology.
bool c5(std::string& detail) {
  bool ok = true;
  auto sp = share(chain3());
  auto L = OrderedLocale::equality_order(sp);
  int nonempty = 0;
  for (Mask u : sp->opens()) {
    if (!u) continue;
    ++nonempty;
    for (Mask a : sp->opens()) {
      auto v = cov_minus(L, a, u);
      ok &= expect(v.outcome != CoverageOutcome::Unknown,
                   "equality coverage undecided", detail);
      ok &= expect((v.outcome == CoverageOutcome::Covered) == (a == u),
                   "equality coverage is not {U}", detail);
    }
  }
  ok &= expect(nonempty == 7, "chain3 should have 7 nonempty opens", detail);
  for (Mask u : sp->opens())
    for (const Sieve& r : all_sieves(*sp, u)) {
      auto member = j_minus_member(L, u, r);
      ok &= expect(member != CoverageOutcome::Unknown,
                   "induced topology undecided", detail);
      ok &= expect((member == CoverageOutcome::Covered) ==
                       canonical_cover_member(u, r),
                   "induced topology differs from canonical", detail);
    }
  return ok;
}

// 6: down-cone Grothendieck axioms.
bool c6(std::string& detail) {
  bool ok = true;
  for (auto make : {chain3, vee}) {
    auto L = OrderedLocale::from_egli_milner(share(make()));
    auto reports = verify_down_gt_axioms(L);
    ok &= expect(reports.size() == 6, "unexpected axiom report count", detail);
    for (const auto& r : reports) {
      if (r.axiom == "kleisli") continue;
      ok &= expect(r.status == CheckStatus::Holds,
                   "axiom " + r.axiom + " fails on " + L.space().name, detail);
    }
  }
  return ok;
}

// 7: dependence algebra on the bounded coverage.
bool c7(std::string& detail) {
  bool ok = true;
  for (auto make : {chain3, vee}) {
    auto sp = share(make());
    auto L = OrderedLocale::from_egli_milner(sp);
    auto c = AbstractCoverage::from_ordered_locale(L);
    for (const auto& r : check_causal_site_axioms(c))
      ok &= expect(r.status == CheckStatus::Holds && r.unknowns == 0,
                   r.axiom + " fails on " + sp->name, detail);
    InfluenceResult inf = influence(c);
    ok &= expect(inf.unknowns == 0 && inf.monad_violations.empty(),
                 "influence monads misbehave on " + sp->name, detail);
    for (Mask u : sp->opens())
      ok &= expect(inf.L_minus.at(u) == L.cone_down(u) &&
                       inf.L_plus.at(u) == L.cone_up(u),
                   "influence differs from the cones on " + sp->name, detail);
    auto rep = verify_dependence_lemmas(c, &L);
    ok &= expect(rep.ok() && rep.unknowns == 0 && rep.instances > 0,
                 rep.violations.empty() ? "dependence suite empty"
                                        : rep.violations.front(),
                 detail);
  }
  return ok;
}

// 8: grid domains, strictness, discrete collapse, stable snapshots.
bool c8(std::string& detail) {
  bool ok = true;
  for (const char* name : {"MINKOWSKI_PLAIN", "POINT_REMOVED", "CONE_CUT",
                           "REGION_REMOVED", "CURVE_REMOVED_FROM_A"}) {
    auto sc = scenario(name);
    ok &= expect(sc.has_value(), "scenario missing", detail);
    if (!sc) continue;
    DomainReport rep = domains_all(sc->grid, sc->A);
    ok &= expect(rep.localic_available && rep.localic_unknowns == 0,
                 std::string("localic column undecided on ") + name, detail);
    ok &= expect(subset(rep.domains[0], rep.domains[2]) &&
                     subset(rep.domains[2], rep.domains[3]) &&
                     subset(rep.domains[3], rep.domains[4]),
                 std::string("inclusion chain broken on ") + name, detail);
  }
  auto cc = scenario("CONE_CUT");
  DomainReport rep = domains_all(cc->grid, cc->A);
  auto w = rep.strict_witness[0][2];
  ok &= expect(w.has_value(), "cone-cut strictness lost", detail);
  if (w)
    detail = "strict inextendible vs bounded witness cell (" +
             std::to_string(w->x) + "," + std::to_string(w->t) + ")";
  auto cv = scenario("CURVE_REMOVED_FROM_A");
  DomainReport rcv = domains_all(cv->grid, cv->A);
  ok &= expect(rcv.domains[3] == rcv.domains[4],
               "curve scenario: bounded-chron differs from localic", detail);

  const std::string golden_cc =
      "grid 5x3 slopes 1/1\n"
      "55355\n"
      "5###5\n"
      "AAAAA\n"
      "legend: # hole, A region, digit = domain layers containing cell\n"
      "inext-causal: {(0,0),(1,0),(2,0),(3,0),(4,0),(0,1),(4,1),(0,2),(1,2),"
      "(3,2),(4,2)}\n"
      "inext-chron: {(0,0),(1,0),(2,0),(3,0),(4,0),(0,1),(4,1),(0,2),(1,2),"
      "(3,2),(4,2)}\n"
      "bounded-causal: {(0,0),(1,0),(2,0),(3,0),(4,0),(0,1),(4,1),(0,2),"
      "(1,2),(2,2),(3,2),(4,2)}\n"
      "bounded-chron: {(0,0),(1,0),(2,0),(3,0),(4,0),(0,1),(4,1),(0,2),(1,2),"
      "(2,2),(3,2),(4,2)}\n"
      "localic: {(0,0),(1,0),(2,0),(3,0),(4,0),(0,1),(4,1),(0,2),(1,2),(2,2),"
      "(3,2),(4,2)}\n";
  ok &= expect(render_ascii(cc->grid, rep, cc->A) == golden_cc,
               "cone-cut snapshot drifted", detail);
  const std::string golden_cv =
      "grid 5x3 slopes 1/1\n"
      "1...1\n"
      "51.15\n"
      "AA.AA\n"
      "legend: # hole, A region, digit = domain layers containing cell\n"
      "inext-causal: {(0,0),(1,0),(3,0),(4,0),(0,1),(4,1)}\n"
      "inext-chron: {(0,0),(1,0),(3,0),(4,0),(0,1),(1,1),(3,1),(4,1),(0,2),"
      "(4,2)}\n"
      "bounded-causal: {(0,0),(1,0),(3,0),(4,0),(0,1),(4,1)}\n"
      "bounded-chron: {(0,0),(1,0),(3,0),(4,0),(0,1),(4,1)}\n"
      "localic: {(0,0),(1,0),(3,0),(4,0),(0,1),(4,1)}\n";
  ok &= expect(render_ascii(cv->grid, rcv, cv->A) == golden_cv,
               "curve snapshot drifted", detail);
  return ok;
}

// 9: two independent localic-domain implementations agree.
bool c9(std::string& detail) {
  bool ok = true;
  std::vector<GridSpacetime> grids;
  for (int w = 1; w <= 8; ++w)
    for (int h = 1; h <= 4; ++h)
      if (w * h <= 16) grids.push_back(build_grid(w, h, 1, 1));
  grids.push_back(build_grid(4, 3, 1, 1, {{1, 1}}));
  grids.push_back(build_grid(5, 3, 1, 1, {{2, 1}, {1, 2}}));
  grids.push_back(build_grid(4, 4, 1, 1, {{0, 1}, {3, 2}}));
  grids.push_back(build_grid(4, 2, 2, 2));
  int compared = 0;
  for (const GridSpacetime& g : grids) {
    if (g.cells.size() > 16) continue;
    Mask a = g.row(0);
    long long unknowns = 0;
    Mask direct = domain_localic(g, a, &unknowns);
    ok &= expect(unknowns == 0, "direct localic column undecided", detail);
    auto c = AbstractCoverage::from_ordered_locale(g.locale(),
                                                   g.coverage_config(a));
    DependenceResult dep = domain_of_dependence(c);
    ok &= expect(dep.unknowns == 0, "dependence column undecided", detail);
    ok &= expect((dep.D_plus.at(a) | a) == (direct | a),
                 "localic columns disagree on grid " + std::to_string(g.width) +
                     "x" + std::to_string(g.height),
                 detail);
    ++compared;
  }
  ok &= expect(compared >= 20, "too few grids compared", detail);
  return ok;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// 10: CLI byte-determinism across worker counts.
bool c10(std::string& detail) {
  const std::string tmp = OLAB_TEST_TMP;
  std::vector<std::pair<std::string, std::string>> cmds;  // prefix, args
  for (const auto& name : scenario_names()) {
    std::string q = "\"" + name + "\"";
    cmds.push_back({"", "scenario " + q + " --render ascii --out \"" + tmp +
                            "\""});
    cmds.push_back({"", "scenario " + q + " --render json --out \"" + tmp +
                            "\""});
    cmds.push_back({"", "scenario " + q + " --render svg --out \"" + tmp +
                            "\""});
    cmds.push_back({"OLAB_BUDGET=200000", "check-axioms " + q});
    cmds.push_back({"", "cones " + q + " --region \"0,0\""});
    if (name.find("TWO_SLOPES") == std::string::npos) {
      cmds.push_back({"", "domain " + q + " --semantics all"});
      cmds.push_back({"", "cover " + q + " --A \"0,0\" --U \"0,2\""});
    }
  }
  cmds.push_back({"", "check-axioms CHAIN3"});
  cmds.push_back({"", "gtop VEE"});
  cmds.push_back(
      {"", "paths restrict CHAIN3 --steps \"a;a,b;b,c\" --window b"});
  bool ok = true;
  for (const auto& [prefix, args] : cmds) {
    std::string ref;
    int ref_code = 0;
    for (int workers : {1, 4, 8}) {
      std::string out_f = tmp + "/det_out.txt";
      std::string cmd = prefix + " \"" + OLAB_BINARY + "\" --workers " +
                        std::to_string(workers) + " " + args + " > " + out_f +
                        " 2>&1";
      int rc = std::system(cmd.c_str());
      int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
      std::string out = slurp(out_f);
      if (workers == 1) {
        ref = out;
        ref_code = code;
      } else {
        ok &= expect(out == ref && code == ref_code,
                     "nondeterministic output for: " + args, detail);
      }
    }
  }
  return ok;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "cone and monad lemma suite", 10.0, c1},
      {2, "axiom separations with exact witnesses", 5.0, c2},
      {3, "path restriction lemmas", 30.0, c3},
      {4, "bounded coverage property suite", 60.0, c4},
      {5, "equality-locale coverage and canonical topology", 0.0, c5},
      {6, "down-cone Grothendieck axioms", 120.0, c6},
      {7, "dependence algebra", 0.0, c7},
      {8, "grid domain hierarchy and snapshots", 60.0, c8},
      {9, "localic domain cross-validation", 0.0, c9},
      {10, "deterministic CLI output across workers", 0.0, c10},
  };
  bool all_ok = true;
  for (const auto& cr : criteria) {
    std::string detail;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = cr.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    if (cr.limit_s > 0 && secs >= cr.limit_s) {
      ok = false;
      if (detail.empty()) detail = "time bound exceeded";
    }
    std::printf("criterion %2d: %s (%.2fs) %s%s%s\n", cr.id,
                ok ? "pass" : "FAIL", secs, cr.title,
                detail.empty() ? "" : " - ", detail.c_str());
    all_ok &= ok;
  }
  return all_ok ? 0 : 1;
}
