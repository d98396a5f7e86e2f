#include <doctest.h>

#include <memory>
#include <random>

#include "helpers.hpp"
#include "olab/grid.hpp"
#include "olab/path.hpp"

using namespace olab;

namespace {

std::shared_ptr<const FiniteSpace> share(FiniteSpace s) {
  return std::make_shared<const FiniteSpace>(std::move(s));
}

}  // namespace

TEST_CASE("make_path validates steps") {
  auto sp = share(chain3());
  auto L = OrderedLocale::from_egli_milner(sp);
  CHECK_THROWS_AS(make_path(L, {}), PathError);
  CHECK_THROWS_AS(make_path(L, {sp->mask_of({"a"}), 0}), PathError);
  CHECK_THROWS_AS(make_path(L, {sp->mask_of({"b"}), sp->mask_of({"a"})}),
                  PathError);
  try {
    make_path(L, {sp->mask_of({"b"}), sp->mask_of({"a"})});
  } catch (const PathError& e) {
    CHECK(e.index == 0);
  }
  auto st = share(star());
  auto Ls = OrderedLocale::from_egli_milner(st);
  CHECK_THROWS_AS(make_path(Ls, {st->mask_of({"z"})}), PathError);

  Path p = make_path(L, {sp->mask_of({"a"}), sp->mask_of({"a", "b"}),
                         sp->mask_of({"b", "c"})});
  CHECK(p.len() == 3);
  CHECK(p.start() == sp->mask_of({"a"}));
  CHECK(p.end() == sp->mask_of({"b", "c"}));
}

TEST_CASE("concat shares the junction step") {
  auto sp = share(chain3());
  auto L = OrderedLocale::from_egli_milner(sp);
  Path first = make_path(L, {sp->mask_of({"a"}), sp->mask_of({"a", "b"})});
  Path second = make_path(L, {sp->mask_of({"a", "b"}), sp->mask_of({"b", "c"})});
  Path joined = concat(L, first, second);
  CHECK(joined.len() == 3);
  CHECK(joined.steps[1] == sp->mask_of({"a", "b"}));
  CHECK_THROWS_AS(concat(L, second, first), PathError);
}

TEST_CASE("refinement witnesses use earliest hits") {
  auto sp = share(chain3());
  auto L = OrderedLocale::from_egli_milner(sp);
  Path q = make_path(L, {sp->mask_of({"a"}), sp->mask_of({"b"}),
                         sp->mask_of({"c"})});
  Path p = make_path(L, {sp->mask_of({"a", "b"}), sp->mask_of({"b", "c"})});
  auto w = refines(q, p);
  REQUIRE(w.has_value());
  CHECK(w->assignment == std::vector<int>{0, 1});

  Path p2 = make_path(L, {sp->mask_of({"a"}), sp->mask_of({"c"})});
  CHECK(!refines(make_path(L, {sp->mask_of({"c"})}), p2).has_value());
}

TEST_CASE("restriction on chain3") {
  auto sp = share(chain3());
  auto L = OrderedLocale::from_egli_milner(sp);
  Path p = make_path(L, {sp->mask_of({"a"}), sp->mask_of({"a", "b"}),
                         sp->mask_of({"b", "c"})});
  Path r = restrict_past(L, p, sp->mask_of({"b"}));
  CHECK(r.steps == std::vector<Mask>{sp->mask_of({"a"}), sp->mask_of({"a", "b"}),
                                     sp->mask_of({"b"})});
  Path f = restrict_future(L, p, sp->mask_of({"a"}));
  CHECK(f.steps[0] == sp->mask_of({"a"}));
  CHECK(restrict_past(L, p, p.end()) == p);
  CHECK_THROWS_AS(restrict_past(L, p, 0), PathError);
  CHECK_THROWS_AS(restrict_past(L, p, sp->mask_of({"a"})), PathError);
  CHECK_THROWS_AS(restrict_future(L, p, sp->mask_of({"b"})), PathError);
}

TEST_CASE("restriction on a 3x2 grid") {
  GridSpacetime g = build_grid(3, 2, 1, 1);
  OrderedLocale L = g.locale();
  Path p = make_path(L, {g.row(0), g.row(1)});
  Path r = restrict_past(L, p, g.region({{0, 1}}));
  CHECK(r.steps[0] == g.region({{0, 0}, {1, 0}}));
  CHECK(r.steps[1] == g.region({{0, 1}}));
  Path f = restrict_future(L, p, g.region({{2, 0}}));
  CHECK(f.steps[1] == g.region({{1, 1}, {2, 1}}));
}

TEST_CASE("restriction can empty out when the order is not parallel") {
  // On the unequal-slope grid some restrictions have nothing to retreat to;
  // they must fail loudly instead of silently dropping a step.
  auto sc = scenario("TWO_SLOPES(1,2)");
  REQUIRE(sc.has_value());
  const GridSpacetime& g = sc->grid;
  OrderedLocale L = g.locale();
  bool found = false;
  for (Mask u : g.rectangle_basis()) {
    for (Mask v : g.rectangle_basis()) {
      if (!L.leq(u, v)) continue;
      Path p = make_path(L, {u, v});
      for (int i : mask_indices(v)) {
        try {
          restrict_past(L, p, bit(i));
        } catch (const PathError& e) {
          std::string msg = e.what();
          if (msg.find("parallel ordered") != std::string::npos) found = true;
        }
        if (found) break;
      }
      if (found) break;
    }
    if (found) break;
  }
  CHECK(found);
}

TEST_CASE("path lemma suite is clean on chain3 and vee") {
  for (auto make : {chain3, vee}) {
    auto L = OrderedLocale::from_egli_milner(share(make()));
    PathLemmaReport rep = check_path_lemmas(L, 3);
    CHECK(rep.ok());
    CHECK(rep.instances > 0);
  }
}

TEST_CASE("path lemma suite reports budget exhaustion") {
  auto L = OrderedLocale::from_egli_milner(share(chain3()));
  PathLemmaReport rep = check_path_lemmas(L, 3, 10);
  REQUIRE(!rep.ok());
  CHECK(rep.failures.back().lemma == "budget");
}

TEST_CASE("restriction lemmas on random grid instances") {
  std::mt19937_64 rng(424242);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::uniform_int_distribution<int> wd(2, 5), hd(2, 3), sd(1, 2);
    int w = wd(rng), h = hd(rng), s = sd(rng);
    GridSpacetime g = build_grid(w, h, s, s);
    OrderedLocale L = g.locale();
    std::vector<Mask> steps;
    for (int t = 0; t < h; ++t) steps.push_back(g.row(t));
    Path p = make_path(L, steps);
    // Random nested targets inside the endpoint.
    Mask end = p.end();
    Mask v = 0, wmask = 0;
    for (int i : mask_indices(end)) {
      if (rng() & 1) v |= bit(i);
      if ((rng() & 3) == 0) wmask |= bit(i);
    }
    if (!v) v = end;
    wmask &= v;
    if (!wmask) wmask = bit(mask_indices(v).front());
    Path direct = restrict_past(L, p, wmask);
    Path via = restrict_past(L, restrict_past(L, p, v), wmask);
    CHECK(direct == via);
    CHECK(refines(direct, p).has_value());
    // Binary cover of the endpoint joins back to the path.
    Mask w1 = wmask;
    Mask w2 = (end & ~wmask) ? (end & ~wmask) : end;
    Path r1 = restrict_past(L, p, w1);
    Path r2 = restrict_past(L, p, w2);
    for (int n = 0; n < p.len(); ++n)
      CHECK((r1.steps[n] | r2.steps[n]) == p.steps[n]);
    ++checked;
  }
  CHECK(checked == 1000);
}
