#include "olab/dependence.hpp"

#include <algorithm>
#include <array>

namespace olab {

AbstractCoverage AbstractCoverage::from_ordered_locale(const OrderedLocale& L,
                                                       CoverageConfig cfg) {
  AbstractCoverage c;
  c.space_ = L.space_ptr();
  if (cfg.step_universe.empty()) {
    c.universe_ = L.space().opens();
  } else {
    c.universe_ = cfg.step_universe;
    c.universe_.push_back(0);
    std::sort(c.universe_.begin(), c.universe_.end(), canonical_less);
    c.universe_.erase(std::unique(c.universe_.begin(), c.universe_.end()),
                      c.universe_.end());
  }
  c.oracle_ = [L, cfg](Mask a, Mask u, CovDirection dir) {
    return cov_outcome(L, a, u, cfg, dir == CovDirection::Below);
  };
  return c;
}

AbstractCoverage AbstractCoverage::explicit_table(
    std::shared_ptr<const FiniteSpace> space,
    std::map<Mask, std::vector<Mask>> below,
    std::map<Mask, std::vector<Mask>> above) {
  AbstractCoverage c;
  c.space_ = std::move(space);
  c.universe_ = c.space_->opens();
  c.oracle_ = [below = std::move(below), above = std::move(above)](
                  Mask a, Mask u, CovDirection dir) {
    const auto& table = dir == CovDirection::Below ? below : above;
    auto it = table.find(u);
    if (it == table.end()) return CoverageOutcome::NotCovered;
    return std::find(it->second.begin(), it->second.end(), a) !=
                   it->second.end()
               ? CoverageOutcome::Covered
               : CoverageOutcome::NotCovered;
  };
  return c;
}

CoverageOutcome AbstractCoverage::member(Mask a, Mask u,
                                         CovDirection dir) const {
  auto key = std::make_tuple(a, u, dir);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  CoverageOutcome o = oracle_(a, u, dir);
  cache_.emplace(key, o);
  return o;
}

namespace {

const char* dirname(CovDirection d) {
  return d == CovDirection::Below ? "below" : "above";
}

}  // namespace

std::vector<SiteAxiomReport> check_causal_site_axioms(
    const AbstractCoverage& c) {
  std::vector<SiteAxiomReport> out;
  const auto& U = c.universe();
  auto fmt = [&](Mask m) { return c.space().format_mask(m); };
  const CovDirection dirs[] = {CovDirection::Below, CovDirection::Above};

  auto tally = [](SiteAxiomReport& r, CoverageOutcome o) {
    if (o == CoverageOutcome::Unknown) {
      ++r.unknowns;
      if (r.status == CheckStatus::Holds) r.status = CheckStatus::Unknown;
      return true;
    }
    return false;
  };

  {  // C1
    SiteAxiomReport r;
    r.axiom = "C1";
    for (CovDirection d : dirs)
      for (Mask u : U) {
        CoverageOutcome o = c.member(u, u, d);
        if (tally(r, o)) continue;
        if (o != CoverageOutcome::Covered) {
          r.status = CheckStatus::Violated;
          r.detail = fmt(u) + std::string(" not in its own cover ") +
                     dirname(d);
        }
      }
    out.push_back(r);
  }
  {  // C2: join stability, nullary and binary.
    SiteAxiomReport r;
    r.axiom = "C2";
    for (CovDirection d : dirs) {
      for (Mask a : U) {
        CoverageOutcome o = c.member(a, 0, d);
        if (tally(r, o)) continue;
        if ((o == CoverageOutcome::Covered) != (a == 0)) {
          r.status = CheckStatus::Violated;
          r.detail = std::string("nullary instance wrong ") + dirname(d) +
                     " at " + fmt(a);
        }
      }
      for (Mask u1 : U)
        for (Mask u2 : U) {
          Mask uj = u1 | u2;
          if (!c.space().is_open(uj)) continue;
          std::vector<Mask> joins;
          bool unk = false;
          for (Mask a1 : U) {
            CoverageOutcome o1 = c.member(a1, u1, d);
            if (o1 == CoverageOutcome::Unknown) unk = true;
            if (o1 != CoverageOutcome::Covered) continue;
            for (Mask a2 : U) {
              CoverageOutcome o2 = c.member(a2, u2, d);
              if (o2 == CoverageOutcome::Unknown) unk = true;
              if (o2 == CoverageOutcome::Covered) joins.push_back(a1 | a2);
            }
          }
          for (Mask a : U) {
            CoverageOutcome o = c.member(a, uj, d);
            if (o == CoverageOutcome::Unknown) unk = true;
            if (o == CoverageOutcome::Unknown) continue;
            bool in_joins =
                std::find(joins.begin(), joins.end(), a) != joins.end();
            if ((o == CoverageOutcome::Covered) != in_joins && !unk) {
              r.status = CheckStatus::Violated;
              r.detail = std::string("binary instance fails ") + dirname(d) +
                         " at U1=" + fmt(u1) + " U2=" + fmt(u2) +
                         " A=" + fmt(a);
            }
          }
          if (unk) {
            ++r.unknowns;
            if (r.status == CheckStatus::Holds)
              r.status = CheckStatus::Unknown;
          }
        }
    }
    out.push_back(r);
  }
  {  // C3: transitivity.
    SiteAxiomReport r;
    r.axiom = "C3";
    for (CovDirection d : dirs)
      for (Mask a : U)
        for (Mask b : U) {
          CoverageOutcome oab = c.member(a, b, d);
          if (tally(r, oab)) continue;
          if (oab != CoverageOutcome::Covered) continue;
          for (Mask u : U) {
            CoverageOutcome obu = c.member(b, u, d);
            if (tally(r, obu)) continue;
            if (obu != CoverageOutcome::Covered) continue;
            CoverageOutcome oau = c.member(a, u, d);
            if (tally(r, oau)) continue;
            if (oau != CoverageOutcome::Covered) {
              r.status = CheckStatus::Violated;
              r.detail = std::string("transitivity fails ") + dirname(d) +
                         " at " + fmt(a) + "," + fmt(b) + "," + fmt(u);
            }
          }
        }
    out.push_back(r);
  }
  {  // C4: sandwich.
    SiteAxiomReport r;
    r.axiom = "C4";
    for (CovDirection d : dirs)
      for (Mask u : U)
        for (Mask a : U) {
          CoverageOutcome oa = c.member(a, u, d);
          if (tally(r, oa)) continue;
          if (oa != CoverageOutcome::Covered) continue;
          for (Mask b : U) {
            if (!subset(a, b)) continue;
            CoverageOutcome ob = c.member(b, u, d);
            if (tally(r, ob)) continue;
            if (ob != CoverageOutcome::Covered) continue;
            for (Mask m : U) {
              if (!subset(a, m) || !subset(m, b)) continue;
              CoverageOutcome om = c.member(m, u, d);
              if (tally(r, om)) continue;
              if (om != CoverageOutcome::Covered) {
                r.status = CheckStatus::Violated;
                r.detail = std::string("sandwich fails ") + dirname(d) +
                           " at A=" + fmt(a) + " C=" + fmt(m) +
                           " B=" + fmt(b) + " U=" + fmt(u);
              }
            }
          }
        }
    out.push_back(r);
  }
  {  // C5: flip.
    SiteAxiomReport r;
    r.axiom = "C5";
    for (CovDirection d : dirs) {
      CovDirection opp =
          d == CovDirection::Below ? CovDirection::Above : CovDirection::Below;
      for (Mask a : U)
        for (Mask u : U) {
          CoverageOutcome o = c.member(a, u, d);
          if (tally(r, o)) continue;
          if (o != CoverageOutcome::Covered) continue;
          bool found = false, unk = false;
          for (Mask w : U) {
            if (!subset(u, w)) continue;
            CoverageOutcome ow = c.member(w, a, opp);
            if (ow == CoverageOutcome::Unknown) unk = true;
            if (ow == CoverageOutcome::Covered) {
              found = true;
              break;
            }
          }
          if (!found) {
            if (unk) {
              ++r.unknowns;
              if (r.status == CheckStatus::Holds)
                r.status = CheckStatus::Unknown;
            } else {
              r.status = CheckStatus::Violated;
              r.detail = std::string("no flip witness ") + dirname(d) +
                         " for A=" + fmt(a) + " U=" + fmt(u);
            }
          }
        }
    }
    out.push_back(r);
  }
  return out;
}

InfluenceResult influence(const AbstractCoverage& c) {
  InfluenceResult r;
  const auto& U = c.universe();
  auto fmt = [&](Mask m) { return c.space().format_mask(m); };
  for (CovDirection d : {CovDirection::Below, CovDirection::Above}) {
    auto& table = d == CovDirection::Below ? r.L_minus : r.L_plus;
    for (Mask u : U) {
      Mask join = 0;
      for (Mask a : U) {
        CoverageOutcome o = c.member(a, u, d);
        if (o == CoverageOutcome::Unknown) ++r.unknowns;
        if (o == CoverageOutcome::Covered) join |= a;
      }
      table[u] = join;
    }
    // Monad re-check on the tabulated map.
    for (Mask u : U) {
      if (!subset(u, table[u]))
        r.monad_violations.push_back(std::string("unit fails for L") +
                                     (d == CovDirection::Below ? "-" : "+") +
                                     " at " + fmt(u));
      auto it = table.find(table[u]);
      if (it != table.end() && it->second != table[u])
        r.monad_violations.push_back(std::string("idempotence fails for L") +
                                     (d == CovDirection::Below ? "-" : "+") +
                                     " at " + fmt(u));
      for (Mask v : U)
        if (subset(u, v) && !subset(table[u], table[v]))
          r.monad_violations.push_back(std::string("monotonicity fails for L") +
                                       (d == CovDirection::Below ? "-" : "+") +
                                       " at " + fmt(u) + "," + fmt(v));
    }
    if (table.count(0) && table[0] != 0)
      r.monad_violations.push_back("nullary join preservation fails");
    for (Mask u : U)
      for (Mask v : U) {
        auto it = table.find(u | v);
        if (it != table.end() && it->second != (table[u] | table[v]))
          r.monad_violations.push_back(
              std::string("binary join preservation fails for L") +
              (d == CovDirection::Below ? "-" : "+") + " at " + fmt(u) + "," +
              fmt(v));
      }
  }
  return r;
}

DependenceResult domain_of_dependence(const AbstractCoverage& c) {
  DependenceResult r;
  const auto& U = c.universe();
  for (Mask a : U) {
    Mask dplus = 0, dminus = 0;
    for (Mask v : U) {
      CoverageOutcome ob = c.member(a, v, CovDirection::Below);
      r.provenance[{a, v, CovDirection::Below}] = ob;
      if (ob == CoverageOutcome::Unknown) ++r.unknowns;
      if (ob == CoverageOutcome::Covered) dplus |= v;
      CoverageOutcome oa = c.member(a, v, CovDirection::Above);
      r.provenance[{a, v, CovDirection::Above}] = oa;
      if (oa == CoverageOutcome::Unknown) ++r.unknowns;
      if (oa == CoverageOutcome::Covered) dminus |= v;
    }
    r.D_plus[a] = dplus;
    r.D_minus[a] = dminus;
  }
  return r;
}

DependenceLemmaReport verify_dependence_lemmas(const AbstractCoverage& c,
                                               const OrderedLocale* L) {
  DependenceLemmaReport rep;
  const auto& U = c.universe();
  auto fmt = [&](Mask m) { return c.space().format_mask(m); };
  InfluenceResult inf = influence(c);
  DependenceResult dep = domain_of_dependence(c);
  rep.unknowns = inf.unknowns + dep.unknowns;
  auto expect = [&](bool cond, const std::string& what) {
    ++rep.instances;
    if (!cond) rep.violations.push_back(what);
  };

  for (Mask a : U) {
    // Dependence unit and monotonicity.
    expect(subset(a, dep.D_plus[a]), "A not below D+(A) at " + fmt(a));
    expect(subset(a, dep.D_minus[a]), "A not below D-(A) at " + fmt(a));
    for (Mask b : U)
      if (subset(a, b)) {
        expect(subset(dep.D_plus[a], dep.D_plus[b]),
               "D+ not monotone at " + fmt(a) + "," + fmt(b));
        expect(subset(dep.D_minus[a], dep.D_minus[b]),
               "D- not monotone at " + fmt(a) + "," + fmt(b));
      }
    // Idempotence and composition, when the intermediate opens are in range.
    if (rep.unknowns == 0) {
      auto itp = dep.D_plus.find(dep.D_plus[a]);
      if (itp != dep.D_plus.end())
        expect(itp->second == dep.D_plus[a],
               "D+ not idempotent at " + fmt(a));
      auto itm = dep.D_minus.find(dep.D_minus[a]);
      if (itm != dep.D_minus.end())
        expect(itm->second == dep.D_minus[a],
               "D- not idempotent at " + fmt(a));
    }
    auto lp = inf.L_plus.find(dep.D_plus[a]);
    if (lp != inf.L_plus.end())
      expect(lp->second == inf.L_plus[a],
             "L+ of D+ differs from L+ at " + fmt(a));
    auto lm = inf.L_minus.find(dep.D_minus[a]);
    if (lm != inf.L_minus.end())
      expect(lm->second == inf.L_minus[a],
             "L- of D- differs from L- at " + fmt(a));
    expect(subset(dep.D_plus[a], inf.L_plus[a]),
           "D+ not below L+ at " + fmt(a));
    expect(subset(dep.D_minus[a], inf.L_minus[a]),
           "D- not below L- at " + fmt(a));
  }
  // Membership determination.
  for (Mask a : U)
    for (Mask u : U) {
      CoverageOutcome ob = c.member(a, u, CovDirection::Below);
      if (ob != CoverageOutcome::Unknown)
        expect((ob == CoverageOutcome::Covered) ==
                   (subset(a, inf.L_minus[u]) && subset(u, dep.D_plus[a])),
               "below membership determination fails at A=" + fmt(a) +
                   " U=" + fmt(u));
      CoverageOutcome oa = c.member(a, u, CovDirection::Above);
      if (oa != CoverageOutcome::Unknown)
        expect((oa == CoverageOutcome::Covered) ==
                   (subset(a, inf.L_plus[u]) && subset(u, dep.D_minus[a])),
               "above membership determination fails at A=" + fmt(a) +
                   " U=" + fmt(u));
    }
  // Order recovery against a reference locale.
  if (L) {
    for (Mask u : U)
      for (Mask v : U) {
        bool induced = subset(u, inf.L_minus[v]) && subset(v, inf.L_plus[u]);
        expect(induced == L->leq(u, v),
               "order recovery differs at " + fmt(u) + "," + fmt(v));
      }
    for (Mask u : U) {
      expect(inf.L_minus[u] == L->cone_down(u),
             "L- differs from the past cone at " + fmt(u));
      expect(inf.L_plus[u] == L->cone_up(u),
             "L+ differs from the future cone at " + fmt(u));
    }
  }
  return rep;
}

RoundtripReport roundtrip_experiment(const AbstractCoverage& c,
                                     CoverageConfig cfg) {
  RoundtripReport rep;
  InfluenceResult inf = influence(c);
  if (!inf.monad_violations.empty()) {
    rep.note = "influence maps are not monads: " + inf.monad_violations[0];
    return rep;
  }
  auto up = [table = inf.L_plus](Mask m) {
    auto it = table.find(m);
    return it != table.end() ? it->second : m;
  };
  auto down = [table = inf.L_minus](Mask m) {
    auto it = table.find(m);
    return it != table.end() ? it->second : m;
  };
  OrderedLocale rebuilt;
  try {
    rebuilt = OrderedLocale::from_monad_pair(
        std::make_shared<FiniteSpace>(c.space()), up, down, c.universe());
  } catch (const ConstructionError& e) {
    rep.note = std::string("rebuild failed: ") + e.what();
    return rep;
  }
  for (Mask a : c.universe())
    for (Mask u : c.universe())
      for (CovDirection d : {CovDirection::Below, CovDirection::Above}) {
        CoverageOutcome orig = c.member(a, u, d);
        CoverageOutcome redo =
            cov_outcome(rebuilt, a, u, cfg, d == CovDirection::Below);
        if (orig == CoverageOutcome::Unknown ||
            redo == CoverageOutcome::Unknown) {
          ++rep.unknowns;
          continue;
        }
        if (orig == redo) {
          ++rep.equal;
        } else {
          ++rep.differing;
          if (rep.differences.size() < 10)
            rep.differences.push_back(
                "A=" + c.space().format_mask(a) + " U=" +
                c.space().format_mask(u) + " " + dirname(d) + ": table says " +
                (orig == CoverageOutcome::Covered ? "covered" : "not covered") +
                ", rebuilt locale says " +
                (redo == CoverageOutcome::Covered ? "covered" : "not covered"));
        }
      }
  return rep;
}

std::string roundtrip_counterexample_search() {
  auto sp = std::make_shared<FiniteSpace>(build_space_labels(
      "PAIR", {"x", "y"}, {}, TopologySpec::discrete()));
  const auto& O = sp->opens();  // 4 opens
  const int K = 4;
  // Candidate per-open cover sets, encoded as 4-bit masks over O indices.
  // C1 forces U to be present in its own set; the empty open's set is {0}.
  std::vector<std::vector<int>> choices(K);
  for (int u = 0; u < K; ++u)
    for (int set = 0; set < 16; ++set) {
      if (u == 0 && set != 1) continue;  // Cov(empty) = {empty}
      if (!(set >> u & 1)) continue;     // C1
      choices[u].push_back(set);
    }
  auto member = [&](const std::array<int, 4>& t, int a, int u) {
    return (t[u] >> a & 1) != 0;
  };
  auto idx = [&](Mask m) {
    for (int i = 0; i < K; ++i)
      if (O[i] == m) return i;
    return -1;
  };
  auto check_one_dir = [&](const std::array<int, 4>& t) {
    // C2 nullary is built in; C2 binary and C3, C4 per direction.
    for (int u1 = 0; u1 < K; ++u1)
      for (int u2 = 0; u2 < K; ++u2) {
        int uj = idx(O[u1] | O[u2]);
        for (int a = 0; a < K; ++a) {
          bool in_joins = false;
          for (int a1 = 0; a1 < K && !in_joins; ++a1)
            for (int a2 = 0; a2 < K; ++a2)
              if (member(t, a1, u1) && member(t, a2, u2) &&
                  idx(O[a1] | O[a2]) == a) {
                in_joins = true;
                break;
              }
          if (member(t, a, uj) != in_joins) return false;
        }
      }
    for (int a = 0; a < K; ++a)
      for (int b = 0; b < K; ++b)
        for (int u = 0; u < K; ++u)
          if (member(t, a, b) && member(t, b, u) && !member(t, a, u))
            return false;
    for (int u = 0; u < K; ++u)
      for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b)
          for (int m = 0; m < K; ++m)
            if (member(t, a, u) && member(t, b, u) && subset(O[a], O[m]) &&
                subset(O[m], O[b]) && !member(t, m, u))
              return false;
    return true;
  };
  long long candidates = 0, passing = 0, differing = 0;
  std::string first_diff;
  for (int s1 : choices[1])
    for (int s2 : choices[2])
      for (int s3 : choices[3]) {
        std::array<int, 4> below{1, s1, s2, s3};
        if (!check_one_dir(below)) continue;
        for (int t1 : choices[1])
          for (int t2 : choices[2])
            for (int t3 : choices[3]) {
              std::array<int, 4> above{1, t1, t2, t3};
              ++candidates;
              if (!check_one_dir(above)) continue;
              // C5 across the two directions.
              bool c5 = true;
              for (int a = 0; a < K && c5; ++a)
                for (int u = 0; u < K; ++u) {
                  if (member(below, a, u)) {
                    bool found = false;
                    for (int w = 0; w < K; ++w)
                      if (subset(O[u], O[w]) && member(above, w, a))
                        found = true;
                    if (!found) {
                      c5 = false;
                      break;
                    }
                  }
                  if (member(above, a, u)) {
                    bool found = false;
                    for (int w = 0; w < K; ++w)
                      if (subset(O[u], O[w]) && member(below, w, a))
                        found = true;
                    if (!found) {
                      c5 = false;
                      break;
                    }
                  }
                }
              if (!c5) continue;
              ++passing;
              std::map<Mask, std::vector<Mask>> tb, ta;
              for (int u = 0; u < K; ++u)
                for (int a = 0; a < K; ++a) {
                  if (member(below, a, u)) tb[O[u]].push_back(O[a]);
                  if (member(above, a, u)) ta[O[u]].push_back(O[a]);
                }
              AbstractCoverage c =
                  AbstractCoverage::explicit_table(sp, tb, ta);
              RoundtripReport rr = roundtrip_experiment(c);
              if (rr.differing > 0 && first_diff.empty()) {
                ++differing;
                first_diff =
                    "candidate counterexample found: " + rr.differences[0];
              } else if (rr.differing > 0) {
                ++differing;
              }
            }
      }
  if (differing == 0)
    return "no counterexample: all " + std::to_string(passing) +
           " coverages satisfying C1-C5 on the two-point discrete frame "
           "round-trip to themselves (" +
           std::to_string(candidates) + " direction pairs examined)";
  return std::to_string(differing) + " of " + std::to_string(passing) +
         " admissible coverages fail to round-trip; " + first_diff;
}

}  // namespace olab
