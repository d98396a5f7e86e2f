#include "olab/sites.hpp"

#include <algorithm>
#include <map>

namespace olab {

Sieve maximal_sieve(const FiniteSpace& s, Mask u) {
  Sieve r;
  r.root = u;
  for (Mask v : s.opens())
    if (subset(v, u)) r.members.push_back(v);
  return r;
}

Sieve sieve_from_generators(const FiniteSpace& s, Mask root,
                            const std::vector<Mask>& gens) {
  Sieve r;
  r.root = root;
  for (Mask v : s.opens())
    for (Mask g : gens)
      if (subset(g, root) && subset(v, g)) {
        r.members.push_back(v);
        break;
      }
  std::sort(r.members.begin(), r.members.end(), canonical_less);
  r.members.erase(std::unique(r.members.begin(), r.members.end()),
                  r.members.end());
  return r;
}

Sieve pullback(const FiniteSpace& s, Mask v, const Sieve& r) {
  if (!subset(v, r.root)) throw InputError("pullback arrow is not below root");
  Sieve out;
  out.root = v;
  for (Mask w : r.members) out.members.push_back(v & w);
  std::sort(out.members.begin(), out.members.end(), canonical_less);
  out.members.erase(std::unique(out.members.begin(), out.members.end()),
                    out.members.end());
  return out;
}

Mask sieve_join(const Sieve& r) {
  Mask j = 0;
  for (Mask m : r.members) j |= m;
  return j;
}

bool canonical_cover_member(Mask u, const Sieve& r) {
  return sieve_join(r) == u;
}

CoverageOutcome j_minus_member(const OrderedLocale& L, Mask u, const Sieve& r,
                               const CoverageConfig& cfg) {
  if (r.root != L.cone_down(u))
    throw InputError("sieve is not rooted at the past cone of the target");
  return cov_minus(L, sieve_join(r), u, cfg).outcome;
}

std::vector<Sieve> all_sieves(const FiniteSpace& s, Mask root,
                              long long budget) {
  std::vector<Mask> below;
  for (Mask v : s.opens())
    if (subset(v, root)) below.push_back(v);
  std::vector<Sieve> out;
  std::vector<Mask> antichain;
  // Each sieve corresponds to exactly one antichain of maximal members.
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (budget-- < 0) throw BudgetError("sieve enumeration budget exceeded");
    Sieve r = sieve_from_generators(s, root, antichain);
    r.root = root;
    out.push_back(std::move(r));
    for (std::size_t i = from; i < below.size(); ++i) {
      bool comparable = false;
      for (Mask a : antichain)
        if (subset(a, below[i]) || subset(below[i], a)) {
          comparable = true;
          break;
        }
      if (comparable) continue;
      antichain.push_back(below[i]);
      self(self, i + 1);
      antichain.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<GTReport> verify_down_gt_axioms(const OrderedLocale& L,
                                            const CoverageConfig& cfg,
                                            long long budget) {
  std::vector<GTReport> out;
  const FiniteSpace& S = L.space();
  const auto& O = S.opens();

  std::map<std::pair<Mask, Mask>, CoverageOutcome> memo;
  auto cov = [&](Mask a, Mask u) {
    auto key = std::make_pair(a, u);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    CoverageOutcome o = cov_minus(L, a, u, cfg).outcome;
    memo.emplace(key, o);
    return o;
  };
  auto fmt = [&](Mask m) { return S.format_mask(m); };

  bool unknown_any = false;
  auto covered = [&](Mask a, Mask u, bool& unk) {
    CoverageOutcome o = cov(a, u);
    if (o == CoverageOutcome::Unknown) {
      unk = true;
      unknown_any = true;
    }
    return o == CoverageOutcome::Covered;
  };

  // Sieve caches per root.
  std::map<Mask, std::vector<Sieve>> sieves;
  auto sieves_on = [&](Mask root) -> const std::vector<Sieve>& {
    auto it = sieves.find(root);
    if (it != sieves.end()) return it->second;
    return sieves.emplace(root, all_sieves(S, root, budget)).first->second;
  };

  // (i): the maximal sieve on the past cone covers.
  {
    GTReport r{"(i)", CheckStatus::Holds, ""};
    for (Mask u : O) {
      bool unk = false;
      if (!covered(L.cone_down(u), u, unk)) {
        r.status = unk ? CheckStatus::Unknown : CheckStatus::Violated;
        r.detail = "maximal sieve on the past cone of " + fmt(u) +
                   " is not covering";
        break;
      }
    }
    out.push_back(r);
  }
  // (i'): the unit pushforward of the maximal sieve on U covers.
  {
    GTReport r{"(i')", CheckStatus::Holds, ""};
    for (Mask u : O) {
      bool unk = false;
      if (!covered(u, u, unk)) {
        r.status = unk ? CheckStatus::Unknown : CheckStatus::Violated;
        r.detail = "unit image of the maximal sieve at " + fmt(u) +
                   " is not covering";
        break;
      }
    }
    out.push_back(r);
  }
  // (i''): canonical covers push forward to covering sieves.
  {
    GTReport r{"(i'')", CheckStatus::Holds, ""};
    for (Mask u : O) {
      for (const Sieve& sv : sieves_on(u)) {
        if (sieve_join(sv) != u) continue;
        bool unk = false;
        if (!covered(u, u, unk)) {
          r.status = unk ? CheckStatus::Unknown : CheckStatus::Violated;
          r.detail = "canonical cover of " + fmt(u) + " fails to cover";
          break;
        }
      }
      if (r.status != CheckStatus::Holds) break;
    }
    out.push_back(r);
  }
  // (ii): covering sieves pull back along arrows V <= U.
  {
    GTReport r{"(ii)", CheckStatus::Holds, ""};
    for (Mask u : O) {
      Mask du = L.cone_down(u);
      for (const Sieve& sv : sieves_on(du)) {
        bool unk = false;
        if (!covered(sieve_join(sv), u, unk)) continue;  // not in J-(U)
        for (Mask v : O) {
          if (!subset(v, u)) continue;
          Mask dv = L.cone_down(v);
          Mask pulled = 0;
          for (Mask w : sv.members) pulled |= w & dv;
          bool unk2 = false;
          if (!covered(pulled, v, unk2)) {
            r.status = unk2 ? CheckStatus::Unknown : CheckStatus::Violated;
            r.detail = "sieve in J-(" + fmt(u) + ") with join " +
                       fmt(sieve_join(sv)) + " pulls back badly along " +
                       fmt(v);
            break;
          }
        }
        if (r.status != CheckStatus::Holds) break;
      }
      if (r.status != CheckStatus::Holds) break;
    }
    out.push_back(r);
  }
  // (iii): local character.
  {
    GTReport r{"(iii)", CheckStatus::Holds, ""};
    for (Mask u : O) {
      Mask du = L.cone_down(u);
      const auto& svs = sieves_on(du);
      for (const Sieve& s1 : svs) {
        bool unk = false;
        if (!covered(sieve_join(s1), u, unk)) continue;
        for (const Sieve& s2 : svs) {
          bool all_local = true;
          bool unk_local = false;
          for (Mask v : s1.members) {
            if (v == 0) continue;
            Mask dv = L.cone_down(v);
            Mask pulled = 0;
            for (Mask w : s2.members) pulled |= w & dv;
            if (!covered(pulled, v, unk_local)) {
              all_local = false;
              break;
            }
          }
          if (!all_local || unk_local) continue;
          bool unk2 = false;
          if (!covered(sieve_join(s2), u, unk2)) {
            r.status = unk2 ? CheckStatus::Unknown : CheckStatus::Violated;
            r.detail = "locally covering sieve with join " +
                       fmt(sieve_join(s2)) + " fails to cover " + fmt(u);
            break;
          }
        }
        if (r.status != CheckStatus::Holds) break;
      }
      if (r.status != CheckStatus::Holds) break;
    }
    out.push_back(r);
  }
  // Kleisli demonstration: plain sieves on U with arrows W <= downcone(U);
  // axiom (ii) fails as soon as a strictly-past disjoint arrow exists.
  {
    GTReport r{"kleisli", CheckStatus::Holds,
               "no axiom (ii) failure on the plain Kleisli preorder"};
    bool found = false;
    for (Mask u : O) {
      if (found) break;
      for (const Sieve& sv : sieves_on(u)) {
        if (found) break;
        bool unk = false;
        if (!covered(sieve_join(sv), u, unk)) continue;
        for (Mask w : O) {
          if (!subset(w, L.cone_down(u))) continue;
          Mask dw = L.cone_down(w);
          Mask pulled = 0;
          for (Mask m : sv.members) pulled |= m & dw;
          bool unk2 = false;
          if (!covered(pulled, w, unk2) && !unk2) {
            r.status = CheckStatus::Violated;
            r.detail = "axiom (ii) fails on the plain Kleisli preorder: "
                       "sieve on " +
                       fmt(u) + " with join " + fmt(sieve_join(sv)) +
                       " pulled back along " + fmt(w) + " joins to " +
                       fmt(pulled);
            found = true;
            break;
          }
        }
      }
    }
    out.push_back(r);
  }
  if (unknown_any)
    for (auto& r : out)
      if (r.status == CheckStatus::Holds && r.detail.empty())
        r.detail = "some coverage decisions were inconclusive";
  return out;
}

}  // namespace olab
