#include "olab/locale.hpp"

#include <algorithm>

namespace olab {

namespace {

struct Budget {
  long long left;
  bool tick(long long n = 1) {
    left -= n;
    return left >= 0;
  }
};

}  // namespace

OrderedLocale OrderedLocale::from_egli_milner(
    std::shared_ptr<const FiniteSpace> s) {
  OrderedLocale L;
  L.space_ = std::move(s);
  L.source_ = Source::EgliMilner;
  return L;
}

OrderedLocale OrderedLocale::equality_order(
    std::shared_ptr<const FiniteSpace> s) {
  OrderedLocale L;
  L.space_ = std::move(s);
  L.source_ = Source::Equality;
  return L;
}

OrderedLocale OrderedLocale::upper_order(
    std::shared_ptr<const FiniteSpace> s) {
  OrderedLocale L;
  L.space_ = std::move(s);
  L.source_ = Source::Upper;
  return L;
}

OrderedLocale OrderedLocale::from_monad_pair(
    std::shared_ptr<const FiniteSpace> s, ConeFn up, ConeFn down,
    std::vector<Mask> validation_universe) {
  if (validation_universe.empty() && s->opens_enumerable())
    validation_universe = s->opens();
  for (Mask u : validation_universe) {
    for (auto [fn, tag] : {std::pair<ConeFn*, const char*>{&up, "up"},
                           {&down, "down"}}) {
      Mask fu = (*fn)(u);
      if (!s->is_open(fu))
        throw ConstructionError(std::string(tag) + "(" + s->format_mask(u) +
                                ") is not open");
      if (!subset(u, fu))
        throw ConstructionError(std::string("monad unit fails: ") +
                                s->format_mask(u) + " not below " + tag +
                                " of itself");
      if ((*fn)(fu) != fu)
        throw ConstructionError(std::string("monad idempotence fails for ") +
                                tag + " at " + s->format_mask(u));
    }
    for (Mask v : validation_universe) {
      if (!subset(u, v)) continue;
      if (!subset(up(u), up(v)))
        throw ConstructionError("monad monotonicity fails for up at " +
                                s->format_mask(u) + " below " +
                                s->format_mask(v));
      if (!subset(down(u), down(v)))
        throw ConstructionError("monad monotonicity fails for down at " +
                                s->format_mask(u) + " below " +
                                s->format_mask(v));
    }
  }
  OrderedLocale L;
  L.space_ = std::move(s);
  L.source_ = Source::MonadPair;
  L.up_fn_ = std::move(up);
  L.down_fn_ = std::move(down);
  return L;
}

bool OrderedLocale::leq(Mask u, Mask v) const {
  if (flipped_) std::swap(u, v);
  switch (source_) {
    case Source::EgliMilner:
      return egli_milner(*space_, u, v);
    case Source::Equality:
      return u == v;
    case Source::Upper:
      return subset(v, space_->up(u));
    case Source::MonadPair:
      return subset(u, down_fn_(v)) && subset(v, up_fn_(u));
  }
  return false;
}

Mask OrderedLocale::cone_up(Mask u) const {
  if (flipped_) {
    OrderedLocale base = *this;
    base.flipped_ = false;
    return base.cone_down(u);
  }
  switch (source_) {
    case Source::EgliMilner:
      return space_->interior(space_->up(u));
    case Source::Equality:
      return u;
    case Source::Upper:
      return space_->interior(space_->up(u));
    case Source::MonadPair:
      return up_fn_(u);
  }
  return u;
}

Mask OrderedLocale::cone_down(Mask u) const {
  if (flipped_) {
    OrderedLocale base = *this;
    base.flipped_ = false;
    return base.cone_up(u);
  }
  switch (source_) {
    case Source::EgliMilner:
      return space_->interior(space_->down(u));
    case Source::Equality:
      return u;
    case Source::Upper: {
      // Join formula: the upper order has no closed cone expression below.
      Mask out = 0;
      for (Mask w : space_->opens())
        if (leq(w, u)) out |= w;
      return out;
    }
    case Source::MonadPair:
      return down_fn_(u);
  }
  return u;
}

OrderedLocale OrderedLocale::reversed() const {
  OrderedLocale L = *this;
  L.flipped_ = !flipped_;
  return L;
}

namespace {

struct Ctx {
  const OrderedLocale& L;
  const std::vector<Mask>& O;
  std::vector<Mask> coneUp, coneDown;
  Budget budget;

  explicit Ctx(const OrderedLocale& L_, long long budget_)
      : L(L_), O(L_.space().opens()), budget{budget_} {
    coneUp.reserve(O.size());
    coneDown.reserve(O.size());
    for (Mask u : O) {
      coneUp.push_back(L.cone_up(u));
      coneDown.push_back(L.cone_down(u));
    }
  }
};

AxiomReport unknown_report(const std::string& axiom, const std::string& why) {
  return {axiom, CheckStatus::Unknown, {}, why};
}

AxiomReport check_join_axiom(Ctx& c) {
  AxiomReport r{"(V)", CheckStatus::Holds, {}, ""};
  if (!c.L.leq(0, 0)) {
    r.status = CheckStatus::Violated;
    r.detail = "nullary instance: empty join not related to itself";
    return r;
  }
  std::vector<std::pair<Mask, Mask>> edges;
  for (Mask u : c.O)
    for (Mask v : c.O) {
      if (!c.budget.tick()) return unknown_report("(V)", "budget exceeded");
      if (c.L.leq(u, v)) edges.emplace_back(u, v);
    }
  for (auto [u1, v1] : edges)
    for (auto [u2, v2] : edges) {
      if (!c.budget.tick()) return unknown_report("(V)", "budget exceeded");
      if (!c.L.leq(u1 | u2, v1 | v2)) {
        r.status = CheckStatus::Violated;
        r.witness = {u1, v1, u2, v2};
        r.detail = "binary instance fails";
        return r;
      }
    }
  return r;
}

AxiomReport check_c_leq(Ctx& c) {
  AxiomReport r{"(c-<|)", CheckStatus::Holds, {}, ""};
  for (std::size_t i = 0; i < c.O.size(); ++i)
    for (std::size_t j = 0; j < c.O.size(); ++j) {
      if (!c.budget.tick()) return unknown_report("(c-<|)", "budget exceeded");
      bool lhs = c.L.leq(c.O[i], c.O[j]);
      bool rhs = subset(c.O[i], c.coneDown[j]) && subset(c.O[j], c.coneUp[i]);
      if (lhs != rhs) {
        r.status = CheckStatus::Violated;
        r.witness = {c.O[i], c.O[j]};
        r.detail = lhs ? "order holds but cone condition fails"
                       : "cone condition holds but order fails";
        return r;
      }
    }
  return r;
}

AxiomReport check_c_join(Ctx& c) {
  AxiomReport r{"(c-V)", CheckStatus::Holds, {}, ""};
  if (c.L.cone_up(0) != 0 || c.L.cone_down(0) != 0) {
    r.status = CheckStatus::Violated;
    r.witness = {0};
    r.detail = "nullary instance: cone of the empty open is nonempty";
    return r;
  }
  for (std::size_t i = 0; i < c.O.size(); ++i)
    for (std::size_t j = 0; j < c.O.size(); ++j) {
      if (!c.budget.tick()) return unknown_report("(c-V)", "budget exceeded");
      Mask uv = c.O[i] | c.O[j];
      if (c.L.cone_up(uv) != (c.coneUp[i] | c.coneUp[j])) {
        r.status = CheckStatus::Violated;
        r.witness = {c.O[i], c.O[j]};
        r.detail = "upcone of a binary join differs from the join of upcones";
        return r;
      }
      if (c.L.cone_down(uv) != (c.coneDown[i] | c.coneDown[j])) {
        r.status = CheckStatus::Violated;
        r.witness = {c.O[i], c.O[j]};
        r.detail =
            "downcone of a binary join differs from the join of downcones";
        return r;
      }
    }
  return r;
}

// Strong-square form of the meet axioms, quantified over triples.
AxiomReport check_wedge_plus(Ctx& c) {
  AxiomReport r{"(^+)", CheckStatus::Holds, {}, ""};
  for (Mask w : c.O)
    for (std::size_t i = 0; i < c.O.size(); ++i) {
      if (!subset(w, c.O[i])) continue;
      for (Mask v : c.O) {
        if (!c.budget.tick()) return unknown_report("(^+)", "budget exceeded");
        if (!c.L.leq(c.O[i], v)) continue;
        if (!c.L.leq(w, c.L.cone_up(w) & v)) {
          r.status = CheckStatus::Violated;
          r.witness = {w, c.O[i], v};
          r.detail = "W not below its forward square";
          return r;
        }
      }
    }
  return r;
}

AxiomReport check_wedge_minus(Ctx& c) {
  AxiomReport r{"(^-)", CheckStatus::Holds, {}, ""};
  for (Mask w : c.O)
    for (std::size_t j = 0; j < c.O.size(); ++j) {
      if (!subset(w, c.O[j])) continue;
      for (Mask u : c.O) {
        if (!c.budget.tick()) return unknown_report("(^-)", "budget exceeded");
        if (!c.L.leq(u, c.O[j])) continue;
        if (!c.L.leq(c.L.cone_down(w) & u, w)) {
          r.status = CheckStatus::Violated;
          r.witness = {w, u, c.O[j]};
          r.detail = "backward square not below W";
          return r;
        }
      }
    }
  return r;
}

AxiomReport check_empty(Ctx& c) {
  AxiomReport r{"(0)", CheckStatus::Holds, {}, ""};
  for (Mask u : c.O) {
    if (!c.budget.tick()) return unknown_report("(0)", "budget exceeded");
    if (u != 0 && c.L.leq(u, 0)) {
      r.status = CheckStatus::Violated;
      r.witness = {u};
      r.detail = "nonempty open below the empty open";
      return r;
    }
    if (u != 0 && c.L.leq(0, u)) {
      r.status = CheckStatus::Violated;
      r.witness = {u};
      r.detail = "empty open below a nonempty open";
      return r;
    }
  }
  return r;
}

AxiomReport check_frobenius(Ctx& c, bool minus) {
  const char* name = minus ? "(F-)" : "(F+)";
  AxiomReport r{name, CheckStatus::Holds, {}, ""};
  for (std::size_t i = 0; i < c.O.size(); ++i)
    for (std::size_t j = 0; j < c.O.size(); ++j) {
      if (!c.budget.tick()) return unknown_report(name, "budget exceeded");
      Mask u = c.O[i], v = c.O[j];
      bool ok;
      if (minus)
        ok = subset(u & c.coneDown[j], c.L.cone_down(v & c.coneUp[i]));
      else
        ok = subset(u & c.coneUp[j], c.L.cone_up(v & c.coneDown[i]));
      if (!ok) {
        r.status = CheckStatus::Violated;
        r.witness = {u, v};
        r.detail = minus ? "meet with the past cone escapes the past of the "
                           "shifted meet"
                         : "meet with the future cone escapes the future of "
                           "the shifted meet";
        return r;
      }
    }
  return r;
}

}  // namespace

std::vector<AxiomReport> check_axioms(const OrderedLocale& L,
                                      const std::vector<std::string>&
                                          selection,
                                      long long budget) {
  std::vector<std::string> sel = selection;
  if (sel.empty())
    sel = {"(V)", "(c-<|)", "(c-V)", "(^+)", "(^-)", "(0)", "(F-)", "(F+)"};
  std::vector<AxiomReport> out;
  std::unique_ptr<Ctx> ctx;
  try {
    ctx = std::make_unique<Ctx>(L, budget);
  } catch (const CapacityError& e) {
    for (const auto& a : sel) out.push_back(unknown_report(a, e.what()));
    return out;
  }
  std::function<AxiomReport(const std::string&)> run =
      [&](const std::string& a) -> AxiomReport {
    if (a == "(V)") return check_join_axiom(*ctx);
    if (a == "(c-<|)") return check_c_leq(*ctx);
    if (a == "(c-V)") return check_c_join(*ctx);
    if (a == "(^+)") return check_wedge_plus(*ctx);
    if (a == "(^-)") return check_wedge_minus(*ctx);
    if (a == "(0)") return check_empty(*ctx);
    if (a == "(F-)") return check_frobenius(*ctx, true);
    if (a == "(F+)") return check_frobenius(*ctx, false);
    if (a == "parallel") {
      AxiomReport combined{"parallel", CheckStatus::Holds, {}, ""};
      for (auto part : {"(^+)", "(^-)", "(0)"}) {
        AxiomReport pr = run(part);
        if (pr.status == CheckStatus::Violated) {
          combined.status = CheckStatus::Violated;
          combined.witness = pr.witness;
          combined.detail = std::string(part) + " fails: " + pr.detail;
          return combined;
        }
        if (pr.status == CheckStatus::Unknown)
          combined.status = CheckStatus::Unknown;
      }
      return combined;
    }
    throw InputError("unknown axiom selector: " + a);
  };
  for (const auto& a : sel) out.push_back(run(a));
  return out;
}

std::vector<EquivalenceReport> check_equivalences(const OrderedLocale& L,
                                                  long long budget) {
  std::vector<EquivalenceReport> out;
  Ctx c(L, budget);
  const auto& O = c.O;

  auto holds = [&](const char* name) {
    Ctx local(L, budget);
    AxiomReport r;
    if (std::string(name) == "(^+)")
      r = check_wedge_plus(local);
    else if (std::string(name) == "(^-)")
      r = check_wedge_minus(local);
    else if (std::string(name) == "(c-<|)")
      r = check_c_leq(local);
    else if (std::string(name) == "(F-)")
      r = check_frobenius(local, true);
    else
      r = check_frobenius(local, false);
    return r.status == CheckStatus::Holds;
  };

  bool strong_sq = holds("(^+)") && holds("(^-)");
  bool c_leq = holds("(c-<|)");
  bool fro = holds("(F-)") && holds("(F+)");

  // Original existential form of the meet axioms.
  bool wedge_plus = true, wedge_minus = true;
  for (Mask u : O) {
    for (Mask v : O) {
      if (!subset(u, v)) continue;
      for (Mask vp : O) {
        if (!L.leq(v, vp)) continue;
        bool found = false;
        for (Mask up : O)
          if (subset(up, vp) && L.leq(u, up)) {
            found = true;
            break;
          }
        if (!found) wedge_plus = false;
      }
    }
  }
  for (Mask up : O) {
    for (Mask vp : O) {
      if (!subset(up, vp)) continue;
      for (Mask v : O) {
        if (!L.leq(v, vp)) continue;
        bool found = false;
        for (Mask u : O)
          if (subset(u, v) && L.leq(u, up)) {
            found = true;
            break;
          }
        if (!found) wedge_minus = false;
      }
    }
  }
  bool wedge = wedge_plus && wedge_minus;

  {
    EquivalenceReport r;
    r.name = "meet axioms iff strong squares";
    r.lhs = wedge;
    r.rhs = strong_sq;
    r.agree = (r.lhs == r.rhs);
    out.push_back(r);
  }
  {
    EquivalenceReport r;
    r.name = "meet axioms iff cone comparison plus Frobenius";
    r.lhs = wedge;
    r.rhs = c_leq && fro;
    r.agree = (r.lhs == r.rhs);
    out.push_back(r);
  }
  {
    EquivalenceReport r;
    r.name = "meet axioms imply cone comparison";
    r.lhs = wedge;
    r.rhs = c_leq;
    r.agree = (!r.lhs || r.rhs);
    out.push_back(r);
  }
  {
    // Under the meet axioms plus (0): disjointness transfers across cones.
    Ctx c0(L, budget);
    bool parallel = strong_sq &&
                    check_empty(c0).status == CheckStatus::Holds;
    bool transfer = true;
    for (std::size_t i = 0; i < O.size() && transfer; ++i)
      for (std::size_t j = 0; j < O.size(); ++j) {
        bool past_empty = (O[i] & c.coneDown[j]) == 0;
        bool fut_empty = (c.coneUp[i] & O[j]) == 0;
        if (past_empty != fut_empty) {
          transfer = false;
          break;
        }
      }
    EquivalenceReport r;
    r.name = "cones are parallel (disjointness transfer)";
    r.lhs = parallel;
    r.rhs = transfer;
    r.agree = (!r.lhs || r.rhs);
    out.push_back(r);
  }
  {
    Ctx c0(L, budget);
    bool parallel = strong_sq &&
                    check_empty(c0).status == CheckStatus::Holds;
    bool rel = true;
    for (std::size_t i = 0; i < O.size() && rel; ++i)
      for (std::size_t j = 0; j < O.size(); ++j) {
        Mask u = O[i], v = O[j];
        Mask w = u & c.coneDown[j];
        if (!L.leq(w, v & L.cone_up(w))) {
          rel = false;
          break;
        }
        Mask wp = c.coneUp[i] & v;
        if (!L.leq(L.cone_down(wp) & u, wp)) {
          rel = false;
          break;
        }
      }
    EquivalenceReport r;
    r.name = "parallel order relates arbitrary opens";
    r.lhs = parallel;
    r.rhs = rel;
    r.agree = (!r.lhs || r.rhs);
    out.push_back(r);
  }
  return out;
}

}  // namespace olab
