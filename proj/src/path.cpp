#include "olab/path.hpp"

#include <algorithm>

namespace olab {

Path make_path(const OrderedLocale& L, std::vector<Mask> steps) {
  if (steps.empty()) throw PathError("a path needs at least one step", 0);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i] == 0)
      throw PathError("empty step at index " + std::to_string(i),
                      static_cast<int>(i));
    if (!L.space().is_open(steps[i]))
      throw PathError("step at index " + std::to_string(i) + " is not open",
                      static_cast<int>(i));
  }
  for (std::size_t i = 0; i + 1 < steps.size(); ++i)
    if (!L.leq(steps[i], steps[i + 1]))
      throw PathError("steps at index " + std::to_string(i) +
                          " are not causally related",
                      static_cast<int>(i));
  return Path{std::move(steps)};
}

Path concat(const OrderedLocale& L, const Path& first, const Path& second) {
  if (first.end() != second.start())
    throw PathError("concatenation endpoint mismatch", first.len() - 1);
  std::vector<Mask> steps = first.steps;
  steps.insert(steps.end(), second.steps.begin() + 1, second.steps.end());
  return make_path(L, std::move(steps));
}

std::optional<RefinementWitness> refines(const Path& q, const Path& p) {
  RefinementWitness w;
  w.assignment.reserve(p.steps.size());
  for (Mask pn : p.steps) {
    int found = -1;
    for (std::size_t m = 0; m < q.steps.size(); ++m)
      if (subset(q.steps[m], pn)) {
        found = static_cast<int>(m);
        break;
      }
    if (found < 0) return std::nullopt;
    w.assignment.push_back(found);
  }
  return w;
}

Path restrict_past(const OrderedLocale& L, const Path& p, Mask w) {
  if (w == 0) throw PathError("restriction target is empty", p.len() - 1);
  if (!subset(w, p.end()))
    throw PathError("restriction target not below the endpoint", p.len() - 1);
  std::vector<Mask> r(p.steps.size());
  r.back() = w;
  for (int n = p.len() - 2; n >= 0; --n) {
    r[n] = p.steps[n] & L.cone_down(r[n + 1]);
    if (r[n] == 0)
      throw PathError(
          "restriction produced an empty step at index " + std::to_string(n) +
              "; the locale must be parallel ordered",
          n);
  }
  return make_path(L, std::move(r));
}

Path restrict_future(const OrderedLocale& L, const Path& p, Mask v) {
  if (v == 0) throw PathError("restriction target is empty", 0);
  if (!subset(v, p.start()))
    throw PathError("restriction target not below the starting point", 0);
  std::vector<Mask> r(p.steps.size());
  r.front() = v;
  for (int n = 1; n < p.len(); ++n) {
    r[n] = p.steps[n] & L.cone_up(r[n - 1]);
    if (r[n] == 0)
      throw PathError(
          "restriction produced an empty step at index " + std::to_string(n) +
              "; the locale must be parallel ordered",
          n);
  }
  return make_path(L, std::move(r));
}

namespace {

void extend_paths(const OrderedLocale& L, const std::vector<Mask>& steps,
                  std::vector<Mask>& cur, int max_len,
                  std::vector<Path>& out) {
  out.push_back(Path{cur});
  if (static_cast<int>(cur.size()) >= max_len) return;
  for (Mask s : steps)
    if (L.leq(cur.back(), s)) {
      cur.push_back(s);
      extend_paths(L, steps, cur, max_len, out);
      cur.pop_back();
    }
}

}  // namespace

PathLemmaReport check_path_lemmas(const OrderedLocale& L, int max_len,
                                  long long budget) {
  PathLemmaReport rep;
  const auto& O = L.space().opens();
  std::vector<Mask> nonempty;
  for (Mask u : O)
    if (u != 0) nonempty.push_back(u);

  std::vector<Path> paths;
  for (Mask s : nonempty) {
    std::vector<Mask> cur{s};
    extend_paths(L, nonempty, cur, max_len, paths);
  }
  // Keep length-sorted enumeration canonical.
  std::stable_sort(paths.begin(), paths.end(),
                   [](const Path& a, const Path& b) {
                     return a.len() < b.len();
                   });

  auto fail = [&](const std::string& lemma, const std::string& detail) {
    rep.failures.push_back({lemma, detail});
  };
  auto fmt = [&](const Path& p) {
    std::string s = "(";
    for (int i = 0; i < p.len(); ++i) {
      if (i) s += ",";
      s += L.space().format_mask(p.steps[i]);
    }
    return s + ")";
  };
  bool open_cones = has_open_cones(L.space()).holds;

  for (const Path& p : paths) {
    // Trivial restriction.
    if (restrict_past(L, p, p.end()) != p)
      fail("trivial restriction", "p restricted to its endpoint changed: " +
                                      fmt(p));
    // Functoriality.
    for (Mask v : nonempty) {
      if (!subset(v, p.end())) continue;
      for (Mask w : nonempty) {
        if (!subset(w, v)) continue;
        if (budget-- < 0) {
          rep.failures.push_back({"budget", "lemma budget exceeded"});
          return rep;
        }
        ++rep.instances;
        Path direct = restrict_past(L, p, w);
        Path via = restrict_past(L, restrict_past(L, p, v), w);
        if (direct != via)
          fail("restriction functoriality",
               "p=" + fmt(p) + " V=" + L.space().format_mask(v) +
                   " W=" + L.space().format_mask(w));
        // Restriction refines the original.
        if (!refines(direct, p))
          fail("restriction refines", "p=" + fmt(p) +
                                          " W=" + L.space().format_mask(w));
      }
    }
    // Join over binary covers of the endpoint.
    for (Mask w1 : nonempty) {
      if (!subset(w1, p.end())) continue;
      for (Mask w2 : nonempty) {
        if (!subset(w2, p.end()) || (w1 | w2) != p.end()) continue;
        if (budget-- < 0) {
          rep.failures.push_back({"budget", "lemma budget exceeded"});
          return rep;
        }
        ++rep.instances;
        Path r1 = restrict_past(L, p, w1);
        Path r2 = restrict_past(L, p, w2);
        for (int n = 0; n < p.len(); ++n)
          if ((r1.steps[n] | r2.steps[n]) != p.steps[n]) {
            fail("join over restrictions",
                 "p=" + fmt(p) + " cover " + L.space().format_mask(w1) + "," +
                     L.space().format_mask(w2) + " at index " +
                     std::to_string(n));
            break;
          }
      }
    }
    // Point preservation (open-cone spaces): chains threading the path stay
    // inside the restriction.
    if (open_cones) {
      std::vector<std::vector<int>> chains;
      std::vector<int> cur;
      auto rec = [&](auto&& self, int n) -> void {
        if (n == p.len()) {
          chains.push_back(cur);
          return;
        }
        for (int x : mask_indices(p.steps[n])) {
          if (n > 0 && !(L.space().up_of[cur.back()] & bit(x))) continue;
          cur.push_back(x);
          self(self, n + 1);
          cur.pop_back();
        }
      };
      rec(rec, 0);
      for (const auto& ch : chains)
        for (Mask w : nonempty) {
          if (!subset(w, p.end()) || !(w & bit(ch.back()))) continue;
          if (budget-- < 0) {
            rep.failures.push_back({"budget", "lemma budget exceeded"});
            return rep;
          }
          ++rep.instances;
          Path r = restrict_past(L, p, w);
          for (int n = 0; n < p.len(); ++n)
            if (!(r.steps[n] & bit(ch[n]))) {
              fail("point preservation",
                   "p=" + fmt(p) + " W=" + L.space().format_mask(w) +
                       " chain point " + L.space().points[ch[n]] +
                       " dropped at index " + std::to_string(n));
              break;
            }
        }
    }
  }

  // Refinement preservation under the side condition.
  for (const Path& p : paths)
    for (const Path& q : paths) {
      if (!subset(q.end(), p.end())) continue;
      if (!refines(q, p)) continue;
      bool side = true;
      for (int m = 0; m < q.len() && side; ++m)
        for (int n = 0; n + 1 < p.len(); ++n) {
          if (!subset(q.steps[m], p.steps[n]) || p.steps[n] == p.end())
            continue;
          bool later = false;
          for (int k = m; k < q.len(); ++k)
            if (subset(q.steps[k], p.steps[n + 1])) {
              later = true;
              break;
            }
          if (!later) {
            side = false;
            break;
          }
        }
      if (!side) continue;
      for (Mask w : nonempty) {
        if (!subset(w, q.end())) continue;
        if (budget-- < 0) {
          rep.failures.push_back({"budget", "lemma budget exceeded"});
          return rep;
        }
        ++rep.instances;
        Path qw = restrict_past(L, q, w);
        Path pw = restrict_past(L, p, w);
        if (!refines(qw, pw))
          fail("refinement preservation",
               "q=" + fmt(q) + " p=" + fmt(p) +
                   " W=" + L.space().format_mask(w));
      }
    }

  return rep;
}

}  // namespace olab
