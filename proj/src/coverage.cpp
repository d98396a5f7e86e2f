#include "olab/coverage.hpp"

#include <array>
#include <cstring>
#include <deque>
#include <memory>
#include <unordered_map>
#include <unordered_set>

namespace olab {

namespace {

constexpr int kMaxUniverse = 256;
constexpr int kCertificateLimit = 12;

struct B256 {
  std::array<std::uint64_t, 4> w{};

  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(int i) const {
    return (w[i >> 6] >> (i & 63)) & 1;
  }
  B256& operator|=(const B256& o) {
    for (int k = 0; k < 4; ++k) w[k] |= o.w[k];
    return *this;
  }
  B256 operator&(const B256& o) const {
    B256 r;
    for (int k = 0; k < 4; ++k) r.w[k] = w[k] & o.w[k];
    return r;
  }
  bool any() const { return w[0] | w[1] | w[2] | w[3]; }
  bool operator==(const B256&) const = default;

  template <class F>
  void for_each(F f) const {
    for (int k = 0; k < 4; ++k) {
      std::uint64_t m = w[k];
      while (m) {
        f((k << 6) + std::countr_zero(m));
        m &= m - 1;
      }
    }
  }
};

// The shared precomputation for one (locale, config, A) coverage question.
struct Engine {
  const OrderedLocale& L;
  CoverageConfig cfg;
  Mask A;
  std::vector<Mask> steps;                 // canonical DP universe
  std::unordered_map<Mask, int> index;
  std::vector<B256> pred;     // pred[i] = {j : steps[j] <| steps[i]}
  std::vector<B256> predA;    // predecessors reachable through an A-step
  B256 AIn;                   // {i : steps[i] <= A}
  B256 hasAbehind;            // {i : some A-step is <| steps[i]}
  std::vector<int> endpointCandidates;  // indices usable as refinement W
  mutable std::unordered_map<Mask, Mask> downCache;
  mutable std::unordered_map<Mask, B256> subCache;
  mutable long long budget;

  Engine(const OrderedLocale& L_, CoverageConfig cfg_, Mask a)
      : L(L_), cfg(std::move(cfg_)), A(a), budget(cfg.budget) {
    std::vector<Mask> uni = cfg.step_universe;
    if (uni.empty()) {
      for (Mask u : L.space().opens())
        if (u != 0) uni.push_back(u);
    }
    for (Mask w : cfg.endpoint_universe)
      if (w != 0) uni.push_back(w);
    std::sort(uni.begin(), uni.end(), canonical_less);
    uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
    if (static_cast<int>(uni.size()) > kMaxUniverse)
      throw CapacityError("coverage step universe above " +
                          std::to_string(kMaxUniverse) + " opens");
    steps = std::move(uni);
    int K = static_cast<int>(steps.size());
    for (int i = 0; i < K; ++i) index[steps[i]] = i;
    pred.resize(K);
    for (int i = 0; i < K; ++i)
      for (int j = 0; j < K; ++j)
        if (L.leq(steps[j], steps[i])) pred[i].set(j);
    for (int i = 0; i < K; ++i)
      if (subset(steps[i], A)) AIn.set(i);
    predA.resize(K);
    for (int i = 0; i < K; ++i) {
      (pred[i] & AIn).for_each([&](int j) { predA[i] |= pred[j]; });
      if ((pred[i] & AIn).any()) hasAbehind.set(i);
    }
    if (!cfg.endpoint_universe.empty()) {
      for (Mask w : cfg.endpoint_universe) endpointCandidates.push_back(index.at(w));
      std::sort(endpointCandidates.begin(), endpointCandidates.end());
      endpointCandidates.erase(
          std::unique(endpointCandidates.begin(), endpointCandidates.end()),
          endpointCandidates.end());
    }
  }

  Mask cone_down(Mask m) const {
    auto it = downCache.find(m);
    if (it != downCache.end()) return it->second;
    Mask d = L.cone_down(m);
    downCache.emplace(m, d);
    return d;
  }

  const B256& below(Mask m) const {
    auto it = subCache.find(m);
    if (it != subCache.end()) return it->second;
    B256 b;
    for (std::size_t i = 0; i < steps.size(); ++i)
      if (subset(steps[i], m)) b.set(static_cast<int>(i));
    return subCache.emplace(m, b).first->second;
  }

  // Candidate refinement endpoints below e (index of e included).
  std::vector<int> candidates_for(int e) const {
    std::vector<int> out;
    if (endpointCandidates.empty()) {
      below(steps[e]).for_each([&](int i) { out.push_back(i); });
    } else {
      for (int i : endpointCandidates)
        if (subset(steps[i], steps[e])) out.push_back(i);
      if (!std::binary_search(out.begin(), out.end(), e)) {
        out.push_back(e);
        std::sort(out.begin(), out.end());
      }
    }
    return out;
  }

  // One refinement-DP level step: from the state at the previous (later)
  // level to the state for a new earlier level whose restriction value is r.
  void level_step(const B256& q0, const B256& q1, Mask r, B256& n0,
                  B256& n1) const {
    n0 = B256{};
    n1 = B256{};
    const B256& sub = below(r);
    q0.for_each([&](int v) {
      if (sub.test(v)) {
        if (AIn.test(v))
          n1.set(v);
        else
          n0.set(v);
      }
      B256 reach = pred[v] & sub;
      n1 |= reach & AIn;
      reach.for_each([&](int j) {
        if (!AIn.test(j)) n0.set(j);
      });
      n1 |= predA[v] & sub;
    });
    q1.for_each([&](int v) {
      if (sub.test(v)) n1.set(v);
      n1 |= pred[v] & sub;
      n1 |= predA[v] & sub;
    });
  }

  bool qualifies(const B256& q0, const B256& q1) const {
    return q1.any() || (q0 & hasAbehind).any();
  }
};

struct PerW {
  Mask r = 0;
  B256 q0, q1;
  bool operator==(const PerW&) const = default;
};

struct Node {
  int front = -1;  // universe index of the earliest step of the suffix
  int rootidx = -1;
  std::vector<PerW> perw;
  int parent = -1;
  int depth = 1;
  bool operator==(const Node& o) const {
    return front == o.front && rootidx == o.rootidx && perw == o.perw;
  }
};

std::size_t hash_node(const Node& n) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint64_t>(n.front));
  mix(static_cast<std::uint64_t>(n.rootidx));
  for (const PerW& p : n.perw) {
    mix(p.r);
    for (auto v : p.q0.w) mix(v);
    for (auto v : p.q1.w) mix(v);
  }
  return static_cast<std::size_t>(h);
}

// Reconstruct the representative target path of a node (time-forward order).
Path node_path(const std::vector<Node>& nodes, int id,
               const std::vector<Mask>& steps) {
  std::vector<Mask> seq;
  for (int cur = id; cur >= 0; cur = nodes[cur].parent)
    seq.push_back(steps[nodes[cur].front]);
  return Path{std::move(seq)};
}

}  // namespace

std::vector<Path> enumerate_paths(const OrderedLocale& L,
                                  const CoverageConfig& cfg, Mask ends_in,
                                  bool* truncated) {
  if (truncated) *truncated = false;
  std::vector<Path> out;
  if (ends_in == 0) return out;
  Engine eng(L, cfg, 0);
  int maxlen = cfg.target_len(eng.steps.size());
  long long budget = cfg.budget;
  // Backward extension from each admissible endpoint, shortest first.
  std::vector<std::vector<Mask>> frontier;
  for (Mask e : eng.steps)
    if (subset(e, ends_in)) frontier.push_back({e});
  for (auto& p : frontier) out.push_back(Path{p});
  for (int len = 2; len <= maxlen && !frontier.empty(); ++len) {
    std::vector<std::vector<Mask>> next;
    for (const auto& suffix : frontier) {
      int fi = eng.index.at(suffix.front());
      std::vector<Mask> exts;
      eng.pred[fi].for_each([&](int j) { exts.push_back(eng.steps[j]); });
      for (Mask s : exts) {
        if (budget-- < 0) {
          if (truncated) *truncated = true;
          return out;
        }
        std::vector<Mask> longer;
        longer.reserve(suffix.size() + 1);
        longer.push_back(s);
        longer.insert(longer.end(), suffix.begin(), suffix.end());
        next.push_back(std::move(longer));
      }
    }
    for (auto& p : next) out.push_back(Path{p});
    frontier = std::move(next);
  }
  return out;
}

std::optional<Path> canonical_interleave(const OrderedLocale& L, const Path& p,
                                         Mask a, int k) {
  if (k < 0 || k + 1 >= p.len())
    throw PathError("interleave index out of range", k);
  Mask wpp = a & L.cone_up(p.steps[k]) & L.cone_down(p.steps[k + 1]);
  if (wpp == 0) return std::nullopt;
  Path head{std::vector<Mask>(p.steps.begin(), p.steps.begin() + k + 1)};
  Path tail{std::vector<Mask>(p.steps.begin() + k + 1, p.steps.end())};
  Path head_r = restrict_past(L, head, p.steps[k] & L.cone_down(wpp));
  Path tail_r = restrict_future(L, tail, p.steps[k + 1] & L.cone_up(wpp));
  std::vector<Mask> seq = head_r.steps;
  seq.push_back(wpp);
  seq.insert(seq.end(), tail_r.steps.begin(), tail_r.steps.end());
  return make_path(L, std::move(seq));
}

namespace {

// Level DP along a fixed restricted path with backpointers, used to extract
// concrete refinement witnesses.
struct Extract {
  struct Back {
    int from = -1;       // source state index at the later level
    std::uint8_t fromFlag = 0;
    int via = -2;        // -2 unset, -1 stay/pred, >=0 intermediate A-step
    bool viaPred = false;
  };
  std::vector<std::array<std::vector<Back>, 2>> back;  // [level][flag][idx]
};

std::optional<RefinementMember> extract_refinement(const Engine& eng,
                                                   const Path& restricted,
                                                   int wIdx) {
  const int N = restricted.len();
  const int K = static_cast<int>(eng.steps.size());
  Extract ex;
  ex.back.resize(N);
  for (auto& lv : ex.back) {
    lv[0].assign(K, {});
    lv[1].assign(K, {});
  }
  // Level N-1 (the endpoint) holds state (W, W<=A).
  std::vector<std::array<B256, 2>> states(N);
  int wflag = eng.AIn.test(wIdx) ? 1 : 0;
  states[N - 1][wflag].set(wIdx);
  ex.back[N - 1][wflag][wIdx].from = wIdx;
  ex.back[N - 1][wflag][wIdx].via = -1;
  for (int n = N - 2; n >= 0; --n) {
    const B256& sub = eng.below(restricted.steps[n]);
    auto relate = [&](int v, std::uint8_t f) {
      auto add = [&](int j, std::uint8_t nf, int via, bool viaPred) {
        if (states[n][nf].test(j)) return;
        states[n][nf].set(j);
        auto& b = ex.back[n][nf][j];
        b.from = v;
        b.fromFlag = f;
        b.via = via;
        b.viaPred = viaPred;
      };
      if (sub.test(v)) add(v, f || eng.AIn.test(v) ? 1 : f, -1, false);
      (eng.pred[v] & sub).for_each([&](int j) {
        add(j, (f || eng.AIn.test(j)) ? 1 : 0, -1, true);
      });
      // Through an intermediate A-step.
      (eng.pred[v] & eng.AIn).for_each([&](int mid) {
        (eng.pred[mid] & sub).for_each([&](int j) { add(j, 1, mid, true); });
      });
    };
    for (std::uint8_t f : {std::uint8_t{1}, std::uint8_t{0}})
      states[n + 1][f].for_each([&](int v) { relate(v, f); });
  }
  // Pick a qualifying start state: prefer flag 1, lowest index.
  int v0 = -1;
  std::uint8_t f0 = 0;
  int prefixA = -1;
  for (int i = 0; i < K && v0 < 0; ++i)
    if (states[0][1].test(i)) {
      v0 = i;
      f0 = 1;
    }
  if (v0 < 0)
    for (int i = 0; i < K && v0 < 0; ++i)
      if (states[0][0].test(i) && eng.hasAbehind.test(i)) {
        v0 = i;
        f0 = 0;
        (eng.pred[i] & eng.AIn).for_each([&](int j) {
          if (prefixA < 0) prefixA = j;
        });
      }
  if (v0 < 0) return std::nullopt;

  RefinementMember member;
  member.endpoint = restricted.end();
  std::vector<Mask> q;
  std::vector<int> hit(N, -1);
  int inhabit = -1;
  if (prefixA >= 0) {
    q.push_back(eng.steps[prefixA]);
    inhabit = 0;
  }
  int v = v0;
  std::uint8_t f = f0;
  for (int n = 0; n < N; ++n) {
    if (n == 0) {
      q.push_back(eng.steps[v]);
      if (inhabit < 0 && eng.AIn.test(v))
        inhabit = static_cast<int>(q.size()) - 1;
    }
    hit[n] = static_cast<int>(q.size()) - 1;
    if (n == N - 1) break;
    const Extract::Back& b = ex.back[n][f][v];
    if (b.via >= 0) {
      q.push_back(eng.steps[b.via]);
      if (inhabit < 0) inhabit = static_cast<int>(q.size()) - 1;
    }
    if (b.viaPred) {
      q.push_back(eng.steps[b.from]);
      if (inhabit < 0 && eng.AIn.test(b.from))
        inhabit = static_cast<int>(q.size()) - 1;
    }
    v = b.from;
    f = b.fromFlag;
  }
  member.witness = make_path(eng.L, std::move(q));
  member.against_restriction.assignment = std::move(hit);
  member.inhabit_index = inhabit;
  return member;
}

}  // namespace

std::optional<LocalRefinementFamily> find_local_past_refinement(
    const OrderedLocale& L, const Path& p, Mask a, const CoverageConfig& cfg,
    bool* inconclusive) {
  if (inconclusive) *inconclusive = false;
  Engine eng(L, cfg, a);
  auto endIt = eng.index.find(p.end());
  std::vector<int> candidates;
  if (endIt != eng.index.end()) {
    candidates = eng.candidates_for(endIt->second);
  } else {
    // Endpoint outside the universe: candidates below it, plus nothing else.
    eng.below(p.end()).for_each([&](int i) { candidates.push_back(i); });
  }
  LocalRefinementFamily family;
  family.target = p;
  Mask join = 0;
  for (int w : candidates) {
    Path restricted;
    try {
      restricted = restrict_past(L, p, eng.steps[w]);
    } catch (const PathError&) {
      continue;  // restriction collapsed; W cannot qualify
    }
    if (eng.budget < 0) {
      if (inconclusive) *inconclusive = true;
      return std::nullopt;
    }
    eng.budget -= static_cast<long long>(restricted.len()) *
                  static_cast<long long>(eng.steps.size());
    auto member = extract_refinement(eng, restricted, w);
    if (member) {
      int limit = cfg.refinement_len(cfg.target_len(eng.steps.size()),
                                     eng.steps.size());
      if (member->witness.len() > limit) {
        // A refinement exists but not within the configured length bound.
        if (inconclusive) *inconclusive = true;
        continue;
      }
      join |= eng.steps[w];
      family.members.push_back(std::move(*member));
    }
  }
  if (join == p.end()) return family;
  return std::nullopt;
}

namespace {

struct NodeKey {
  const std::vector<Node>* nodes;
  std::size_t operator()(int id) const { return hash_node((*nodes)[id]); }
};
struct NodeEq {
  const std::vector<Node>* nodes;
  bool operator()(int a, int b) const { return (*nodes)[a] == (*nodes)[b]; }
};

CoverageVerdict cov_impl(const OrderedLocale& L, Mask a, Mask u,
                         const CoverageConfig& cfg, bool want_certificates) {
  CoverageVerdict verdict;
  verdict.config = cfg;
  std::unique_ptr<Engine> engp;
  try {
    engp = std::make_unique<Engine>(L, cfg, a);
  } catch (const CapacityError& e) {
    verdict.outcome = CoverageOutcome::Unknown;
    verdict.reason = e.what();
    return verdict;
  }
  Engine& eng = *engp;
  verdict.config.step_universe = eng.steps;
  const int maxlen = cfg.target_len(eng.steps.size());
  verdict.max_target_path_len = maxlen;
  verdict.max_refinement_len = cfg.refinement_len(maxlen, eng.steps.size());

  if (!subset(a, L.cone_down(u))) {
    verdict.outcome = CoverageOutcome::NotCovered;
    verdict.reason = "the candidate region is not below the past cone of the "
                     "target";
    return verdict;
  }

  std::vector<Node> nodes;
  std::unordered_set<int, NodeKey, NodeEq> seen(16, NodeKey{&nodes},
                                                NodeEq{&nodes});
  std::deque<int> queue;
  std::vector<int> bad;  // node ids found bad at the current depth
  bool truncated = false;

  // For each node we must remember the W mask per slot; candidates are fixed
  // per root endpoint, so store them per root and thread the root through.
  struct Root {
    int endpoint;
    std::vector<int> wlist;
  };
  std::vector<Root> roots;
  std::vector<int> node_root;  // node id -> root index

  auto node_good = [&](const Node& n, const Root& root) {
    Mask join = 0;
    for (std::size_t i = 0; i < n.perw.size(); ++i)
      if (eng.qualifies(n.perw[i].q0, n.perw[i].q1))
        join |= eng.steps[root.wlist[i]];
    return join == eng.steps[root.endpoint];
  };

  for (std::size_t e = 0; e < eng.steps.size(); ++e) {
    if (!subset(eng.steps[e], u)) continue;
    Root root;
    root.endpoint = static_cast<int>(e);
    root.wlist = eng.candidates_for(static_cast<int>(e));
    Node n;
    n.front = static_cast<int>(e);
    n.rootidx = static_cast<int>(roots.size()) - 1;
    n.depth = 1;
    for (int w : root.wlist) {
      PerW pw;
      pw.r = eng.steps[w];
      if (eng.AIn.test(w))
        pw.q1.set(w);
      else
        pw.q0.set(w);
      n.perw.push_back(std::move(pw));
    }
    roots.push_back(std::move(root));
    int id = static_cast<int>(nodes.size());
    nodes.push_back(std::move(n));
    node_root.push_back(static_cast<int>(roots.size()) - 1);
    if (!seen.insert(id).second) {
      nodes.pop_back();
      node_root.pop_back();
      roots.pop_back();
      continue;
    }
    queue.push_back(id);
    if (!node_good(nodes[id], roots[node_root[id]])) bad.push_back(id);
  }

  int depth = 1;
  while (!queue.empty() && bad.empty() && depth < maxlen && !truncated) {
    // Expand one full depth layer so the reported witness is the canonical
    // minimum over shortest bad paths.
    std::deque<int> next;
    while (!queue.empty()) {
      int id = queue.front();
      queue.pop_front();
      const Root& root = roots[node_root[id]];
      std::vector<int> exts;
      eng.pred[nodes[id].front].for_each([&](int j) { exts.push_back(j); });
      for (int pstep : exts) {
        eng.budget -= static_cast<long long>(nodes[id].perw.size()) + 1;
        if (eng.budget < 0) {
          truncated = true;
          break;
        }
        Node child;
        child.front = pstep;
        child.rootidx = node_root[id];
        child.parent = id;
        child.depth = depth + 1;
        child.perw.reserve(nodes[id].perw.size());
        for (const PerW& pw : nodes[id].perw) {
          PerW npw;
          npw.r = eng.steps[pstep] & eng.cone_down(pw.r);
          if (npw.r != 0) eng.level_step(pw.q0, pw.q1, npw.r, npw.q0, npw.q1);
          child.perw.push_back(std::move(npw));
        }
        int cid = static_cast<int>(nodes.size());
        nodes.push_back(std::move(child));
        node_root.push_back(node_root[id]);
        if (!seen.insert(cid).second) {
          nodes.pop_back();
          node_root.pop_back();
          continue;
        }
        next.push_back(cid);
        if (!node_good(nodes[cid], root)) bad.push_back(cid);
      }
      if (truncated) break;
    }
    queue = std::move(next);
    ++depth;
  }

  if (!bad.empty()) {
    // Canonical minimum among the shortest bad representative paths.
    Path best = node_path(nodes, bad[0], eng.steps);
    for (std::size_t i = 1; i < bad.size(); ++i) {
      Path cand = node_path(nodes, bad[i], eng.steps);
      if (std::lexicographical_compare(cand.steps.begin(), cand.steps.end(),
                                       best.steps.begin(), best.steps.end(),
                                       canonical_less))
        best = std::move(cand);
    }
    verdict.outcome = CoverageOutcome::NotCovered;
    verdict.witness = std::move(best);
    verdict.reason = "a path landing in the target admits no local past "
                     "refinement inhabiting the candidate region";
    return verdict;
  }
  if (truncated) {
    verdict.outcome = CoverageOutcome::Unknown;
    verdict.reason = "enumeration budget exceeded";
    return verdict;
  }
  verdict.outcome = CoverageOutcome::Covered;
  verdict.covered_up_to = maxlen;
  if (want_certificates) {
    int emitted = 0;
    for (std::size_t id = 0; id < nodes.size() && emitted < kCertificateLimit;
         ++id) {
      Path rep = node_path(nodes, static_cast<int>(id), eng.steps);
      bool inconclusive = false;
      auto fam = find_local_past_refinement(L, rep, a, cfg, &inconclusive);
      if (!fam) {
        verdict.outcome = CoverageOutcome::Unknown;
        verdict.reason =
            inconclusive
                ? "refinement bounds too small to certify a representative "
                  "path"
                : "internal: certificate construction failed for a "
                  "representative path";
        return verdict;
      }
      verdict.certificates.push_back(std::move(*fam));
      ++emitted;
    }
  }
  return verdict;
}

void reverse_verdict_paths(CoverageVerdict& v) {
  auto rev_path = [](Path& p) {
    std::reverse(p.steps.begin(), p.steps.end());
  };
  if (v.witness) rev_path(*v.witness);
  for (auto& fam : v.certificates) {
    int plen = fam.target.len();
    rev_path(fam.target);
    for (auto& m : fam.members) {
      int qlen = m.witness.len();
      rev_path(m.witness);
      auto& as = m.against_restriction.assignment;
      std::reverse(as.begin(), as.end());
      for (int& x : as) x = qlen - 1 - x;
      if (m.inhabit_index >= 0) m.inhabit_index = qlen - 1 - m.inhabit_index;
    }
    (void)plen;
  }
}

}  // namespace

CoverageVerdict cov_minus(const OrderedLocale& L, Mask a, Mask u,
                          const CoverageConfig& cfg) {
  return cov_impl(L, a, u, cfg, true);
}

CoverageVerdict cov_plus(const OrderedLocale& L, Mask b, Mask u,
                         const CoverageConfig& cfg) {
  CoverageVerdict v = cov_impl(L.reversed(), b, u, cfg, true);
  reverse_verdict_paths(v);
  return v;
}

CoverageOutcome cov_outcome(const OrderedLocale& L, Mask a, Mask u,
                            const CoverageConfig& cfg, bool below) {
  if (below) return cov_impl(L, a, u, cfg, false).outcome;
  return cov_impl(L.reversed(), a, u, cfg, false).outcome;
}

CovPropertyReport verify_cov_properties(const OrderedLocale& L,
                                        const CoverageConfig& cfg) {
  CovPropertyReport rep;
  const auto& O = L.space().opens();
  const int K = static_cast<int>(O.size());
  OrderedLocale R = L.reversed();

  // Memoized bounded decisions, both directions.
  std::vector<std::vector<CoverageOutcome>> below(
      K, std::vector<CoverageOutcome>(K, CoverageOutcome::Unknown));
  std::vector<std::vector<CoverageOutcome>> above = below;
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      below[i][j] = cov_impl(L, O[i], O[j], cfg, false).outcome;
      above[i][j] = cov_impl(R, O[i], O[j], cfg, false).outcome;
      if (below[i][j] == CoverageOutcome::Unknown) ++rep.unknowns;
      if (above[i][j] == CoverageOutcome::Unknown) ++rep.unknowns;
    }
  auto idx = [&](Mask m) {
    return static_cast<int>(
        std::lower_bound(O.begin(), O.end(), m, canonical_less) - O.begin());
  };
  auto name = [&](Mask m) { return L.space().format_mask(m); };
  auto is = [&](const std::vector<std::vector<CoverageOutcome>>& t, Mask a,
                Mask u) { return t[idx(a)][idx(u)]; };
  auto expect = [&](bool cond, const std::string& what) {
    ++rep.instances;
    if (!cond) rep.violations.push_back(what);
  };

  for (int i = 0; i < K; ++i) {
    // (a) reflexivity.
    expect(below[i][i] == CoverageOutcome::Covered,
           "(a) " + name(O[i]) + " does not cover itself from below");
    expect(above[i][i] == CoverageOutcome::Covered,
           "(a) " + name(O[i]) + " does not cover itself from above");
    // (b) cones cover.
    expect(is(below, L.cone_down(O[i]), O[i]) == CoverageOutcome::Covered,
           "(b) past cone of " + name(O[i]) + " fails to cover it");
    expect(is(above, L.cone_up(O[i]), O[i]) == CoverageOutcome::Covered,
           "(b) future cone of " + name(O[i]) + " fails to cover it");
    // (f) only the empty open covers the empty open.
    expect((below[i][idx(0)] == CoverageOutcome::Covered) == (O[i] == 0),
           "(f) coverage of the empty open from below is wrong at " +
               name(O[i]));
    expect((above[i][idx(0)] == CoverageOutcome::Covered) == (O[i] == 0),
           "(f) coverage of the empty open from above is wrong at " +
               name(O[i]));
  }
  // (e) membership implies order.
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      if (below[i][j] == CoverageOutcome::Covered)
        expect(L.leq(O[i], O[j]),
               "(e) " + name(O[i]) + " covers " + name(O[j]) +
                   " from below but is not before it");
      if (above[i][j] == CoverageOutcome::Covered)
        expect(L.leq(O[j], O[i]),
               "(e) " + name(O[i]) + " covers " + name(O[j]) +
                   " from above but is not after it");
    }
  // (c) transitivity.
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      if (below[i][j] != CoverageOutcome::Covered) continue;
      for (int k = 0; k < K; ++k)
        if (below[j][k] == CoverageOutcome::Covered)
          expect(below[i][k] == CoverageOutcome::Covered,
                 "(c) transitivity fails below at " + name(O[i]) + "," +
                     name(O[j]) + "," + name(O[k]));
    }
  // (d-) and (d+).
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      if (below[i][j] == CoverageOutcome::Covered)
        for (int w = 0; w < K; ++w) {
          if (!subset(O[w], O[j])) continue;
          expect(is(below, O[i] & L.cone_down(O[w]), O[w]) ==
                     CoverageOutcome::Covered,
                 "(d-) fails at A=" + name(O[i]) + " U=" + name(O[j]) +
                     " W=" + name(O[w]));
        }
      if (above[i][j] == CoverageOutcome::Covered)
        for (int w = 0; w < K; ++w) {
          if (!subset(O[w], O[j])) continue;
          expect(is(above, O[i] & L.cone_up(O[w]), O[w]) ==
                     CoverageOutcome::Covered,
                 "(d+) fails at B=" + name(O[i]) + " U=" + name(O[j]) +
                     " W=" + name(O[w]));
        }
    }
  // Binary (Cov-V), strong form, both directions.
  for (auto* table : {&below, &above}) {
    for (int u1 = 0; u1 < K; ++u1)
      for (int u2 = 0; u2 < K; ++u2) {
        int uj = idx(O[u1] | O[u2]);
        std::vector<bool> joinset(K, false);
        for (int a1 = 0; a1 < K; ++a1) {
          if ((*table)[a1][u1] != CoverageOutcome::Covered) continue;
          for (int a2 = 0; a2 < K; ++a2)
            if ((*table)[a2][u2] == CoverageOutcome::Covered)
              joinset[idx(O[a1] | O[a2])] = true;
        }
        for (int a = 0; a < K; ++a)
          expect(((*table)[a][uj] == CoverageOutcome::Covered) == joinset[a],
                 std::string("(Cov-V) binary instance fails ") +
                     (table == &below ? "below" : "above") + " at U1=" +
                     name(O[u1]) + " U2=" + name(O[u2]) + " A=" + name(O[a]));
      }
  }
  return rep;
}

}  // namespace olab
