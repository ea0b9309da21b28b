// src/lattice-nbest.cc

// Copyright 2026  The augkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// N-best extraction and MBR decoding.
//
// The lattice is determinized over a product weight: a log-semiring cost that
// merges every path spelling the same words, and a tropical cost carrying the
// graph/acoustic split of the best such path. Every path of the result spells
// a distinct word sequence, so the k shortest paths of the result are the k
// best hypotheses.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <queue>
#include <unordered_map>

#include "augkit/common.h"
#include "augkit/lattice.h"

namespace augkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxDetStates = 2000000;

struct Weight {
  double log_cost = kInf;   // -ln of summed path probability
  double best_cost = kInf;  // cost of the best path
  double graph = 0.0;       // split of best_cost
  double acoustic = 0.0;

  static Weight One() { return {0.0, 0.0, 0.0, 0.0}; }
};

Weight Times(const Weight &x, const Weight &y) {
  return {x.log_cost + y.log_cost, x.best_cost + y.best_cost,
          x.graph + y.graph, x.acoustic + y.acoustic};
}

double LogPlus(double a, double b) {
  if (a > b) std::swap(a, b);
  if (b == kInf) return a;
  return a - std::log1p(std::exp(a - b));
}

void PlusInto(Weight *acc, const Weight &y) {
  acc->log_cost = LogPlus(acc->log_cost, y.log_cost);
  bool better = y.best_cost < acc->best_cost ||
                (y.best_cost == acc->best_cost &&
                 (y.graph < acc->graph ||
                  (y.graph == acc->graph && y.acoustic < acc->acoustic)));
  if (better) {
    acc->best_cost = y.best_cost;
    acc->graph = y.graph;
    acc->acoustic = y.acoustic;
  }
}

Weight Divide(const Weight &x, const Weight &by) {
  return {x.log_cost - by.log_cost, x.best_cost - by.best_cost,
          x.graph - by.graph, x.acoustic - by.acoustic};
}

// Lattice states renumbered densely in topological order.
struct DenseLattice {
  struct Arc {
    int dst;
    int label;  // -1 for epsilon
    Weight w;
  };
  std::vector<std::vector<Arc>> arcs;
  std::vector<double> finals;  // kInf when not final
  std::vector<std::string> labels;
  int start = 0;
};

DenseLattice Densify(const Lattice &lat, double acoustic_scale) {
  const std::vector<StateId> order = TopologicalOrder(lat);
  std::unordered_map<StateId, int> index;
  for (std::size_t i = 0; i < order.size(); ++i)
    index[order[i]] = static_cast<int>(i);

  DenseLattice d;
  d.arcs.resize(order.size());
  d.finals.assign(order.size(), kInf);
  d.start = index.at(lat.start);
  std::map<std::string, int> label_ids;
  for (const LatticeArc &a : lat.arcs)
    if (a.label != kEpsilon) label_ids.emplace(a.label, 0);
  for (auto &[word, id] : label_ids) {
    id = static_cast<int>(d.labels.size());
    d.labels.push_back(word);
  }
  for (const LatticeArc &a : lat.arcs) {
    double c = a.graph_cost + acoustic_scale * a.acoustic_cost;
    int label = a.label == kEpsilon ? -1 : label_ids.at(a.label);
    d.arcs[index.at(a.src)].push_back(
        {index.at(a.dst), label, {c, c, a.graph_cost, a.acoustic_cost}});
  }
  for (const auto &[s, c] : lat.finals) d.finals[index.at(s)] = c;
  return d;
}

// Weighted subset of lattice states, sorted by state.
using Subset = std::vector<std::pair<int, Weight>>;

// Follows epsilon arcs. States are topologically numbered, so visiting them
// in increasing order sees every contribution before expanding a state.
Subset EpsilonClosure(const DenseLattice &d, std::map<int, Weight> pending) {
  Subset out;
  while (!pending.empty()) {
    auto [s, w] = *pending.begin();
    pending.erase(pending.begin());
    for (const DenseLattice::Arc &a : d.arcs[s]) {
      if (a.label != -1) continue;
      auto [it, inserted] = pending.try_emplace(a.dst);
      PlusInto(&it->second, Times(w, a.w));
    }
    out.emplace_back(s, w);
  }
  return out;
}

std::vector<std::int64_t> SubsetKey(const Subset &s) {
  std::vector<std::int64_t> key;
  key.reserve(s.size() * 5);
  for (const auto &[state, w] : s) {
    key.push_back(state);
    key.push_back(std::llround(w.log_cost * 1e9));
    key.push_back(std::llround(w.best_cost * 1e9));
    key.push_back(std::llround(w.graph * 1e9));
    key.push_back(std::llround(w.acoustic * 1e9));
  }
  return key;
}

struct DetArc {
  int label;
  int dst;
  Weight w;
};

struct DetLattice {
  std::vector<std::vector<DetArc>> arcs;
  std::vector<Weight> finals;  // log_cost kInf when not final
};

DetLattice Determinize(const DenseLattice &d) {
  DetLattice det;
  std::map<std::vector<std::int64_t>, int> ids;
  std::vector<Subset> subsets;
  auto add = [&](Subset s) {
    auto [it, inserted] =
        ids.emplace(SubsetKey(s), static_cast<int>(subsets.size()));
    if (inserted) {
      if (subsets.size() >= kMaxDetStates)
        AUGKIT_FAIL(kPrecondition)
            << "lattice too large to determinize (over " << kMaxDetStates
            << " states)";
      subsets.push_back(std::move(s));
    }
    return it->second;
  };

  add(EpsilonClosure(d, {{d.start, Weight::One()}}));
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::map<int, std::map<int, Weight>> by_label;
    Weight final_w;
    for (const auto &[s, w] : subsets[i]) {
      if (d.finals[s] != kInf) {
        double f = d.finals[s];
        PlusInto(&final_w, Times(w, {f, f, f, 0.0}));
      }
      for (const DenseLattice::Arc &a : d.arcs[s]) {
        if (a.label == -1) continue;
        auto [it, inserted] = by_label[a.label].try_emplace(a.dst);
        PlusInto(&it->second, Times(w, a.w));
      }
    }
    std::vector<DetArc> arcs;
    for (auto &[label, targets] : by_label) {
      Subset closed = EpsilonClosure(d, std::move(targets));
      Weight common;
      for (const auto &[s, w] : closed) PlusInto(&common, w);
      for (auto &[s, w] : closed) w = Divide(w, common);
      arcs.push_back({label, add(std::move(closed)), common});
    }
    det.arcs.push_back(std::move(arcs));
    det.finals.push_back(final_w);
  }
  return det;
}

// Exact cost-to-go of each determinized state.
std::vector<double> CostToGo(const DetLattice &det) {
  const std::size_t n = det.arcs.size();
  std::vector<int> indegree(n, 0);
  for (const auto &arcs : det.arcs)
    for (const DetArc &a : arcs) ++indegree[a.dst];
  std::vector<int> order, ready;
  for (std::size_t s = 0; s < n; ++s)
    if (indegree[s] == 0) ready.push_back(static_cast<int>(s));
  while (!ready.empty()) {
    int s = ready.back();
    ready.pop_back();
    order.push_back(s);
    for (const DetArc &a : det.arcs[s])
      if (--indegree[a.dst] == 0) ready.push_back(a.dst);
  }
  std::vector<double> h(n, kInf);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    double best = det.finals[*it].log_cost;
    for (const DetArc &a : det.arcs[*it])
      best = std::min(best, a.w.log_cost + h[a.dst]);
    h[*it] = best;
  }
  return h;
}

struct PartialPath {
  int state;  // -1 once the final weight has been taken
  Weight w;
  int label;
  std::shared_ptr<const PartialPath> prev;
};

}  // namespace

std::vector<Hypothesis> NBest(const Lattice &lat, std::size_t n,
                              double acoustic_scale) {
  if (n < 1) AUGKIT_FAIL(kPrecondition) << "n-best size must be >= 1";
  if (!(acoustic_scale > 0.0) || !std::isfinite(acoustic_scale))
    AUGKIT_FAIL(kPrecondition) << "acoustic scale must be positive";
  const DenseLattice dense = Densify(lat, acoustic_scale);
  const DetLattice det = Determinize(dense);
  const std::vector<double> h = CostToGo(det);
  std::vector<Hypothesis> out;
  if (h[0] == kInf) return out;

  using Entry = std::pair<double, std::shared_ptr<const PartialPath>>;
  auto later = [](const Entry &x, const Entry &y) { return x.first > y.first; };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> queue(later);
  queue.emplace(h[0], std::make_shared<PartialPath>(
                          PartialPath{0, Weight::One(), -1, nullptr}));
  double cutoff = kInf;
  while (!queue.empty()) {
    auto [priority, path] = queue.top();
    if (priority > cutoff) break;
    queue.pop();
    if (path->state == -1) {
      Hypothesis hyp;
      for (const PartialPath *p = path.get(); p != nullptr; p = p->prev.get())
        if (p->label >= 0) hyp.words.push_back(dense.labels[p->label]);
      std::reverse(hyp.words.begin(), hyp.words.end());
      hyp.combined_cost = path->w.log_cost;
      hyp.total_graph_cost = path->w.graph;
      hyp.total_acoustic_cost = path->w.acoustic;
      out.push_back(std::move(hyp));
      // Keep collecting paths tied with the n-th so the word-order tie rule
      // decides which of them survive.
      if (out.size() == n) cutoff = priority + kMbrTieTolerance;
      continue;
    }
    const int s = path->state;
    const Weight &f = det.finals[s];
    if (f.log_cost != kInf)
      queue.emplace(path->w.log_cost + f.log_cost,
                    std::make_shared<PartialPath>(
                        PartialPath{-1, Times(path->w, f), -1, path}));
    for (const DetArc &a : det.arcs[s]) {
      if (h[a.dst] == kInf) continue;
      Weight w = Times(path->w, a.w);
      queue.emplace(w.log_cost + h[a.dst],
                    std::make_shared<PartialPath>(
                        PartialPath{a.dst, w, a.label, path}));
    }
  }
  std::sort(out.begin(), out.end(), [](const Hypothesis &x, const Hypothesis &y) {
    if (x.combined_cost != y.combined_cost)
      return x.combined_cost < y.combined_cost;
    return x.words < y.words;
  });
  if (out.size() > n) out.resize(n);
  return out;
}

std::size_t SelectMinRisk(const std::vector<Hypothesis> &candidates,
                          const std::vector<double> &risks) {
  if (candidates.empty() || candidates.size() != risks.size())
    AUGKIT_FAIL(kPrecondition) << "bad MBR candidate list";
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double dr = risks[i] - risks[best];
    if (dr < -kMbrTieTolerance) {
      best = i;
      continue;
    }
    if (dr > kMbrTieTolerance) continue;
    const double dc =
        candidates[i].combined_cost - candidates[best].combined_cost;
    if (dc < -kMbrTieTolerance ||
        (dc <= kMbrTieTolerance && candidates[i].words < candidates[best].words))
      best = i;
  }
  return best;
}

MbrResult MbrDecode(const Lattice &lat, std::size_t n, double acoustic_scale) {
  MbrResult r;
  r.candidates = NBest(lat, n, acoustic_scale);
  if (r.candidates.empty())
    AUGKIT_FAIL(kNoPath) << "no path in lattice " << lat.id;
  const std::vector<double> post = HypothesisPosteriors(r.candidates);
  const std::size_t k = r.candidates.size();
  r.risks.assign(k, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j)
        r.risks[i] += post[j] * static_cast<double>(WordEditDistance(
                                    r.candidates[i].words,
                                    r.candidates[j].words));
  const std::size_t best = SelectMinRisk(r.candidates, r.risks);
  r.best = r.candidates[best];
  r.expected_risk = r.risks[best];
  r.posterior = post[best];
  return r;
}

}  // namespace augkit
