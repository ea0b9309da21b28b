// src/lattice.cc

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

#include "augkit/lattice.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include "augkit/common.h"

namespace augkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ln(e^a + e^b)
double LogAdd(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -kInf) return a;
  return a + std::log1p(std::exp(b - a));
}

struct PendingArc {
  LatticeArc arc;
  std::size_t line;
};

StateId ParseState(const std::string &token, std::size_t line) {
  std::int64_t v;
  if (!ParseInt64(token, &v) || v < 0 ||
      v > std::numeric_limits<StateId>::max())
    AUGKIT_FAIL(kParse) << "lattice line " << line << ": bad state id '"
                        << token << "'";
  return static_cast<StateId>(v);
}

double ParseCost(const std::string &token, std::size_t line) {
  double v;
  if (!ParseDouble(token, &v) || !std::isfinite(v))
    AUGKIT_FAIL(kParse) << "lattice line " << line << ": bad cost '" << token
                        << "'";
  return v;
}

}  // namespace

StateId Lattice::NumStates() const {
  StateId n = start + 1;
  for (const LatticeArc &a : arcs) n = std::max({n, a.src + 1, a.dst + 1});
  for (const auto &[s, c] : finals) n = std::max(n, s + 1);
  return n;
}

std::string JoinWords(const std::vector<std::string> &words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += ' ';
    out += words[i];
  }
  return out;
}

std::vector<StateId> TopologicalOrder(const Lattice &lat) {
  std::set<StateId> states{lat.start};
  std::unordered_map<StateId, std::vector<StateId>> succ;
  std::unordered_map<StateId, int> indegree;
  for (const LatticeArc &a : lat.arcs) {
    states.insert(a.src);
    states.insert(a.dst);
    succ[a.src].push_back(a.dst);
    ++indegree[a.dst];
  }
  for (const auto &[s, c] : lat.finals) states.insert(s);

  std::priority_queue<StateId, std::vector<StateId>, std::greater<>> ready;
  for (StateId s : states)
    if (indegree[s] == 0) ready.push(s);
  std::vector<StateId> order;
  order.reserve(states.size());
  while (!ready.empty()) {
    StateId s = ready.top();
    ready.pop();
    order.push_back(s);
    for (StateId d : succ[s])
      if (--indegree[d] == 0) ready.push(d);
  }
  if (order.size() != states.size())
    AUGKIT_FAIL(kCyclicLattice) << "cyclic lattice: " << lat.id;
  return order;
}

std::size_t Connect(Lattice *lat) {
  std::unordered_map<StateId, std::vector<StateId>> succ, pred;
  std::set<StateId> states{lat->start};
  for (const LatticeArc &a : lat->arcs) {
    succ[a.src].push_back(a.dst);
    pred[a.dst].push_back(a.src);
    states.insert(a.src);
    states.insert(a.dst);
  }
  for (const auto &[s, c] : lat->finals) states.insert(s);

  auto flood = [](std::vector<StateId> frontier,
                  std::unordered_map<StateId, std::vector<StateId>> &edges) {
    std::set<StateId> seen(frontier.begin(), frontier.end());
    while (!frontier.empty()) {
      StateId s = frontier.back();
      frontier.pop_back();
      for (StateId t : edges[s])
        if (seen.insert(t).second) frontier.push_back(t);
    }
    return seen;
  };
  std::set<StateId> reach = flood({lat->start}, succ);
  std::vector<StateId> final_states;
  for (const auto &[s, c] : lat->finals) final_states.push_back(s);
  std::set<StateId> coreach = flood(final_states, pred);

  auto keep = [&](StateId s) { return reach.count(s) && coreach.count(s); };
  std::size_t removed = 0;
  for (StateId s : states)
    if (!keep(s) && s != lat->start) ++removed;
  if (removed == 0 && keep(lat->start)) return 0;

  std::erase_if(lat->arcs, [&](const LatticeArc &a) {
    return !keep(a.src) || !keep(a.dst);
  });
  std::erase_if(lat->finals, [&](const auto &kv) { return !keep(kv.first); });
  return removed;
}

std::vector<Lattice> ParseLattices(std::string_view text) {
  std::vector<Lattice> out;
  std::optional<Lattice> cur;
  bool have_start = false;
  std::vector<PendingArc> pending;
  std::set<StateId> defined;
  std::size_t line_no = 0, pos = 0, record_line = 0;

  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    std::vector<std::string> f = SplitFields(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (f.empty()) continue;
    const std::string &kw = f[0];

    if (!cur) {
      if (kw != "LATTICE" || f.size() != 2)
        AUGKIT_FAIL(kParse) << "lattice line " << line_no
                            << ": expected 'LATTICE <id>'";
      cur.emplace();
      cur->id = f[1];
      have_start = false;
      pending.clear();
      defined.clear();
      record_line = line_no;
      continue;
    }
    if (kw == "START") {
      if (f.size() != 2 || have_start)
        AUGKIT_FAIL(kParse) << "lattice line " << line_no
                            << ": expected a single 'START <state>'";
      cur->start = ParseState(f[1], line_no);
      defined.insert(cur->start);
      have_start = true;
    } else if (kw == "ARC") {
      if (f.size() != 6)
        AUGKIT_FAIL(kParse)
            << "lattice line " << line_no
            << ": expected 'ARC <src> <dst> <word> <graph> <acoustic>'";
      LatticeArc a{ParseState(f[1], line_no), ParseState(f[2], line_no), f[3],
                   ParseCost(f[4], line_no), ParseCost(f[5], line_no)};
      defined.insert(a.src);
      pending.push_back({std::move(a), line_no});
    } else if (kw == "FINAL") {
      if (f.size() != 3)
        AUGKIT_FAIL(kParse) << "lattice line " << line_no
                            << ": expected 'FINAL <state> <cost>'";
      StateId s = ParseState(f[1], line_no);
      if (!cur->finals.emplace(s, ParseCost(f[2], line_no)).second)
        AUGKIT_FAIL(kParse) << "lattice line " << line_no
                            << ": duplicate FINAL for state " << s;
      defined.insert(s);
    } else if (kw == "END") {
      if (f.size() != 1)
        AUGKIT_FAIL(kParse) << "lattice line " << line_no
                            << ": unexpected tokens after END";
      if (!have_start)
        AUGKIT_FAIL(kParse) << "lattice line " << line_no << ": lattice "
                            << cur->id << " has no START";
      for (PendingArc &p : pending) {
        if (!defined.count(p.arc.dst))
          AUGKIT_FAIL(kReference)
              << "reference error: lattice line " << p.line
              << ": arc into undefined state " << p.arc.dst;
        cur->arcs.push_back(std::move(p.arc));
      }
      TopologicalOrder(*cur);
      if (std::size_t removed = Connect(&*cur))
        AUGKIT_WARN << "lattice " << cur->id << ": pruned " << removed
                    << " unreachable or dead-end states";
      out.push_back(std::move(*cur));
      cur.reset();
    } else {
      AUGKIT_FAIL(kParse) << "lattice line " << line_no << ": unknown keyword '"
                          << kw << "'";
    }
  }
  if (cur)
    AUGKIT_FAIL(kParse) << "lattice line " << record_line << ": lattice "
                        << cur->id << " is missing END";
  return out;
}

std::vector<Lattice> ReadLatticeFile(const std::string &path) {
  std::string contents = ReadFileToString(path);
  try {
    return ParseLattices(contents);
  } catch (const Error &e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

std::string WriteLattices(const std::vector<Lattice> &lattices) {
  std::ostringstream out;
  for (const Lattice &lat : lattices) {
    out << "LATTICE " << lat.id << '\n' << "START " << lat.start << '\n';
    for (const LatticeArc &a : lat.arcs)
      out << "ARC " << a.src << ' ' << a.dst << ' ' << a.label << ' '
          << FormatShortest(a.graph_cost) << ' '
          << FormatShortest(a.acoustic_cost) << '\n';
    for (const auto &[s, c] : lat.finals)
      out << "FINAL " << s << ' ' << FormatShortest(c) << '\n';
    out << "END\n";
  }
  return out.str();
}

Lattice Union(const std::vector<Lattice> &lattices,
              const std::optional<std::vector<double>> &priors,
              const std::string &id) {
  if (lattices.empty())
    AUGKIT_FAIL(kPrecondition) << "union of an empty lattice list";
  const std::size_t k = lattices.size();
  std::vector<double> p(k, 1.0 / static_cast<double>(k));
  if (priors) {
    if (priors->size() != k)
      AUGKIT_FAIL(kPrecondition) << "got " << priors->size()
                                 << " priors for " << k << " lattices";
    double sum = 0.0;
    for (double v : *priors) {
      if (!(v > 0.0))
        AUGKIT_FAIL(kPrecondition) << "priors must be positive";
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      AUGKIT_FAIL(kPrecondition) << "priors sum to " << sum << ", not 1";
    p = *priors;
  }

  Lattice out;
  out.id = id.empty() ? lattices.front().id : id;
  out.start = 0;
  StateId next = 1;
  std::vector<LatticeArc> body;
  for (std::size_t i = 0; i < k; ++i) {
    const Lattice &lat = lattices[i];
    std::set<StateId> states{lat.start};
    for (const LatticeArc &a : lat.arcs) {
      states.insert(a.src);
      states.insert(a.dst);
    }
    for (const auto &[s, c] : lat.finals) states.insert(s);
    std::unordered_map<StateId, StateId> map;
    for (StateId s : states) map.emplace(s, next++);

    out.arcs.push_back({0, map.at(lat.start), std::string(kEpsilon),
                        -std::log(p[i]) + 0.0, 0.0});
    for (const LatticeArc &a : lat.arcs)
      body.push_back({map.at(a.src), map.at(a.dst), a.label, a.graph_cost,
                      a.acoustic_cost});
    for (const auto &[s, c] : lat.finals) out.finals.emplace(map.at(s), c);
  }
  out.arcs.insert(out.arcs.end(), std::make_move_iterator(body.begin()),
                  std::make_move_iterator(body.end()));
  return out;
}

std::vector<double> ArcPosteriors(const Lattice &lat, double acoustic_scale) {
  const std::vector<StateId> order = TopologicalOrder(lat);
  std::unordered_map<StateId, std::size_t> index;
  for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = i;
  std::vector<std::vector<std::size_t>> out_arcs(order.size());
  for (std::size_t i = 0; i < lat.arcs.size(); ++i)
    out_arcs[index.at(lat.arcs[i].src)].push_back(i);
  auto weight = [&](const LatticeArc &a) {
    return -(a.graph_cost + acoustic_scale * a.acoustic_cost);
  };

  std::vector<double> alpha(order.size(), -kInf), beta(order.size(), -kInf);
  alpha[index.at(lat.start)] = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (alpha[i] == -kInf) continue;
    for (std::size_t ai : out_arcs[i]) {
      const LatticeArc &a = lat.arcs[ai];
      double &d = alpha[index.at(a.dst)];
      d = LogAdd(d, alpha[i] + weight(a));
    }
  }
  for (std::size_t i = order.size(); i-- > 0;) {
    auto f = lat.finals.find(order[i]);
    double b = f == lat.finals.end() ? -kInf : -f->second;
    for (std::size_t ai : out_arcs[i]) {
      const LatticeArc &a = lat.arcs[ai];
      b = LogAdd(b, weight(a) + beta[index.at(a.dst)]);
    }
    beta[i] = b;
  }
  const double total = beta[index.at(lat.start)];
  if (total == -kInf) AUGKIT_FAIL(kNoPath) << "no path in lattice " << lat.id;

  std::vector<double> post(lat.arcs.size(), 0.0);
  for (std::size_t i = 0; i < lat.arcs.size(); ++i) {
    const LatticeArc &a = lat.arcs[i];
    double lp = alpha[index.at(a.src)] + weight(a) + beta[index.at(a.dst)] -
                total;
    post[i] = std::exp(lp);
  }
  return post;
}

std::vector<double> HypothesisPosteriors(const std::vector<Hypothesis> &hyps) {
  std::vector<double> post(hyps.size(), 0.0);
  if (hyps.empty()) return post;
  double best = kInf;
  for (const Hypothesis &h : hyps) best = std::min(best, h.combined_cost);
  double sum = 0.0;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    post[i] = std::exp(best - hyps[i].combined_cost);
    sum += post[i];
  }
  for (double &p : post) p /= sum;
  return post;
}

std::vector<Hypothesis> RescoreNBest(
    const std::vector<Hypothesis> &hyps,
    const std::map<WordSequence, double> &lm_scores, double lm_weight,
    double original_lm_weight) {
  std::vector<Hypothesis> out = hyps;
  for (Hypothesis &h : out) {
    auto it = lm_scores.find(h.words);
    if (it == lm_scores.end())
      AUGKIT_FAIL(kMissingScore) << "missing score: no LM score for hypothesis '"
                                 << JoinWords(h.words) << "'";
    const double acoustic_part = h.combined_cost - h.total_graph_cost;
    h.combined_cost = acoustic_part + original_lm_weight * h.total_graph_cost +
                      lm_weight * (-it->second);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Hypothesis &a, const Hypothesis &b) {
                     return a.combined_cost < b.combined_cost;
                   });
  return out;
}

std::size_t WordEditDistance(const std::vector<std::string> &a,
                             const std::vector<std::string> &b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace augkit
