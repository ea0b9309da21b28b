// include/augkit/lattice.h

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

#ifndef AUGKIT_LATTICE_H_
#define AUGKIT_LATTICE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace augkit {

inline constexpr std::string_view kEpsilon = "<eps>";
inline constexpr double kDefaultAcousticScale = 0.1;
inline constexpr std::size_t kDefaultMbrCandidates = 100;

using StateId = std::int32_t;

struct LatticeArc {
  StateId src = 0;
  StateId dst = 0;
  std::string label;          // word or "<eps>"
  double graph_cost = 0.0;    // -ln prob
  double acoustic_cost = 0.0; // -ln likelihood

  bool operator==(const LatticeArc &) const = default;
};

/// Acyclic word lattice. State ids are those used in the text form; they need
/// not be contiguous.
struct Lattice {
  std::string id;
  StateId start = 0;
  std::vector<LatticeArc> arcs;
  std::map<StateId, double> finals;

  StateId NumStates() const;  // max state id + 1
  bool operator==(const Lattice &) const = default;
};

/// Text records:
///   LATTICE <id>
///   START <state>
///   ARC <src> <dst> <word|<eps>> <graph_cost> <acoustic_cost>
///   FINAL <state> <final_cost>
///   END
/// A state is defined by START, FINAL, or as the source of an ARC; arcs into
/// undefined states are reference errors. Cycles are errors. States that are
/// unreachable or cannot reach a final state are pruned with a warning.
std::vector<Lattice> ParseLattices(std::string_view text);
std::vector<Lattice> ReadLatticeFile(const std::string &path);
/// Costs are printed in shortest round-trip form, so parsing is exact.
std::string WriteLattices(const std::vector<Lattice> &lattices);

/// Throws kCyclicLattice naming the lattice when a cycle exists; returns the
/// states in topological order otherwise (only states that appear in arcs,
/// finals, or as start).
std::vector<StateId> TopologicalOrder(const Lattice &lattice);

/// Removes states not on any start-to-final path. Returns how many were
/// removed.
std::size_t Connect(Lattice *lattice);

/// New start state with one epsilon arc per component carrying
/// graph_cost = -ln(prior_k); priors default to 1/K. State ids are renumbered
/// densely.
Lattice Union(const std::vector<Lattice> &lattices,
              const std::optional<std::vector<double>> &priors = std::nullopt,
              const std::string &id = "");

struct Hypothesis {
  std::vector<std::string> words;  // epsilons removed
  /// Costs of the best single path spelling `words`.
  double total_graph_cost = 0.0;
  double total_acoustic_cost = 0.0;
  /// -ln of the summed exp(-(graph + scale * acoustic)) over every path
  /// spelling `words`; rescoring replaces it.
  double combined_cost = 0.0;
};

/// The n lowest-cost distinct word sequences, ascending by combined cost
/// (ties: lexicographic by words). Exact: the lattice is determinized in the
/// log semiring before the n-best search.
std::vector<Hypothesis> NBest(const Lattice &lattice, std::size_t n,
                              double acoustic_scale = kDefaultAcousticScale);

/// Posterior of each hypothesis, normalized over the list.
std::vector<double> HypothesisPosteriors(const std::vector<Hypothesis> &hyps);

/// Forward-backward arc posteriors (same order as lattice.arcs) with path
/// weight exp(-(graph + scale * acoustic)).
std::vector<double> ArcPosteriors(const Lattice &lattice,
                                  double acoustic_scale = kDefaultAcousticScale);

using WordSequence = std::vector<std::string>;

/// combined = acoustic part + original_lm_weight * graph
///            + lm_weight * (-lm_score),
/// where acoustic part = combined_cost - total_graph_cost of the input. The
/// result is stably re-sorted ascending.
std::vector<Hypothesis> RescoreNBest(
    const std::vector<Hypothesis> &hyps,
    const std::map<WordSequence, double> &lm_scores, double lm_weight,
    double original_lm_weight);

std::size_t WordEditDistance(const std::vector<std::string> &a,
                             const std::vector<std::string> &b);

struct MbrResult {
  Hypothesis best;
  double expected_risk = 0.0;
  double posterior = 0.0;
  std::vector<Hypothesis> candidates;
  std::vector<double> risks;  // parallel to candidates
};

/// Risks closer than this are ties, and so are combined costs.
inline constexpr double kMbrTieTolerance = 1e-9;

/// Minimum Bayes risk over the n-best candidate set with posteriors
/// renormalized over that set; the risk kernel is word edit distance. Ties go
/// to the lower combined cost, then to the lexicographically smaller words.
MbrResult MbrDecode(const Lattice &lattice,
                    std::size_t n = kDefaultMbrCandidates,
                    double acoustic_scale = kDefaultAcousticScale);

/// The selection rule above applied to an explicit candidate list.
std::size_t SelectMinRisk(const std::vector<Hypothesis> &candidates,
                          const std::vector<double> &risks);

std::string JoinWords(const std::vector<std::string> &words);

}  // namespace augkit

#endif  // AUGKIT_LATTICE_H_
