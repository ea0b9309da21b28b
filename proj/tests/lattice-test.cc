// tests/lattice-test.cc

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

#include <cmath>
#include <functional>
#include <random>

#include "augkit/common.h"
#include "augkit/lattice.h"
#include "doctest.h"
#include "oracles/lattice-oracle.h"

using namespace augkit;

namespace {

const char *kWorkedExample =
    "LATTICE ex\n"
    "START 0\n"
    "ARC 0 1 a 0.916290731874155 0\n"
    "ARC 0 2 c 0 0\n"
    "ARC 1 3 b 0 0\n"
    "ARC 2 3 b 1.2039728043259361 0\n"
    "ARC 2 4 d 1.2039728043259361 0\n"
    "FINAL 3 0\n"
    "FINAL 4 0\n"
    "END\n";

Lattice SinglePath(const std::vector<std::string> &words, double cost,
                   const std::string &id = "s") {
  Lattice l;
  l.id = id;
  for (std::size_t i = 0; i < words.size(); ++i)
    l.arcs.push_back({static_cast<StateId>(i), static_cast<StateId>(i + 1),
                      words[i], i == 0 ? cost : 0.0, 0.0});
  l.finals[static_cast<StateId>(words.size())] = 0.0;
  return l;
}

ErrorKind KindOf(const std::function<void()> &f, std::string *msg = nullptr) {
  try {
    f();
  } catch (const Error &e) {
    if (msg != nullptr) *msg = e.what();
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kIo;
}

Lattice RandomSmallLattice(std::mt19937_64 &rng, std::size_t max_paths) {
  while (true) {
    int states = 3 + static_cast<int>(rng() % 8);
    int arcs = states + static_cast<int>(rng() % (2 * states));
    Lattice l = oracle::RandomLattice(rng, states, arcs);
    if (oracle::EnumeratePaths(l, 1.0).size() <= max_paths) return l;
  }
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("parse single-arc lattice") {
  auto lats =
      ParseLattices("LATTICE x\nSTART 0\nARC 0 1 hi 0 0\nFINAL 1 0\nEND\n");
  REQUIRE(lats.size() == 1);
  auto hyps = NBest(lats[0], 10);
  REQUIRE(hyps.size() == 1);
  CHECK(hyps[0].words == std::vector<std::string>{"hi"});
}

TEST_CASE("parse errors") {
  std::string msg;
  CHECK(KindOf([&] {
          ParseLattices("LATTICE cyc\nSTART 0\nARC 0 1 hi 0 0\nARC 1 0 x 0 0\n"
                        "FINAL 1 0\nEND\n");
        },
        &msg) == ErrorKind::kCyclicLattice);
  CHECK(msg.find("cyc") != std::string::npos);
  CHECK(KindOf([&] {
          ParseLattices("LATTICE r\nSTART 0\nARC 0 7 hi 0 0\nFINAL 1 0\nEND\n");
        },
        &msg) == ErrorKind::kReference);
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(KindOf([] { ParseLattices("LATTICE r\nSTART 0\nFINAL 0 0\n"); }) ==
        ErrorKind::kParse);
  CHECK(KindOf([] {
          ParseLattices("LATTICE r\nSTART 0\nARC 0 1 a x 0\nFINAL 1 0\nEND\n");
        }) == ErrorKind::kParse);
}

TEST_CASE("unreachable states are pruned") {
  auto lats = ParseLattices(
      "LATTICE p\nSTART 0\nARC 0 1 a 0 0\nARC 2 1 b 0 0\nARC 0 3 c 0 0\n"
      "ARC 3 4 d 0 0\nFINAL 1 0\nFINAL 4 0\nARC 4 5 e 0 0\nARC 5 6 f 0 0\n"
      "FINAL 6 1\nEND\n");
  REQUIRE(lats.size() == 1);
  for (const LatticeArc &a : lats[0].arcs) {
    CHECK(a.src != 2);
  }
  CHECK(lats[0].arcs.size() == 5);
}

TEST_CASE("text round trip is exact") {
  std::mt19937_64 rng(21);
  std::vector<Lattice> lats;
  for (int i = 0; i < 50; ++i) {
    Lattice l = oracle::RandomLattice(rng, 2 + static_cast<int>(rng() % 12),
                                      30);
    l.id = "lat" + std::to_string(i);
    lats.push_back(l);
  }
  std::vector<Lattice> back = ParseLattices(WriteLattices(lats));
  REQUIRE(back.size() == lats.size());
  for (std::size_t i = 0; i < lats.size(); ++i) CHECK(back[i] == lats[i]);
  CHECK(WriteLattices(back) == WriteLattices(lats));
}

TEST_CASE("worked example: MBR differs from MAP") {
  Lattice l = ParseLattices(kWorkedExample)[0];
  auto hyps = NBest(l, 10, 1.0);
  REQUIRE(hyps.size() == 3);
  CHECK(JoinWords(hyps[0].words) == "a b");
  auto post = HypothesisPosteriors(hyps);
  CHECK(post[0] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(post[1] == doctest::Approx(0.3).epsilon(1e-12));
  MbrResult r = MbrDecode(l, 100, 1.0);
  CHECK(JoinWords(r.best.words) == "c b");
  CHECK(r.expected_risk == doctest::Approx(0.7).epsilon(1e-12));
  for (std::size_t i = 0; i < r.candidates.size(); ++i)
    if (JoinWords(r.candidates[i].words) == "a b")
      CHECK(r.risks[i] == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("n-best basics") {
  Lattice two = SinglePath({"x"}, 1.0);
  two.arcs.push_back({0, 1, "y", 2.0, 0.0});
  auto h = NBest(two, 1, 1.0);
  REQUIRE(h.size() == 1);
  CHECK(h[0].words == std::vector<std::string>{"x"});
  CHECK(NBest(two, 50, 1.0).size() == 2);
  CHECK_THROWS_AS(NBest(two, 0, 1.0), Error);

  // Diamond: two paths spell "p q".
  Lattice d;
  d.id = "d";
  d.arcs = {{0, 1, "p", 1.0, 0.0}, {0, 2, "p", 2.0, 0.0},
            {1, 3, "q", 0.0, 0.0}, {2, 3, "q", 0.5, 0.0}};
  d.finals[3] = 0.0;
  auto m = NBest(d, 10, 1.0);
  REQUIRE(m.size() == 1);
  CHECK(m[0].combined_cost ==
        doctest::Approx(-std::log(std::exp(-1.0) + std::exp(-2.5))).epsilon(1e-12));
  CHECK(m[0].total_graph_cost == 1.0);

  Lattice dead;
  dead.id = "dead";
  dead.arcs = {{0, 1, "a", 0, 0}};
  CHECK(KindOf([&] { MbrDecode(dead); }) == ErrorKind::kNoPath);
}

TEST_CASE("union posteriors") {
  Lattice a = SinglePath({"a", "b"}, 1.0, "l1");
  Lattice b = SinglePath({"c", "d"}, 1.0, "l2");
  Lattice u = Union({a, b});
  CHECK(u.id == "l1");
  auto post = HypothesisPosteriors(NBest(u, 10, 1.0));
  REQUIRE(post.size() == 2);
  CHECK(std::abs(post[0] - 0.5) <= 1e-12);
  CHECK(std::abs(post[1] - 0.5) <= 1e-12);

  Lattice c = SinglePath({"c", "d"}, 1.0, "l3");
  Lattice a2 = SinglePath({"a", "b"}, 1.0, "l4");
  auto h = NBest(Union({a2, c}, std::vector<double>{0.9, 0.1}), 10, 1.0);
  auto p = HypothesisPosteriors(h);
  CHECK(JoinWords(h[0].words) == "a b");
  CHECK(std::abs(p[0] - 0.9) <= 1e-12);
  CHECK(std::abs(p[1] - 0.1) <= 1e-12);

  // Arc posteriors of the prior arcs carry the priors.
  Lattice u2 = Union({a2, c}, std::vector<double>{0.9, 0.1});
  auto ap = ArcPosteriors(u2, 1.0);
  for (std::size_t i = 0; i < u2.arcs.size(); ++i)
    if (u2.arcs[i].label == "<eps>")
      CHECK((std::abs(ap[i] - 0.9) < 1e-12 || std::abs(ap[i] - 0.1) < 1e-12));

  CHECK_THROWS_AS(Union({}), Error);
  CHECK_THROWS_AS(Union({a, b}, std::vector<double>{0.5, 0.6}), Error);
  CHECK_THROWS_AS(Union({a, b}, std::vector<double>{1.0}), Error);
  CHECK_THROWS_AS(Union({a, b}, std::vector<double>{1.5, -0.5}), Error);
}

TEST_CASE("K=1 union only adds a free epsilon") {
  std::mt19937_64 rng(22);
  Lattice l = RandomSmallLattice(rng, 100);
  Lattice u = Union({l});
  auto p = oracle::MergedSequences(oracle::EnumeratePaths(l, 0.1));
  auto q = oracle::MergedSequences(oracle::EnumeratePaths(u, 0.1));
  REQUIRE(p.size() == q.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(p[i].words == q[i].words);
    CHECK(std::abs(p[i].merged_cost - q[i].merged_cost) <= 1e-12);
  }
}

TEST_CASE("union path-count law") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 50; ++t) {
    std::vector<Lattice> parts;
    std::size_t total = 0;
    for (int k = 0; k < 1 + static_cast<int>(rng() % 4); ++k) {
      parts.push_back(RandomSmallLattice(rng, 50));
      total += oracle::EnumeratePaths(parts.back(), 1.0).size();
    }
    CHECK(oracle::EnumeratePaths(Union(parts), 1.0).size() == total);
  }
}

TEST_CASE("n-best matches brute force on random lattices") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 300; ++t) {
    Lattice l = RandomSmallLattice(rng, 2000);
    const double scale = t % 2 ? 0.1 : 1.0;
    auto paths = oracle::EnumeratePaths(l, scale);
    auto seqs = oracle::MergedSequences(paths);
    double best = paths.front().cost;
    for (const auto &p : paths) best = std::min(best, p.cost);
    auto hyps = NBest(l, seqs.size() + 3, scale);
    REQUIRE(hyps.size() == seqs.size());
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      CHECK(std::abs(hyps[i].combined_cost - seqs[i].merged_cost) <= 1e-9);
      CHECK(std::abs(hyps[i].total_graph_cost +
                     scale * hyps[i].total_acoustic_cost - seqs[i].best_cost) <=
            1e-9);
      if (i > 0) CHECK(hyps[i].combined_cost >= hyps[i - 1].combined_cost);
    }
    // With no duplicate spellings the 1-best is the cheapest path.
    if (seqs.size() == paths.size())
      CHECK(std::abs(hyps[0].combined_cost - best) <= 1e-9);
  }
}

TEST_CASE("MBR matches brute force on random lattices") {
  std::mt19937_64 rng(25);
  for (int t = 0; t < 300; ++t) {
    Lattice l = RandomSmallLattice(rng, 200);
    auto seqs = oracle::MergedSequences(oracle::EnumeratePaths(l, 0.1));
    oracle::MbrChoice want = oracle::Mbr(seqs);
    MbrResult got = MbrDecode(l, seqs.size(), 0.1);
    CHECK(got.best.words == want.words);
    CHECK(std::abs(got.expected_risk - want.risk) <= 1e-9);
  }
}

TEST_CASE("shifting every final cost keeps the ordering") {
  std::mt19937_64 rng(26);
  for (int t = 0; t < 100; ++t) {
    Lattice l = RandomSmallLattice(rng, 200);
    Lattice s = l;
    for (auto &[state, c] : s.finals) c += 3.25;
    auto a = NBest(l, 20, 0.1), b = NBest(s, 20, 0.1);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].words == b[i].words);
    CHECK(MbrDecode(l, 100, 0.1).best.words == MbrDecode(s, 100, 0.1).best.words);
  }
}

TEST_CASE("rescoring") {
  auto hyp = [](std::vector<std::string> w, double g, double c) {
    Hypothesis h;
    h.words = std::move(w);
    h.total_graph_cost = g;
    h.combined_cost = c;
    return h;
  };
  std::vector<Hypothesis> in = {hyp({"a"}, 1.0, 2.0), hyp({"b"}, 0.5, 2.5),
                                hyp({"c"}, 2.0, 3.0)};
  std::map<WordSequence, double> lm = {
      {{"a"}, -3.0}, {{"b"}, -0.5}, {{"c"}, -1.0}};
  auto same = RescoreNBest(in, lm, 0.0, 1.0);
  for (std::size_t i = 0; i < in.size(); ++i) {
    CHECK(same[i].words == in[i].words);
    CHECK(same[i].combined_cost == doctest::Approx(in[i].combined_cost));
  }
  // Weights (0.5, 0.5): a = 1 + 0.5 + 1.5 = 3.0, b = 2 + 0.25 + 0.25 = 2.5,
  // c = 1 + 1 + 0.5 = 2.5; b and c tie and keep input order.
  auto r = RescoreNBest(in, lm, 0.5, 0.5);
  CHECK(JoinWords(r[0].words) == "b");
  CHECK(JoinWords(r[1].words) == "c");
  CHECK(JoinWords(r[2].words) == "a");
  CHECK(r[0].combined_cost == doctest::Approx(2.5));
  CHECK(r[2].combined_cost == doctest::Approx(3.0));

  std::vector<Hypothesis> tie = {hyp({"x"}, 1.0, 2.0), hyp({"y"}, 1.0, 2.0)};
  auto t = RescoreNBest(tie, {{{"x"}, -2.0}, {{"y"}, -1.999}}, 0.1, 1.0);
  CHECK(JoinWords(t[0].words) == "y");

  std::string msg;
  CHECK(KindOf([&] { RescoreNBest(in, {{{"a"}, -1.0}}, 1.0, 1.0); }, &msg) ==
        ErrorKind::kMissingScore);
  CHECK(msg.find("b") != std::string::npos);
}

TEST_CASE("edit distance") {
  CHECK(WordEditDistance({"x"}, {"x"}) == 0);
  CHECK(WordEditDistance({}, {"a", "b", "c"}) == 3);
  CHECK(WordEditDistance({"a", "b"}, {"c", "d"}) == 2);
  std::mt19937_64 rng(27);
  auto rand_seq = [&] {
    std::vector<std::string> s(rng() % 7);
    for (auto &w : s) w = std::string(1, static_cast<char>('a' + rng() % 3));
    return s;
  };
  for (int t = 0; t < 2000; ++t) {
    auto a = rand_seq(), b = rand_seq(), c = rand_seq();
    const std::size_t ab = WordEditDistance(a, b);
    CHECK(ab == static_cast<std::size_t>(oracle::EditDistance(a, b)));
    CHECK(ab == WordEditDistance(b, a));
    CHECK((ab == 0) == (a == b));
    CHECK(WordEditDistance(a, c) <= ab + WordEditDistance(b, c));
  }
}

TEST_CASE("MBR tie rules") {
  auto hyp = [](std::vector<std::string> w, double c) {
    Hypothesis h;
    h.words = std::move(w);
    h.combined_cost = c;
    return h;
  };
  // Equal risks: the cheaper one wins, then the lexicographically smaller.
  CHECK(SelectMinRisk({hyp({"b"}, 1.0), hyp({"a"}, 2.0)}, {0.5, 0.5}) == 0);
  CHECK(SelectMinRisk({hyp({"b"}, 1.0), hyp({"a"}, 1.0)}, {0.5, 0.5}) == 1);
  CHECK(SelectMinRisk({hyp({"b"}, 1.0), hyp({"a"}, 1.0)}, {0.5, 0.4}) == 1);
  // All identical sequences collapse to one candidate with zero risk.
  Lattice l;
  l.id = "same";
  l.arcs = {{0, 1, "w", 1.0, 0}, {0, 1, "w", 2.0, 0}};
  l.finals[1] = 0;
  MbrResult r = MbrDecode(l);
  CHECK(JoinWords(r.best.words) == "w");
  CHECK(r.expected_risk == 0.0);
}

}  // TEST_SUITE
