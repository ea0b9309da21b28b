// tests/manifest-test.cc

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

#include <functional>
#include <random>

#include "augkit/common.h"
#include "augkit/manifest.h"
#include "doctest.h"
#include "oracles/fixtures.h"

using namespace augkit;

namespace {

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

WordAlignment Word(const std::string &utt, double start, double dur,
                   const std::string &w, std::optional<double> conf) {
  WordAlignment a;
  a.utt_id = utt;
  a.start = start;
  a.duration = dur;
  a.word = w;
  a.confidence = conf;
  return a;
}

// Random manifest whose times are exact at two decimals.
Manifest RandomManifest(std::mt19937_64 &rng, bool segmented) {
  Manifest m;
  const int recs = 1 + static_cast<int>(rng() % 5);
  for (int r = 0; r < recs; ++r)
    m.recordings["rec" + std::to_string(r)] =
        "/data/audio/rec" + std::to_string(r) + ".wav";
  std::vector<std::string> utts;
  if (segmented) {
    const int segs = 1 + static_cast<int>(rng() % 8);
    for (int s = 0; s < segs; ++s) {
      std::string id = "seg" + std::to_string(s);
      std::int64_t a = static_cast<std::int64_t>(rng() % 5000);
      std::int64_t b = a + 1 + static_cast<std::int64_t>(rng() % 900);
      m.segments[id] = {id, "rec" + std::to_string(rng() % recs), a / 100.0,
                        b / 100.0, ""};
      utts.push_back(id);
    }
  } else {
    for (const auto &[rec, path] : m.recordings) utts.push_back(rec);
  }
  for (const std::string &u : utts) {
    std::vector<std::string> words;
    for (int w = static_cast<int>(rng() % 4); w > 0; --w)
      words.push_back("w" + std::to_string(rng() % 50));
    if (!words.empty() || rng() % 2) m.transcripts[u] = words;
    m.utt2spk[u] = "spk" + std::to_string(rng() % 3);
  }
  for (auto &[id, seg] : m.segments) seg.speaker_id = m.utt2spk[id];
  return m;
}

}  // namespace

TEST_SUITE("manifest") {

TEST_CASE("minimal data directory") {
  fixtures::TempDir dir("dd");
  fixtures::WriteText(dir / "wav.scp", "u1 a.wav\n");
  fixtures::WriteText(dir / "text", "u1 hello world\n");
  Manifest m = ParseDataDir(dir.path().string());
  CHECK(m.recordings.size() == 1);
  CHECK(UtteranceIds(m) == std::vector<std::string>{"u1"});
  CHECK(m.transcripts.at("u1") == std::vector<std::string>{"hello", "world"});

  fixtures::WriteText(dir / "segments", "s1 u1 0.00 1.50\n");
  fixtures::WriteText(dir / "utt2spk", "s1 spkA\n");
  fixtures::WriteText(dir / "text", "s1 hello world\n");
  m = ParseDataDir(dir.path().string());
  REQUIRE(m.segments.size() == 1);
  const Segment &s = m.segments.at("s1");
  CHECK(s.end - s.start == 1.5);
  CHECK(s.speaker_id == "spkA");
  std::vector<Utterance> us = ListUtterances(m);
  CHECK(us[0].audio_path == "a.wav");
  CHECK(us[0].end == 1.5);
}

TEST_CASE("data directory errors") {
  fixtures::TempDir dir("dd");
  std::string msg;
  CHECK(KindOf([&] { ParseDataDir(dir.path().string()); }, &msg) ==
        ErrorKind::kMissingFile);
  CHECK(msg.find("wav.scp") != std::string::npos);

  fixtures::WriteText(dir / "wav.scp", "u1 a.wav\nu1 b.wav\n");
  fixtures::WriteText(dir / "text", "u1 x\n");
  CHECK(KindOf([&] { ParseDataDir(dir.path().string()); }, &msg) ==
        ErrorKind::kDuplicateId);
  CHECK(msg.find("line 2") != std::string::npos);

  fixtures::WriteText(dir / "wav.scp", "u1 a.wav\n");
  std::filesystem::remove(dir / "text");
  CHECK(KindOf([&] { ParseDataDir(dir.path().string()); }, &msg) ==
        ErrorKind::kMissingFile);
  CHECK(msg.find("text") != std::string::npos);

  fixtures::WriteText(dir / "text", "s1 x\n");
  fixtures::WriteText(dir / "segments", "s1 nosuch 0 1\n");
  CHECK(KindOf([&] { ParseDataDir(dir.path().string()); }) ==
        ErrorKind::kDanglingReference);
  fixtures::WriteText(dir / "segments", "s1 u1 1.0 0.5\n");
  CHECK(KindOf([&] { ParseDataDir(dir.path().string()); }) ==
        ErrorKind::kRange);
}

TEST_CASE("CTM parsing") {
  auto rows = ParseCtm("u1 1 0.10 0.40 hello 0.95\n");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0] == Word("u1", 0.10, 0.40, "hello", 0.95));
  CHECK(ParseCtm("").empty());
  CHECK(ParseCtm("u2 A 0 0.3 x\n")[0].confidence == std::nullopt);

  std::string msg;
  CHECK(KindOf([] { ParseCtm("u1 1 0.10 0.40 a 0.9\nu1 1 0.30 0.40 b 0.9\n"); },
               &msg) == ErrorKind::kOverlap);
  CHECK(msg.find("u1") != std::string::npos);
  // Touching words are fine; different utterances never overlap.
  CHECK(ParseCtm("u1 1 0.10 0.40 a\nu1 1 0.50 0.10 b\nu2 1 0.2 1 c\n").size() ==
        3);
  CHECK(KindOf([] { ParseCtm("u1 1 0.1 0.4 a\nu1 1 abc 0.4 b\n"); }, &msg) ==
        ErrorKind::kParse);
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(KindOf([] { ParseCtm("u1 1 0.1 0.4 a 1.5\n"); }) == ErrorKind::kRange);
  CHECK(KindOf([] { ParseCtm("u1 1 0.1\n"); }) == ErrorKind::kParse);
}

TEST_CASE("cleanse by mean confidence") {
  Manifest m;
  m.recordings = {{"u1", "a.wav"}, {"u2", "b.wav"}, {"u3", "c.wav"}};
  std::vector<WordAlignment> ali = {
      Word("u1", 0.0, 0.1, "a", 1.0), Word("u1", 0.1, 0.1, "b", 0.9),
      Word("u1", 0.2, 0.1, "c", 0.4), Word("u2", 0.0, 0.1, "d", 0.2)};
  CleanseStats st;
  Manifest kept = Cleanse(m, ali, 0.5, 0, &st);
  CHECK(UtteranceIds(kept) == std::vector<std::string>{"u1"});
  CHECK(st.dropped_unaligned == 1);
  CHECK(st.dropped_low_confidence == 1);
  CHECK(UtteranceIds(Cleanse(m, ali, 0.8, 0)).empty());
  CHECK(UtteranceIds(Cleanse(m, ali, 0.0, 0)) ==
        std::vector<std::string>{"u1", "u2"});
  CHECK(UtteranceIds(Cleanse(m, ali, 0.0, 2)) ==
        std::vector<std::string>{"u1"});

  ali.push_back(Word("u3", 0, 0.1, "e", std::nullopt));
  CHECK(KindOf([&] { Cleanse(m, ali, 0.5, 0); }) ==
        ErrorKind::kConfidenceRequired);
}

TEST_CASE("cleanse keeps recordings of surviving segments only") {
  Manifest m;
  m.recordings = {{"r1", "a.wav"}, {"r2", "b.wav"}};
  m.segments["s1"] = {"s1", "r1", 0, 1, "s1"};
  m.segments["s2"] = {"s2", "r2", 0, 1, "s2"};
  m.transcripts["s1"] = {"x"};
  m.transcripts["s2"] = {"y"};
  Manifest out = Cleanse(m, {Word("s2", 0, 0.5, "y", 0.99)}, 0.9, 0);
  CHECK(out.recordings.size() == 1);
  CHECK(out.recordings.count("r2") == 1);
  CHECK(out.transcripts.count("s1") == 0);
  ValidateManifest(out);
}

TEST_CASE("data directory round trip on random manifests") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    fixtures::TempDir dir("rt");
    Manifest m = RandomManifest(rng, t % 2 == 0);
    WriteDataDir(m, dir.path().string());
    CHECK(ParseDataDir(dir.path().string()) == m);
  }
}

TEST_CASE("empty manifest and two-decimal times") {
  fixtures::TempDir dir("empty");
  WriteDataDir(Manifest{}, dir.path().string());
  CHECK(std::filesystem::exists(dir / "wav.scp"));
  CHECK(fixtures::ReadText(dir / "text").empty());

  CHECK(FormatCentiseconds(0.125) == "0.13");
  CHECK(FormatCentiseconds(2.625) == "2.63");
  CHECK(FormatCentiseconds(-0.375) == "-0.38");
  CHECK(FormatCentiseconds(2.0) == "2.00");
  Manifest m;
  m.recordings["r"] = "r.wav";
  m.segments["s"] = {"s", "r", 0.125, 1.0, "s"};
  m.utt2spk["s"] = "s";
  WriteDataDir(m, dir.path().string());
  CHECK(fixtures::ReadText(dir / "segments") == "s r 0.13 1.00\n");
}

TEST_CASE("CTM round trip on random alignments") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    std::vector<WordAlignment> rows;
    for (int u = 0; u < 3; ++u) {
      std::int64_t cs = static_cast<std::int64_t>(rng() % 30);
      for (int w = static_cast<int>(rng() % 6); w > 0; --w) {
        std::int64_t d = 1 + static_cast<std::int64_t>(rng() % 80);
        std::optional<double> conf;
        if (rng() % 3) conf = static_cast<double>(rng() % 1001) / 1000.0;
        rows.push_back(Word("utt" + std::to_string(u), cs / 100.0, d / 100.0,
                            "w" + std::to_string(rng() % 9), conf));
        cs += d + static_cast<std::int64_t>(rng() % 20);
      }
    }
    std::vector<WordAlignment> back = ParseCtm(WriteCtm(rows));
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(back[i].utt_id == rows[i].utt_id);
      CHECK(back[i].word == rows[i].word);
      CHECK(back[i].confidence == rows[i].confidence);
      CHECK(RoundToInt64(back[i].start * 100) ==
            RoundToInt64(rows[i].start * 100));
      CHECK(RoundToInt64(back[i].end() * 100) ==
            RoundToInt64(rows[i].end() * 100));
    }
    CHECK(WriteCtm(back) == WriteCtm(rows));
  }
}

TEST_CASE("validation catches dangling references") {
  Manifest m;
  m.recordings["r"] = "r.wav";
  m.transcripts["ghost"] = {"x"};
  CHECK(KindOf([&] { ValidateManifest(m); }) == ErrorKind::kDanglingReference);
  m.transcripts.clear();
  m.utt2spk["ghost"] = "s";
  CHECK(KindOf([&] { ValidateManifest(m); }) == ErrorKind::kDanglingReference);
}

}  // TEST_SUITE
