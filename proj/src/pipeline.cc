// src/pipeline.cc

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

#include "augkit/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <thread>

#include "augkit/audio.h"
#include "augkit/resample.h"
#include "json.hpp"

namespace augkit {

namespace fs = std::filesystem;

void PipelineConfig::Validate() const {
  if (workers < 1) AUGKIT_FAIL(kConfig) << "workers must be >= 1";
  for (double f : {wsp_fractions.first, wsp_fractions.second})
    if (!(f >= 0.0 && f <= 1.0))
      AUGKIT_FAIL(kConfig) << "word-level fraction " << f
                           << " outside [0, 1]";
  if (RoundToInt64(wsp_fractions.first * 100) ==
      RoundToInt64(wsp_fractions.second * 100))
    AUGKIT_FAIL(kConfig) << "the two word-level fractions must differ";
  if (wsp_options.crossfade_ms < 0)
    AUGKIT_FAIL(kConfig) << "crossfade must be >= 0 ms";
  frontend.Validate();
  if (specaugment) {
    specaugment->Validate();
    if (specaugment->max_freq_width > frontend.num_ceps)
      AUGKIT_FAIL(kConfig) << "max frequency mask width "
                           << specaugment->max_freq_width
                           << " exceeds feature dimension "
                           << frontend.num_ceps;
  }
}

std::string RunSummary::ToJson() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["input_utterances"] = input_utterances;
  j["output_utterances"] = output_utterances;
  j["cleansed_away"] = cleansed_away;
  j["clipped_samples"] = clipped_samples;
  j["wsp_skipped"] = wsp_skipped;
  j["errors"] = nlohmann::ordered_json::array();
  for (const UtteranceError &e : errors)
    j["errors"].push_back({{"utt_id", e.utt_id}, {"message", e.message}});
  return j.dump(2) + "\n";
}

std::uint64_t UtteranceSeed(std::uint64_t global_seed,
                            std::string_view utt_id) {
  return DeriveSeed(global_seed, utt_id);
}

std::uint64_t SpecAugmentSeed(std::uint64_t global_seed,
                              std::string_view utt_id) {
  return DeriveSeed(UtteranceSeed(global_seed, utt_id), "specaug");
}

std::string SpeedSuffix(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "-sp%.1f", alpha);
  return buf;
}

std::string WspSuffix(double fraction_fast) {
  return "-wsp" + std::to_string(RoundToInt64(fraction_fast * 100.0));
}

void ParallelFor(std::size_t n, int workers,
                 const std::function<void(std::size_t)> &body) {
  const std::size_t threads =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  for (std::thread &th : pool) th.join();
}

namespace {

Waveform LoadUtterance(const Utterance &u) {
  Waveform rec = ReadWavFile(u.audio_path);
  if (u.end < 0) return rec;
  if (u.start * rec.sample_rate >= static_cast<double>(rec.samples.size()))
    AUGKIT_FAIL(kBounds) << "segment " << u.utt_id << " starts past the end of "
                         << u.audio_path;
  return ExtractSegment(rec, u.start, u.end);
}

std::vector<WordAlignment> ScaleTimes(const std::vector<WordAlignment> &words,
                                      const std::string &utt_id, double alpha) {
  std::vector<WordAlignment> out = words;
  for (WordAlignment &w : out) {
    w.utt_id = utt_id;
    w.start /= alpha;
    w.duration /= alpha;
  }
  return out;
}

struct DerivedCopy {
  std::string utt_id;
  double duration = 0.0;
  std::vector<WordAlignment> words;
};

struct ExpandResult {
  std::vector<DerivedCopy> copies;
  std::size_t clipped = 0;
  bool wsp_skipped = false;
  std::optional<std::string> error;
};

}  // namespace

Manifest ExpandCorpus(const Manifest &manifest,
                      const std::vector<WordAlignment> &ctm,
                      const PipelineConfig &cfg, const std::string &outdir,
                      RunSummary *summary) {
  cfg.Validate();
  ValidateManifest(manifest);
  RunSummary local;
  RunSummary &sum = summary != nullptr ? *summary : local;
  sum.command = "expand";

  Manifest input = manifest;
  if (cfg.cleanse) {
    CleanseStats stats;
    input = Cleanse(manifest, ctm, cfg.cleanse->min_avg_conf,
                    cfg.cleanse->min_words, &stats);
    sum.cleansed_away = UtteranceIds(manifest).size() - stats.kept;
  }
  const std::vector<Utterance> utts = ListUtterances(input);
  sum.input_utterances = UtteranceIds(manifest).size();
  const auto by_utt = GroupByUtterance(ctm);

  std::error_code ec;
  fs::create_directories(fs::path(outdir) / "wav", ec);
  if (ec)
    AUGKIT_FAIL(kIo) << "cannot create " << outdir << "/wav: " << ec.message();

  std::vector<ExpandResult> results(utts.size());
  ParallelFor(utts.size(), cfg.workers, [&](std::size_t i) {
    const Utterance &u = utts[i];
    ExpandResult &r = results[i];
    try {
      if (!cfg.enable_usp && !cfg.enable_wsp) return;
      const Waveform wave = LoadUtterance(u);
      auto words_it = by_utt.find(u.utt_id);
      const std::vector<WordAlignment> no_words;
      const auto &words = words_it == by_utt.end() ? no_words : words_it->second;
      auto emit = [&](const std::string &id, const Waveform &w,
                      std::vector<WordAlignment> ali) {
        WriteWavFile((fs::path(outdir) / "wav" / (id + ".wav")).string(), w);
        r.copies.push_back({id, w.Duration(), std::move(ali)});
      };
      if (cfg.enable_usp) {
        for (double alpha : {kUspSlow, kUspFast}) {
          std::string id = u.utt_id + SpeedSuffix(alpha);
          emit(id, SpeedPerturb(wave, SpeedFactor(alpha), &r.clipped),
               ScaleTimes(words, id, alpha));
        }
      }
      if (cfg.enable_wsp) {
        if (words.empty()) {
          r.wsp_skipped = true;
          AUGKIT_WARN << "utterance " << u.utt_id
                      << " has no CTM rows; word-level copies skipped";
          return;
        }
        const std::uint64_t seed = UtteranceSeed(cfg.global_seed, u.utt_id);
        for (double f : {cfg.wsp_fractions.first, cfg.wsp_fractions.second}) {
          std::string id = u.utt_id + WspSuffix(f);
          PerturbPlan plan = MakePlan(words, f, WspPlanSeed(seed, f));
          PerturbedUtterance p = ApplyPlan(wave, words, plan, cfg.wsp_options);
          r.clipped += p.clipped;
          for (WordAlignment &w : p.words) w.utt_id = id;
          emit(id, p.wave, std::move(p.words));
        }
      }
    } catch (const Error &e) {
      r.copies.clear();
      r.error = e.what();
    }
  });

  Manifest out = input;
  std::vector<WordAlignment> out_ctm;
  for (const Utterance &u : utts) {
    auto it = by_utt.find(u.utt_id);
    if (it != by_utt.end())
      out_ctm.insert(out_ctm.end(), it->second.begin(), it->second.end());
  }
  for (std::size_t i = 0; i < utts.size(); ++i) {
    const Utterance &u = utts[i];
    ExpandResult &r = results[i];
    sum.clipped_samples += r.clipped;
    if (r.wsp_skipped) sum.wsp_skipped.push_back(u.utt_id);
    if (r.error) {
      sum.errors.push_back({u.utt_id, *r.error});
      continue;
    }
    for (DerivedCopy &c : r.copies) {
      out.recordings[c.utt_id] =
          (fs::path(outdir) / "wav" / (c.utt_id + ".wav")).string();
      if (out.segmented()) {
        // Two-decimal ends are rounded up so the segment covers the audio.
        double end = std::ceil(c.duration * 100.0 - 1e-9) / 100.0;
        out.segments[c.utt_id] = {c.utt_id, c.utt_id, 0.0, end, u.speaker_id};
      }
      auto tr = input.transcripts.find(u.utt_id);
      if (tr != input.transcripts.end()) out.transcripts[c.utt_id] = tr->second;
      out.utt2spk[c.utt_id] = u.speaker_id;
      out_ctm.insert(out_ctm.end(), c.words.begin(), c.words.end());
    }
  }
  std::stable_sort(out_ctm.begin(), out_ctm.end(),
                   [](const WordAlignment &a, const WordAlignment &b) {
                     return a.utt_id < b.utt_id;
                   });
  WriteDataDir(out, outdir);
  WriteStringToFile((fs::path(outdir) / "ctm").string(), WriteCtm(out_ctm));
  sum.output_utterances = UtteranceIds(out).size();
  return out;
}

FeatureList FeaturizeCorpus(const Manifest &manifest, const PipelineConfig &cfg,
                            RunSummary *summary) {
  cfg.Validate();
  ValidateManifest(manifest);
  RunSummary local;
  RunSummary &sum = summary != nullptr ? *summary : local;
  sum.command = "featurize";
  const std::vector<Utterance> utts = ListUtterances(manifest);
  sum.input_utterances = utts.size();

  std::map<std::string, double> warps;
  if (cfg.vtln_map) {
    warps = ReadScalarTable(*cfg.vtln_map);
    for (const Utterance &u : utts)
      if (warps.count(u.speaker_id) == 0)
        AUGKIT_FAIL(kConfig) << "VTLN map " << *cfg.vtln_map
                             << " has no warp factor for speaker "
                             << u.speaker_id;
  }

  std::vector<std::optional<FeatureMatrix>> feats(utts.size());
  std::vector<std::string> errors(utts.size());
  ParallelFor(utts.size(), cfg.workers, [&](std::size_t i) {
    const Utterance &u = utts[i];
    try {
      VtlnConfig vtln = cfg.vtln;
      const VtlnConfig *vp = nullptr;
      if (cfg.vtln_map) {
        vtln.warp = warps.at(u.speaker_id);
        vp = &vtln;
      }
      feats[i] = Mfcc(LoadUtterance(u), cfg.frontend, vp);
    } catch (const Error &e) {
      errors[i] = e.what();
    }
  });

  // Speaker statistics need every utterance, so normalization waits for all
  // extraction to finish.
  FeatureList list;
  std::map<std::string, std::string> utt2spk;
  for (std::size_t i = 0; i < utts.size(); ++i) {
    if (!feats[i]) {
      sum.errors.push_back({utts[i].utt_id, errors[i]});
      continue;
    }
    list.emplace_back(utts[i].utt_id, std::move(*feats[i]));
    utt2spk[utts[i].utt_id] = utts[i].speaker_id;
  }
  list = Cmvn(list, utt2spk, cfg.cmvn_mode);

  if (cfg.specaugment) {
    ParallelFor(list.size(), cfg.workers, [&](std::size_t i) {
      SpecAugmentConfig sa = *cfg.specaugment;
      sa.seed = SpecAugmentSeed(cfg.global_seed, list[i].first);
      list[i].second = SpecAugment(list[i].second, sa);
    });
  }
  sum.output_utterances = list.size();
  return list;
}

}  // namespace augkit
