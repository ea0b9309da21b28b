// tools/augkit.cc

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

// augkit: corpus augmentation, feature extraction and lattice utilities.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "augkit/audio.h"
#include "augkit/common.h"
#include "augkit/features.h"
#include "augkit/lattice.h"
#include "augkit/manifest.h"
#include "augkit/objectives.h"
#include "augkit/pipeline.h"
#include "augkit/resample.h"
#include "augkit/spec-augment.h"
#include "augkit/word-perturb.h"

namespace fs = std::filesystem;
using namespace augkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Bad flag combinations that CLI11 cannot express.
struct UsageError {
  std::string message;
};

// "<key> <value>" lines, e.g. utt2spk or wav.scp.
std::map<std::string, std::string> ReadStringTable(const std::string &path) {
  std::map<std::string, std::string> table;
  std::istringstream in(ReadFileToString(path));
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    std::vector<std::string> f = SplitFields(line);
    if (f.empty()) continue;
    if (f.size() != 2)
      AUGKIT_FAIL(kParse) << path << " line " << line_no
                          << ": expected '<key> <value>'";
    if (!table.emplace(f[0], f[1]).second)
      AUGKIT_FAIL(kDuplicateId) << "duplicate id '" << f[0] << "' in " << path
                                << " at line " << line_no;
  }
  return table;
}

bool HasWavExtension(const std::string &path) {
  std::string ext = fs::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".wav";
}

void WarnClipped(std::size_t clipped) {
  if (clipped > 0) AUGKIT_WARN << clipped << " samples clipped to [-1, 1]";
}

void WriteSummary(const std::string &path, const RunSummary &summary) {
  if (!path.empty()) WriteStringToFile(path, summary.ToJson());
}

void ReportErrors(const RunSummary &summary) {
  for (const UtteranceError &e : summary.errors)
    std::cerr << "augkit: utterance " << e.utt_id << ": " << e.message << "\n";
}

struct SpecAugmentFlags {
  int mf = 1, F = 10, mt = 1, T = 20;
  double p = 0.05, mask_value = 0.0;
  std::string fill = "value";

  void Add(CLI::App *sub) {
    sub->add_option("--mf", mf, "Number of frequency masks")
        ->capture_default_str();
    sub->add_option("--F", F, "Maximum frequency mask width (bins)")
        ->capture_default_str();
    sub->add_option("--mt", mt, "Number of time masks")->capture_default_str();
    sub->add_option("--T", T, "Maximum time mask width (frames)")
        ->capture_default_str();
    sub->add_option("--p", p, "Time mask width cap as a fraction of frames")
        ->capture_default_str();
    sub->add_option("--mask-value", mask_value, "Fill value for --fill value")
        ->capture_default_str();
    sub->add_option("--fill", fill, "Mask fill: value or mean")
        ->check(CLI::IsMember({"value", "mean"}))
        ->capture_default_str();
  }

  SpecAugmentConfig Config() const {
    SpecAugmentConfig cfg;
    cfg.num_freq_masks = mf;
    cfg.max_freq_width = F;
    cfg.num_time_masks = mt;
    cfg.max_time_width = T;
    cfg.max_time_fraction = p;
    cfg.mask_value = mask_value;
    cfg.fill = fill == "mean" ? MaskFill::kDimensionMean : MaskFill::kValue;
    return cfg;
  }
};

// Subcommand table.
struct Command {
  CLI::App *app;
  std::function<int()> run;
};

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Speech corpus augmentation and lattice toolkit", "augkit"};
  app.require_subcommand(1);
  std::vector<Command> commands;
  std::uint64_t seed = kDefaultSeed;
  int workers = 1;
  const std::string seed_help =
      "Random seed (default " + std::to_string(kDefaultSeed) + ")";

  // speed
  {
    auto *sub = app.add_subcommand("speed", "Speed-perturb one WAV file");
    static double factor;
    static std::string in, out;
    sub->add_option("--factor", factor, "Speaking-rate multiplier in [0.5, 2]")
        ->required();
    sub->add_option("in", in, "Input WAV")->required();
    sub->add_option("out", out, "Output WAV")->required();
    commands.push_back({sub, [] {
                          std::size_t clipped = 0;
                          WriteWavFile(out, SpeedPerturb(ReadWavFile(in),
                                                         SpeedFactor(factor),
                                                         &clipped));
                          WarnClipped(clipped);
                          return kExitOk;
                        }});
  }

  // usp
  {
    auto *sub = app.add_subcommand(
        "usp", "Write the 0.9x and 1.1x utterance-level speed copies");
    static std::string outdir, in;
    sub->add_option("--outdir", outdir, "Output directory")->required();
    sub->add_option("in", in, "Input WAV")->required();
    commands.push_back({sub, [] {
                          std::size_t clipped = 0;
                          auto [slow, fast] = MakeUspCopies(ReadWavFile(in),
                                                            &clipped);
                          fs::create_directories(outdir);
                          const std::string stem = fs::path(in).stem().string();
                          WriteWavFile((fs::path(outdir) / (stem + ".sp0.9.wav"))
                                           .string(),
                                       slow);
                          WriteWavFile((fs::path(outdir) / (stem + ".sp1.1.wav"))
                                           .string(),
                                       fast);
                          WarnClipped(clipped);
                          return kExitOk;
                        }});
  }

  // wsp
  {
    auto *sub = app.add_subcommand(
        "wsp", "Word-level speed perturbation of one WAV file");
    static std::string ctm, in, out, out_ctm, utt;
    static double fraction = kWspFractionA, crossfade_ms = 0.0;
    sub->add_option("--ctm", ctm, "Word alignments")->required();
    sub->add_option("--fraction-fast", fraction,
                    "Fraction of words sped up to 1.1x; the rest get 0.9x")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sub->add_option("--seed", seed, seed_help);
    sub->add_option("--utt", utt,
                    "Utterance id in the CTM (default: the only id present, "
                    "else the input file stem)");
    sub->add_option("--crossfade-ms", crossfade_ms,
                    "Linear crossfade at word junctions")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sub->add_option("--out-ctm", out_ctm, "Write the time-scaled alignments");
    sub->add_option("in", in, "Input WAV")->required();
    sub->add_option("out", out, "Output WAV")->required();
    commands.push_back({sub, [&seed] {
                          auto groups = GroupByUtterance(ParseCtmFile(ctm));
                          std::string id = utt;
                          if (id.empty())
                            id = groups.size() == 1
                                     ? groups.begin()->first
                                     : fs::path(in).stem().string();
                          auto it = groups.find(id);
                          const std::vector<WordAlignment> words =
                              it == groups.end() ? std::vector<WordAlignment>{}
                                                 : it->second;
                          if (words.empty())
                            AUGKIT_WARN << "no CTM rows for utterance " << id;
                          const std::uint64_t s = WspPlanSeed(
                              UtteranceSeed(seed, id), fraction);
                          PerturbedUtterance p =
                              ApplyPlan(ReadWavFile(in), words,
                                        MakePlan(words, fraction, s),
                                        {crossfade_ms});
                          WriteWavFile(out, p.wave);
                          if (!out_ctm.empty())
                            WriteStringToFile(out_ctm, WriteCtm(p.words));
                          WarnClipped(p.clipped);
                          return kExitOk;
                        }});
  }

  // specaug
  {
    auto *sub = app.add_subcommand(
        "specaug", "Frequency and time masking of a feature archive");
    static SpecAugmentFlags flags;
    static std::string in, out;
    sub->add_option("--seed", seed, seed_help);
    flags.Add(sub);
    sub->add_option("in", in, "Input archive")->required();
    sub->add_option("out", out, "Output archive")->required();
    commands.push_back({sub, [&seed] {
                          FeatureList list =
                              ReadFeatureArchive(ReadFileToString(in));
                          for (auto &[id, mat] : list) {
                            SpecAugmentConfig cfg = flags.Config();
                            cfg.seed = SpecAugmentSeed(seed, id);
                            mat = SpecAugment(mat, cfg);
                          }
                          WriteStringToFile(out, WriteFeatureArchive(list));
                          return kExitOk;
                        }});
  }

  // mfcc
  {
    auto *sub = app.add_subcommand("mfcc", "Extract MFCC features");
    static std::string vtln_map, config, utt2spk_path, in, out;
    sub->add_option("--vtln-map", vtln_map, "Per-speaker warp factors");
    sub->add_option("--config", config, "Front-end settings, key=value lines");
    sub->add_option("--utt2spk", utt2spk_path,
                    "Speaker map for --vtln-map (default: speaker = utt id)");
    sub->add_option("--workers", workers, "Worker threads")
        ->check(CLI::PositiveNumber);
    sub->add_option("in", in, "wav.scp or a single WAV file")->required();
    sub->add_option("out", out, "Output archive")->required();
    commands.push_back({sub, [&workers] {
                          FrontendConfig fe;
                          VtlnConfig vtln_defaults;
                          if (!config.empty())
                            ApplyFrontendConfigFile(config, &fe,
                                                    &vtln_defaults);
                          fe.Validate();
                          std::map<std::string, std::string> scp;
                          if (HasWavExtension(in))
                            scp[fs::path(in).stem().string()] = in;
                          else
                            scp = ReadStringTable(in);
                          std::map<std::string, std::string> utt2spk;
                          if (!utt2spk_path.empty())
                            utt2spk = ReadStringTable(utt2spk_path);
                          std::map<std::string, double> warps;
                          if (!vtln_map.empty()) warps = ReadScalarTable(vtln_map);

                          std::vector<std::pair<std::string, std::string>>
                              items(scp.begin(), scp.end());
                          std::vector<std::optional<FeatureMatrix>> feats(
                              items.size());
                          std::vector<std::string> errors(items.size());
                          ParallelFor(items.size(), workers, [&](std::size_t i) {
                            const auto &[id, path] = items[i];
                            try {
                              const VtlnConfig *vp = nullptr;
                              VtlnConfig vtln = vtln_defaults;
                              if (!vtln_map.empty()) {
                                auto s = utt2spk.find(id);
                                const std::string spk =
                                    s == utt2spk.end() ? id : s->second;
                                auto w = warps.find(spk);
                                if (w == warps.end())
                                  AUGKIT_FAIL(kConfig)
                                      << "no warp factor for speaker " << spk;
                                vtln.warp = w->second;
                                vp = &vtln;
                              }
                              feats[i] = Mfcc(ReadWavFile(path), fe, vp);
                            } catch (const Error &e) {
                              errors[i] = e.what();
                            }
                          });
                          FeatureList list;
                          int status = kExitOk;
                          for (std::size_t i = 0; i < items.size(); ++i) {
                            if (feats[i]) {
                              list.emplace_back(items[i].first,
                                                std::move(*feats[i]));
                            } else {
                              std::cerr << "augkit: utterance " << items[i].first
                                        << ": " << errors[i] << "\n";
                              status = kExitFailure;
                            }
                          }
                          WriteStringToFile(out, WriteFeatureArchive(list));
                          return status;
                        }});
  }

  // cmvn
  {
    auto *sub = app.add_subcommand(
        "cmvn", "Mean and variance normalization of a feature archive");
    static std::string mode = "speaker", utt2spk_path, in, out;
    sub->add_option("--mode", mode, "Statistics grouping")
        ->check(CLI::IsMember({"speaker", "utterance"}))
        ->capture_default_str();
    sub->add_option("--utt2spk", utt2spk_path,
                    "Speaker map (default: speaker = utt id)");
    sub->add_option("in", in, "Input archive")->required();
    sub->add_option("out", out, "Output archive")->required();
    commands.push_back({sub, [] {
                          FeatureList list =
                              ReadFeatureArchive(ReadFileToString(in));
                          std::map<std::string, std::string> utt2spk;
                          if (!utt2spk_path.empty()) {
                            utt2spk = ReadStringTable(utt2spk_path);
                          } else {
                            for (const auto &[id, m] : list) utt2spk[id] = id;
                          }
                          WriteStringToFile(
                              out, WriteFeatureArchive(
                                       Cmvn(list, utt2spk, ParseCmvnMode(mode))));
                          return kExitOk;
                        }});
  }

  // cleanse
  {
    auto *sub = app.add_subcommand(
        "cleanse", "Keep utterances with high average word confidence");
    static std::string ctm, in, out;
    static double min_conf = kDefaultMinAvgConfidence;
    static std::size_t min_words = 0;
    sub->add_option("--ctm", ctm, "Word alignments with confidences")
        ->required();
    sub->add_option("--min-conf", min_conf, "Minimum mean word confidence")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sub->add_option("--min-words", min_words, "Minimum aligned word count")
        ->capture_default_str();
    sub->add_option("in", in, "Input data directory")->required();
    sub->add_option("out", out, "Output data directory")->required();
    commands.push_back({sub, [] {
                          CleanseStats stats;
                          Manifest m = Cleanse(ParseDataDir(in),
                                               ParseCtmFile(ctm), min_conf,
                                               min_words, &stats);
                          fs::create_directories(out);
                          WriteDataDir(m, out);
                          std::cerr << "augkit cleanse: kept " << stats.kept
                                    << ", dropped "
                                    << stats.dropped_low_confidence
                                    << " low-confidence, "
                                    << stats.dropped_few_words
                                    << " short, " << stats.dropped_unaligned
                                    << " unaligned\n";
                          return kExitOk;
                        }});
  }

  // expand
  {
    auto *sub = app.add_subcommand(
        "expand", "Add speed-perturbed copies of every utterance");
    static std::string ctm, outdir, summary_path, in;
    static bool no_usp = false, no_wsp = false;
    static double crossfade_ms = 0.0;
    static std::optional<double> cleanse_conf;
    static std::size_t cleanse_words = 0;
    sub->add_option("--ctm", ctm, "Word alignments (needed for word level)");
    sub->add_flag("--no-usp", no_usp, "Skip the utterance-level copies");
    sub->add_flag("--no-wsp", no_wsp, "Skip the word-level copies");
    sub->add_option("--seed", seed, seed_help);
    sub->add_option("--outdir", outdir, "Output directory")->required();
    sub->add_option("--workers", workers, "Worker threads")
        ->check(CLI::PositiveNumber);
    sub->add_option("--summary", summary_path, "Write a JSON run report");
    sub->add_option("--crossfade-ms", crossfade_ms,
                    "Linear crossfade at word junctions")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--cleanse-min-conf", cleanse_conf,
                    "Cleanse by mean confidence first");
    sub->add_option("--cleanse-min-words", cleanse_words,
                    "Minimum word count when cleansing");
    sub->add_option("datadir", in, "Input data directory")->required();
    commands.push_back({sub, [&seed, &workers] {
                          if (!no_wsp && ctm.empty())
                            throw UsageError{
                                "word-level copies need --ctm (or --no-wsp)"};
                          if (cleanse_conf && ctm.empty())
                            throw UsageError{"cleansing needs --ctm"};
                          PipelineConfig cfg;
                          cfg.global_seed = seed;
                          cfg.enable_usp = !no_usp;
                          cfg.enable_wsp = !no_wsp;
                          cfg.wsp_options.crossfade_ms = crossfade_ms;
                          cfg.workers = workers;
                          if (cleanse_conf)
                            cfg.cleanse = CleanseOptions{*cleanse_conf,
                                                         cleanse_words};
                          std::vector<WordAlignment> ali;
                          if (!ctm.empty()) ali = ParseCtmFile(ctm);
                          RunSummary summary;
                          ExpandCorpus(ParseDataDir(in), ali, cfg, outdir,
                                       &summary);
                          WriteSummary(summary_path, summary);
                          ReportErrors(summary);
                          WarnClipped(summary.clipped_samples);
                          return summary.errors.empty() ? kExitOk
                                                        : kExitFailure;
                        }});
  }

  // featurize
  {
    auto *sub = app.add_subcommand(
        "featurize", "MFCC, CMVN and optional SpecAugment for a corpus");
    static bool specaug = false;
    static SpecAugmentFlags flags;
    static std::string vtln_map, cmvn = "speaker", config, summary_path, in,
                                  out;
    sub->add_flag("--specaug", specaug, "Apply SpecAugment after CMVN");
    flags.Add(sub);
    sub->add_option("--vtln-map", vtln_map, "Per-speaker warp factors");
    sub->add_option("--cmvn", cmvn, "CMVN grouping")
        ->check(CLI::IsMember({"speaker", "utterance"}))
        ->capture_default_str();
    sub->add_option("--config", config, "Front-end settings, key=value lines");
    sub->add_option("--seed", seed, seed_help);
    sub->add_option("--workers", workers, "Worker threads")
        ->check(CLI::PositiveNumber);
    sub->add_option("--summary", summary_path, "Write a JSON run report");
    sub->add_option("datadir", in, "Input data directory")->required();
    sub->add_option("out", out, "Output archive")->required();
    commands.push_back({sub, [&seed, &workers] {
                          PipelineConfig cfg;
                          cfg.global_seed = seed;
                          cfg.workers = workers;
                          cfg.cmvn_mode = ParseCmvnMode(cmvn);
                          if (specaug) cfg.specaugment = flags.Config();
                          if (!vtln_map.empty()) cfg.vtln_map = vtln_map;
                          if (!config.empty())
                            ApplyFrontendConfigFile(config, &cfg.frontend,
                                                    &cfg.vtln);
                          RunSummary summary;
                          FeatureList list =
                              FeaturizeCorpus(ParseDataDir(in), cfg, &summary);
                          WriteStringToFile(out, WriteFeatureArchive(list));
                          WriteSummary(summary_path, summary);
                          ReportErrors(summary);
                          return summary.errors.empty() ? kExitOk
                                                        : kExitFailure;
                        }});
  }

  // lat-union
  {
    auto *sub = app.add_subcommand(
        "lat-union", "Merge lattices into one with prior-weighted branches");
    static std::string priors;
    static std::vector<std::string> inputs;
    static std::string out, id;
    sub->add_option("--priors", priors, "Comma-separated priors summing to 1");
    sub->add_option("--id", id, "Id of the merged lattice");
    sub->add_option("-o,--output", out, "Output lattice file")->required();
    sub->add_option("inputs", inputs, "Input lattice files")->required();
    commands.push_back({sub, [] {
                          std::vector<std::vector<Lattice>> files;
                          bool all_single = true;
                          for (const std::string &path : inputs) {
                            files.push_back(ReadLatticeFile(path));
                            all_single = all_single && files.back().size() == 1;
                          }
                          std::optional<std::vector<double>> p;
                          if (!priors.empty()) {
                            p.emplace();
                            std::stringstream ss(priors);
                            for (std::string tok; std::getline(ss, tok, ',');) {
                              double v;
                              if (!ParseDouble(tok, &v))
                                throw UsageError{"bad prior '" + tok + "'"};
                              p->push_back(v);
                            }
                          }
                          std::vector<Lattice> merged;
                          if (all_single) {
                            std::vector<Lattice> parts;
                            for (auto &f : files) parts.push_back(f.front());
                            merged.push_back(Union(parts, p, id));
                          } else {
                            // Several lattices per file: merge by id across
                            // files.
                            std::map<std::string, std::vector<Lattice>> by_id;
                            for (std::size_t k = 0; k < files.size(); ++k)
                              for (Lattice &l : files[k]) {
                                auto &parts = by_id[l.id];
                                if (parts.size() != k)
                                  AUGKIT_FAIL(kPrecondition)
                                      << "lattice " << l.id
                                      << " is missing or repeated in "
                                      << inputs[k];
                                parts.push_back(std::move(l));
                              }
                            for (auto &[lid, parts] : by_id) {
                              if (parts.size() != files.size())
                                AUGKIT_FAIL(kPrecondition)
                                    << "lattice " << lid
                                    << " is not present in every input";
                              merged.push_back(Union(parts, p, lid));
                            }
                          }
                          WriteStringToFile(out, WriteLattices(merged));
                          return kExitOk;
                        }});
  }

  // nbest
  {
    auto *sub = app.add_subcommand("nbest", "List the n best word sequences");
    static std::size_t n = 10;
    static double scale = kDefaultAcousticScale, lm_weight = 0.0,
                  orig_weight = 1.0;
    static std::string lm_scores, in;
    sub->add_option("--n", n, "Number of hypotheses")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--acoustic-scale", scale, "Acoustic cost weight")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--lm-scores", lm_scores,
                    "Rescore with '<logprob> <words...>' lines");
    sub->add_option("--lm-weight", lm_weight, "Weight of the external score")
        ->capture_default_str();
    sub->add_option("--original-lm-weight", orig_weight,
                    "Weight of the lattice graph cost")
        ->capture_default_str();
    sub->add_option("in", in, "Lattice file")->required();
    commands.push_back({sub, [] {
                          std::map<WordSequence, double> scores;
                          if (!lm_scores.empty()) {
                            std::istringstream s(ReadFileToString(lm_scores));
                            std::string line;
                            for (std::size_t no = 1; std::getline(s, line);
                                 ++no) {
                              std::vector<std::string> f = SplitFields(line);
                              if (f.empty()) continue;
                              double v;
                              if (!ParseDouble(f[0], &v))
                                AUGKIT_FAIL(kParse)
                                    << lm_scores << " line " << no
                                    << ": bad score '" << f[0] << "'";
                              scores[WordSequence(f.begin() + 1, f.end())] = v;
                            }
                          }
                          for (const Lattice &lat : ReadLatticeFile(in)) {
                            std::vector<Hypothesis> hyps = NBest(lat, n, scale);
                            if (!lm_scores.empty())
                              hyps = RescoreNBest(hyps, scores, lm_weight,
                                                  orig_weight);
                            for (std::size_t r = 0; r < hyps.size(); ++r) {
                              const Hypothesis &h = hyps[r];
                              std::cout << lat.id << ' ' << r + 1 << ' '
                                        << FormatShortest(h.combined_cost)
                                        << ' '
                                        << FormatShortest(h.total_graph_cost)
                                        << ' '
                                        << FormatShortest(h.total_acoustic_cost);
                              if (!h.words.empty())
                                std::cout << ' ' << JoinWords(h.words);
                              std::cout << '\n';
                            }
                          }
                          return kExitOk;
                        }});
  }

  // mbr
  {
    auto *sub = app.add_subcommand("mbr", "Minimum Bayes risk decoding");
    static std::size_t n = kDefaultMbrCandidates;
    static double scale = kDefaultAcousticScale;
    static std::string in;
    sub->add_option("--n", n, "Candidate list size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--acoustic-scale", scale, "Acoustic cost weight")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("in", in, "Lattice file")->required();
    commands.push_back({sub, [] {
                          for (const Lattice &lat : ReadLatticeFile(in)) {
                            MbrResult r = MbrDecode(lat, n, scale);
                            std::cout << lat.id;
                            if (!r.best.words.empty())
                              std::cout << ' ' << JoinWords(r.best.words);
                            std::cout << '\n';
                          }
                          return kExitOk;
                        }});
  }

  // mmi
  {
    auto *sub = app.add_subcommand(
        "mmi", "MMI objective over an enumerated hypothesis set");
    static double k = 1.0;
    static std::string in;
    sub->add_option("--k", k, "Acoustic weighting factor")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("scores", in,
                    "Rows 'label acoustic_loglik lm_logprob'; first row is "
                    "the numerator")
        ->required();
    commands.push_back({sub, [] {
                          std::vector<ScoredHypothesis> rows =
                              ParseScoredHypotheses(ReadFileToString(in));
                          if (rows.empty())
                            AUGKIT_FAIL(kParse) << in << ": no hypotheses";
                          std::cout << FormatShortest(
                                           MmiObjective(rows.front(), rows, k))
                                    << '\n';
                          return kExitOk;
                        }});
  }

  // rnnlm-obj
  {
    auto *sub = app.add_subcommand(
        "rnnlm-obj", "Unnormalized softmax objective for one word position");
    static std::size_t target = 0;
    static std::string in;
    sub->add_option("--target", target, "Index of the target word")
        ->required();
    sub->add_option("logits", in, "Whitespace-separated logits")->required();
    commands.push_back({sub, [] {
                          LogitVector v;
                          v.target = target;
                          for (const std::string &t :
                               SplitFields(ReadFileToString(in))) {
                            double z;
                            if (!ParseDouble(t, &z))
                              AUGKIT_FAIL(kParse)
                                  << in << ": bad logit '" << t << "'";
                            v.logits.push_back(z);
                          }
                          std::cout << FormatShortest(RnnlmObjective(v))
                                    << '\n';
                          return kExitOk;
                        }});
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "augkit: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  for (const Command &c : commands) {
    if (!c.app->parsed()) continue;
    try {
      return c.run();
    } catch (const UsageError &e) {
      std::cerr << "augkit " << c.app->get_name() << ": " << e.message
                << "\n\n"
                << c.app->help();
      return kExitUsage;
    } catch (const Error &e) {
      std::cerr << "augkit " << c.app->get_name() << ": ERROR: " << e.what()
                << "\n";
      return kExitFailure;
    } catch (const std::exception &e) {
      std::cerr << "augkit " << c.app->get_name() << ": ERROR: " << e.what()
                << "\n";
      return kExitFailure;
    }
  }
  return kExitUsage;
}
