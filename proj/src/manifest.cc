// src/manifest.cc

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

#include "augkit/manifest.h"

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

#include "augkit/common.h"

namespace augkit {

namespace {

namespace fs = std::filesystem;

struct Line {
  std::size_t number;  // 1-based
  std::string text;
};

std::vector<Line> NonEmptyLines(std::string_view contents) {
  std::vector<Line> lines;
  std::size_t number = 0, pos = 0;
  while (pos <= contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    ++number;
    std::string_view line = contents.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") != std::string_view::npos)
      lines.push_back({number, std::string(line)});
    if (nl == contents.size()) break;
    pos = nl + 1;
  }
  return lines;
}

std::string Trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double ParseTime(const std::string &token, const std::string &file,
                 std::size_t line) {
  double v;
  if (!ParseDouble(token, &v) || !std::isfinite(v))
    AUGKIT_FAIL(kParse) << file << ":" << line << ": bad time value '" << token
                        << "'";
  return v;
}

template <typename Map>
void CheckUnique(const Map &map, const std::string &key,
                 const std::string &file, std::size_t line) {
  if (map.count(key) != 0)
    AUGKIT_FAIL(kDuplicateId) << "duplicate id '" << key << "' in " << file
                              << " at line " << line;
}

bool IsUtterance(const Manifest &m, const std::string &id) {
  return m.segmented() ? m.segments.count(id) != 0
                       : m.recordings.count(id) != 0;
}

std::string SpeakerOf(const Manifest &m, const std::string &utt) {
  auto it = m.utt2spk.find(utt);
  return it == m.utt2spk.end() ? utt : it->second;
}

}  // namespace

std::vector<std::string> UtteranceIds(const Manifest &manifest) {
  std::vector<std::string> ids;
  if (manifest.segmented()) {
    for (const auto &[utt, seg] : manifest.segments) ids.push_back(utt);
  } else {
    for (const auto &[rec, path] : manifest.recordings) ids.push_back(rec);
  }
  return ids;
}

std::vector<Utterance> ListUtterances(const Manifest &manifest) {
  std::vector<Utterance> out;
  if (manifest.segmented()) {
    for (const auto &[utt, seg] : manifest.segments) {
      auto rec = manifest.recordings.find(seg.recording_id);
      if (rec == manifest.recordings.end())
        AUGKIT_FAIL(kDanglingReference)
            << "dangling reference: segment " << utt
            << " names unknown recording " << seg.recording_id;
      out.push_back({utt, seg.recording_id, rec->second, seg.start, seg.end,
                     SpeakerOf(manifest, utt)});
    }
  } else {
    for (const auto &[rec, path] : manifest.recordings)
      out.push_back({rec, rec, path, 0.0, -1.0, SpeakerOf(manifest, rec)});
  }
  return out;
}

void ValidateManifest(const Manifest &m) {
  for (const auto &[utt, seg] : m.segments) {
    if (seg.utt_id != utt)
      AUGKIT_FAIL(kPrecondition) << "segment keyed '" << utt
                                 << "' carries utt_id '" << seg.utt_id << "'";
    if (m.recordings.count(seg.recording_id) == 0)
      AUGKIT_FAIL(kDanglingReference)
          << "dangling reference: segment " << utt
          << " names unknown recording " << seg.recording_id;
    if (!(seg.start >= 0.0) || !(seg.end > seg.start))
      AUGKIT_FAIL(kRange) << "segment " << utt << " has invalid span ["
                          << seg.start << ", " << seg.end << "]";
  }
  for (const auto &[utt, words] : m.transcripts)
    if (!IsUtterance(m, utt))
      AUGKIT_FAIL(kDanglingReference)
          << "dangling reference: transcript for unknown utterance " << utt;
  for (const auto &[utt, spk] : m.utt2spk)
    if (!IsUtterance(m, utt))
      AUGKIT_FAIL(kDanglingReference)
          << "dangling reference: utt2spk entry for unknown utterance " << utt;
}

Manifest ParseDataDir(const std::string &root) {
  const fs::path dir(root);
  auto read_required = [&](const char *name) {
    fs::path p = dir / name;
    if (!fs::is_regular_file(p))
      AUGKIT_FAIL(kMissingFile) << "missing file: " << p.string();
    return ReadFileToString(p.string());
  };
  auto read_optional = [&](const char *name) -> std::optional<std::string> {
    fs::path p = dir / name;
    if (!fs::exists(p)) return std::nullopt;
    return ReadFileToString(p.string());
  };

  Manifest m;
  for (const Line &line : NonEmptyLines(read_required("wav.scp"))) {
    std::string text = Trim(line.text);
    std::size_t sp = text.find_first_of(" \t");
    if (sp == std::string::npos)
      AUGKIT_FAIL(kParse) << "wav.scp:" << line.number
                          << ": expected '<recording-id> <path>'";
    std::string key = text.substr(0, sp);
    std::string path = Trim(std::string_view(text).substr(sp));
    if (!path.empty() && path.back() == '|')
      AUGKIT_FAIL(kFormat) << "wav.scp:" << line.number
                           << ": piped commands are not supported";
    CheckUnique(m.recordings, key, "wav.scp", line.number);
    m.recordings.emplace(key, path);
  }

  if (auto seg_text = read_optional("segments")) {
    for (const Line &line : NonEmptyLines(*seg_text)) {
      std::vector<std::string> f = SplitFields(line.text);
      if (f.size() != 4)
        AUGKIT_FAIL(kParse) << "segments:" << line.number
                            << ": expected '<utt-id> <recording-id> <start> <end>'";
      CheckUnique(m.segments, f[0], "segments", line.number);
      if (m.recordings.count(f[1]) == 0)
        AUGKIT_FAIL(kDanglingReference)
            << "dangling reference: segments:" << line.number << ": utterance "
            << f[0] << " names unknown recording " << f[1];
      Segment seg{f[0], f[1], ParseTime(f[2], "segments", line.number),
                  ParseTime(f[3], "segments", line.number), f[0]};
      if (!(seg.start >= 0.0) || !(seg.end > seg.start))
        AUGKIT_FAIL(kRange) << "segments:" << line.number
                            << ": need 0 <= start < end";
      m.segments.emplace(f[0], std::move(seg));
    }
  }

  for (const Line &line : NonEmptyLines(read_required("text"))) {
    std::vector<std::string> f = SplitFields(line.text);
    CheckUnique(m.transcripts, f[0], "text", line.number);
    if (!IsUtterance(m, f[0]))
      AUGKIT_FAIL(kDanglingReference)
          << "dangling reference: text:" << line.number
          << ": unknown utterance " << f[0];
    m.transcripts.emplace(f[0],
                          std::vector<std::string>(f.begin() + 1, f.end()));
  }

  if (auto spk_text = read_optional("utt2spk")) {
    for (const Line &line : NonEmptyLines(*spk_text)) {
      std::vector<std::string> f = SplitFields(line.text);
      if (f.size() != 2)
        AUGKIT_FAIL(kParse) << "utt2spk:" << line.number
                            << ": expected '<utt-id> <speaker-id>'";
      CheckUnique(m.utt2spk, f[0], "utt2spk", line.number);
      if (!IsUtterance(m, f[0]))
        AUGKIT_FAIL(kDanglingReference)
            << "dangling reference: utt2spk:" << line.number
            << ": unknown utterance " << f[0];
      m.utt2spk.emplace(f[0], f[1]);
    }
  }
  for (const std::string &utt : UtteranceIds(m)) m.utt2spk.try_emplace(utt, utt);
  for (auto &[utt, seg] : m.segments) seg.speaker_id = m.utt2spk.at(utt);
  return m;
}

void WriteDataDir(const Manifest &m, const std::string &root) {
  ValidateManifest(m);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) AUGKIT_FAIL(kIo) << "cannot create directory " << root << ": "
                           << ec.message();
  const fs::path dir(root);

  std::ostringstream wav, seg, text, spk;
  for (const auto &[rec, path] : m.recordings) wav << rec << ' ' << path << '\n';
  for (const auto &[utt, s] : m.segments)
    seg << utt << ' ' << s.recording_id << ' ' << FormatCentiseconds(s.start)
        << ' ' << FormatCentiseconds(s.end) << '\n';
  for (const auto &[utt, words] : m.transcripts) {
    text << utt;
    for (const auto &w : words) text << ' ' << w;
    text << '\n';
  }
  for (const auto &[utt, s] : m.utt2spk) spk << utt << ' ' << s << '\n';

  WriteStringToFile((dir / "wav.scp").string(), wav.str());
  WriteStringToFile((dir / "text").string(), text.str());
  WriteStringToFile((dir / "utt2spk").string(), spk.str());
  if (m.segmented()) {
    WriteStringToFile((dir / "segments").string(), seg.str());
  } else if (fs::exists(dir / "segments")) {
    fs::remove(dir / "segments", ec);
  }
}

std::vector<WordAlignment> ParseCtm(std::string_view text) {
  std::vector<WordAlignment> rows;
  for (const Line &line : NonEmptyLines(text)) {
    std::vector<std::string> f = SplitFields(line.text);
    if (f.size() != 5 && f.size() != 6)
      AUGKIT_FAIL(kParse) << "ctm line " << line.number
                          << ": expected 5 or 6 fields, found " << f.size();
    WordAlignment row;
    row.utt_id = f[0];
    if (!ParseDouble(f[2], &row.start) || !std::isfinite(row.start))
      AUGKIT_FAIL(kParse) << "ctm line " << line.number
                          << ": non-numeric start '" << f[2] << "'";
    if (!ParseDouble(f[3], &row.duration) || !std::isfinite(row.duration))
      AUGKIT_FAIL(kParse) << "ctm line " << line.number
                          << ": non-numeric duration '" << f[3] << "'";
    if (row.start < 0.0)
      AUGKIT_FAIL(kRange) << "ctm line " << line.number << ": negative start";
    if (!(row.duration > 0.0))
      AUGKIT_FAIL(kRange) << "ctm line " << line.number
                          << ": duration must be positive";
    row.word = f[4];
    if (f.size() == 6) {
      double conf;
      if (!ParseDouble(f[5], &conf))
        AUGKIT_FAIL(kParse) << "ctm line " << line.number
                            << ": non-numeric confidence '" << f[5] << "'";
      if (!(conf >= 0.0 && conf <= 1.0))
        AUGKIT_FAIL(kRange) << "ctm line " << line.number << ": confidence "
                            << conf << " outside [0,1]";
      row.confidence = conf;
    }
    rows.push_back(std::move(row));
  }
  for (const auto &[utt, group] : GroupByUtterance(rows))
    for (std::size_t i = 1; i < group.size(); ++i)
      if (group[i].start < group[i - 1].end() - kOverlapTolerance)
        AUGKIT_FAIL(kOverlap) << "overlap: words '" << group[i - 1].word
                              << "' and '" << group[i].word
                              << "' overlap in utterance " << utt;
  return rows;
}

std::vector<WordAlignment> ParseCtmFile(const std::string &path) {
  std::string contents = ReadFileToString(path);
  try {
    return ParseCtm(contents);
  } catch (const Error &e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

std::string WriteCtm(const std::vector<WordAlignment> &rows) {
  std::ostringstream out;
  for (const WordAlignment &r : rows) {
    std::int64_t s = RoundToInt64(r.start * 100.0);
    std::int64_t e = RoundToInt64(r.end() * 100.0);
    if (e <= s) e = s + 1;
    out << r.utt_id << " 1 " << FormatCentiseconds(s / 100.0) << ' '
        << FormatCentiseconds(static_cast<double>(e - s) / 100.0) << ' '
        << r.word;
    if (r.confidence) out << ' ' << FormatShortest(*r.confidence);
    out << '\n';
  }
  return out.str();
}

std::map<std::string, std::vector<WordAlignment>> GroupByUtterance(
    const std::vector<WordAlignment> &rows) {
  std::map<std::string, std::vector<WordAlignment>> groups;
  for (const WordAlignment &r : rows) groups[r.utt_id].push_back(r);
  for (auto &[utt, group] : groups)
    std::stable_sort(group.begin(), group.end(),
                     [](const WordAlignment &a, const WordAlignment &b) {
                       return a.start < b.start;
                     });
  return groups;
}

Manifest Cleanse(const Manifest &manifest,
                 const std::vector<WordAlignment> &alignments,
                 double min_avg_conf, std::size_t min_words,
                 CleanseStats *stats) {
  if (!(min_avg_conf >= 0.0 && min_avg_conf <= 1.0))
    AUGKIT_FAIL(kRange) << "min_avg_conf " << min_avg_conf
                        << " outside [0,1]";
  ValidateManifest(manifest);
  CleanseStats local;
  auto groups = GroupByUtterance(alignments);

  std::set<std::string> keep;
  for (const std::string &utt : UtteranceIds(manifest)) {
    auto it = groups.find(utt);
    if (it == groups.end()) {
      AUGKIT_WARN << "cleanse: utterance " << utt
                  << " has no alignments; dropping it";
      ++local.dropped_unaligned;
      continue;
    }
    double sum = 0.0;
    for (const WordAlignment &w : it->second) {
      if (!w.confidence)
        AUGKIT_FAIL(kConfidenceRequired)
            << "confidence required: word '" << w.word << "' of utterance "
            << utt << " has no confidence";
      sum += *w.confidence;
    }
    const std::size_t n = it->second.size();
    const double mean = sum / static_cast<double>(n);
    if (n < min_words) {
      ++local.dropped_few_words;
    } else if (!(mean >= min_avg_conf)) {
      ++local.dropped_low_confidence;
    } else {
      keep.insert(utt);
    }
  }
  local.kept = keep.size();

  Manifest out;
  if (manifest.segmented()) {
    for (const auto &[utt, seg] : manifest.segments) {
      if (!keep.count(utt)) continue;
      out.segments.emplace(utt, seg);
      out.recordings.emplace(seg.recording_id,
                             manifest.recordings.at(seg.recording_id));
    }
  } else {
    for (const auto &[rec, path] : manifest.recordings)
      if (keep.count(rec)) out.recordings.emplace(rec, path);
  }
  for (const auto &[utt, words] : manifest.transcripts)
    if (keep.count(utt)) out.transcripts.emplace(utt, words);
  for (const auto &[utt, spk] : manifest.utt2spk)
    if (keep.count(utt)) out.utt2spk.emplace(utt, spk);
  if (stats != nullptr) *stats = local;
  return out;
}

}  // namespace augkit
