// vtlkws/dataset.hpp

// Copyright 2026  vtlkws authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef VTLKWS_DATASET_HPP_
#define VTLKWS_DATASET_HPP_

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vtlkws/wav.hpp"

namespace vtlkws {

struct KeywordLabel {
  int index = -1;
  std::string name;
};

// One canonicalized utterance. `id` is the path relative to the corpus root,
// e.g. "yes/0a7c2a8d_nohash_0.wav".
struct Utterance {
  std::string id;
  std::vector<float> samples;
  int sample_rate = 0;
  KeywordLabel label;
};

struct SplitManifest {
  std::set<std::string> train;
  std::set<std::string> eval;
};

enum class Split { kTrain, kEval };

// Newline-delimited relative paths, the Speech-Commands list format.
// Blank lines are ignored; backslashes are normalized to '/'.
inline std::vector<std::string> read_id_list(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open list file: " + path.string());
  }
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), '\\', '/');
    ids.push_back(line);
  }
  return ids;
}

inline void write_id_list(const std::filesystem::path& path,
                          const std::vector<std::string>& ids) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write list file: " + path.string());
  }
  for (const auto& id : ids) out << id << "\n";
}

inline SplitManifest load_manifest(const std::filesystem::path& train_list,
                                   const std::filesystem::path& eval_list) {
  SplitManifest m;
  for (auto& id : read_id_list(train_list)) m.train.insert(std::move(id));
  for (auto& id : read_id_list(eval_list)) m.eval.insert(std::move(id));
  for (const auto& id : m.eval) {
    if (m.train.count(id)) {
      throw std::runtime_error("manifest splits overlap on id: " + id);
    }
  }
  return m;
}

// Zero-pads short signals symmetrically (odd extra sample goes right) and
// center-crops long ones.
inline Utterance canonicalize_length(Utterance u, std::size_t target_samples) {
  if (target_samples == 0) {
    throw std::invalid_argument("canonicalize_length: target must be > 0");
  }
  const std::size_t n = u.samples.size();
  if (n == target_samples) return u;
  std::vector<float> out(target_samples, 0.0f);
  if (n < target_samples) {
    const std::size_t pad = target_samples - n;
    const std::size_t left = pad / 2;
    std::copy(u.samples.begin(), u.samples.end(), out.begin() + left);
  } else {
    const std::size_t crop = (n - target_samples) / 2;
    std::copy(u.samples.begin() + crop,
              u.samples.begin() + crop + target_samples, out.begin());
  }
  u.samples = std::move(out);
  return u;
}

struct CorpusEntry {
  std::string id;
  std::filesystem::path path;
  KeywordLabel label;
  Split split = Split::kTrain;
};

struct CorpusOptions {
  int expected_sample_rate = 16000;
  double clip_seconds = 1.0;
  bool skip_bad = false;  // corrupt WAVs are logged and skipped instead of fatal
};

// Labeled view of a Speech-Commands-style directory tree. Entries are
// enumerated eagerly; waveforms are read on demand (the full corpus does not
// fit comfortably in memory). Utterance values are immutable once returned
// and safe to hand to parallel feature workers.
class Corpus {
 public:
  Corpus(std::filesystem::path root, std::vector<CorpusEntry> entries,
         std::vector<std::string> class_names, CorpusOptions options)
      : root_(std::move(root)),
        entries_(std::move(entries)),
        class_names_(std::move(class_names)),
        options_(options) {
    for (const auto& e : entries_) {
      (e.split == Split::kTrain ? train_indices_ : eval_indices_)
          .push_back(static_cast<int>(&e - entries_.data()));
    }
  }

  const std::vector<CorpusEntry>& entries() const { return entries_; }
  const std::vector<int>& train_indices() const { return train_indices_; }
  const std::vector<int>& eval_indices() const { return eval_indices_; }
  const std::vector<std::string>& class_names() const { return class_names_; }
  int num_classes() const { return static_cast<int>(class_names_.size()); }
  const CorpusOptions& options() const { return options_; }

  std::size_t target_samples() const {
    return static_cast<std::size_t>(options_.expected_sample_rate *
                                    options_.clip_seconds +
                                    0.5);
  }

  // Reads, validates and canonicalizes one utterance. Throws on corrupt
  // files unless skip_bad is set, in which case returns nullopt after
  // logging the offending id.
  std::optional<Utterance> load(int index) const {
    const CorpusEntry& e = entries_.at(static_cast<std::size_t>(index));
    try {
      WavData w = read_wav(e.path);
      if (w.sample_rate != options_.expected_sample_rate) {
        throw std::runtime_error("sample rate " +
                                 std::to_string(w.sample_rate) + " != " +
                                 std::to_string(options_.expected_sample_rate));
      }
      if (w.samples.empty()) {
        throw std::runtime_error("empty audio");
      }
      Utterance u;
      u.id = e.id;
      u.samples = std::move(w.samples);
      u.sample_rate = w.sample_rate;
      u.label = e.label;
      return canonicalize_length(std::move(u), target_samples());
    } catch (const std::exception& ex) {
      if (options_.skip_bad) {
        std::cerr << "warning: skipping bad file " << e.id << ": " << ex.what()
                  << "\n";
        return std::nullopt;
      }
      throw std::runtime_error("bad file " + e.id + ": " + ex.what());
    }
  }

 private:
  std::filesystem::path root_;
  std::vector<CorpusEntry> entries_;
  std::vector<std::string> class_names_;
  std::vector<int> train_indices_;
  std::vector<int> eval_indices_;
  CorpusOptions options_;
};

// Enumerates `<root>/<keyword>/<file>.wav` and applies the manifest. The
// class set is the sorted set of keyword directories referenced by the
// manifest, so label indices are stable across runs. Directories starting
// with '_' (e.g. _background_noise_) are never keywords.
inline Corpus load_corpus(const std::filesystem::path& root,
                          const SplitManifest& manifest,
                          CorpusOptions options = {}) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) {
    throw std::runtime_error("corpus root is not a directory: " +
                             root.string());
  }

  std::set<std::string> keyword_dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    const std::string name = entry.path().filename().string();
    if (name.empty() || name[0] == '_' || name[0] == '.') continue;
    keyword_dirs.insert(name);
  }
  if (keyword_dirs.empty()) {
    throw std::runtime_error("no keyword directories found under " +
                             root.string());
  }

  auto keyword_of = [](const std::string& id) -> std::string {
    const auto slash = id.find('/');
    if (slash == std::string::npos || slash == 0) {
      throw std::runtime_error("manifest id is not <keyword>/<file>: " + id);
    }
    return id.substr(0, slash);
  };

  // Class set = keywords referenced by the manifest, sorted.
  std::set<std::string> classes;
  for (const auto* split : {&manifest.train, &manifest.eval}) {
    for (const auto& id : *split) {
      const std::string kw = keyword_of(id);
      if (!keyword_dirs.count(kw)) {
        throw std::runtime_error("manifest references unknown keyword '" + kw +
                                 "' (id " + id + ")");
      }
      classes.insert(kw);
    }
  }
  std::vector<std::string> class_names(classes.begin(), classes.end());
  std::map<std::string, int> class_index;
  for (std::size_t i = 0; i < class_names.size(); ++i) {
    class_index[class_names[i]] = static_cast<int>(i);
  }

  std::vector<CorpusEntry> entries;
  auto add = [&](const std::string& id, Split split) {
    const fs::path p = root / id;
    if (!fs::is_regular_file(p)) {
      throw std::runtime_error("manifest id does not resolve to a file: " +
                               id);
    }
    CorpusEntry e;
    e.id = id;
    e.path = p;
    const std::string kw = keyword_of(id);
    e.label = {class_index.at(kw), kw};
    e.split = split;
    entries.push_back(std::move(e));
  };
  for (const auto& id : manifest.train) add(id, Split::kTrain);
  for (const auto& id : manifest.eval) add(id, Split::kEval);

  return Corpus(root, std::move(entries), std::move(class_names), options);
}

// Builds train/eval id lists from a corpus directory plus the official
// testing/validation list files. Train = everything not listed, minus the
// validation list unless fold_validation is set. An optional keyword filter
// restricts the split to a subset of classes.
struct ManifestBuild {
  std::vector<std::string> train;
  std::vector<std::string> eval;
  std::size_t dropped_validation = 0;
};

inline ManifestBuild build_manifest(
    const std::filesystem::path& root,
    const std::vector<std::string>& testing_ids,
    const std::vector<std::string>& validation_ids, bool fold_validation,
    const std::set<std::string>& keyword_filter = {}) {
  namespace fs = std::filesystem;
  std::set<std::string> testing(testing_ids.begin(), testing_ids.end());
  std::set<std::string> validation(validation_ids.begin(),
                                   validation_ids.end());

  auto keep = [&](const std::string& kw) {
    return keyword_filter.empty() || keyword_filter.count(kw) > 0;
  };

  ManifestBuild out;
  std::vector<std::string> dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    const std::string name = entry.path().filename().string();
    if (name.empty() || name[0] == '_' || name[0] == '.') continue;
    dirs.push_back(name);
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& kw : dirs) {
    if (!keep(kw)) continue;
    std::vector<std::string> files;
    for (const auto& f : fs::directory_iterator(root / kw)) {
      if (f.is_regular_file() && f.path().extension() == ".wav") {
        files.push_back(kw + "/" + f.path().filename().string());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& id : files) {
      if (testing.count(id)) {
        out.eval.push_back(id);
      } else if (validation.count(id) && !fold_validation) {
        ++out.dropped_validation;
      } else {
        out.train.push_back(id);
      }
    }
  }
  return out;
}

}  // namespace vtlkws

#endif  // VTLKWS_DATASET_HPP_
