#ifndef GRLADAPT_DATASET_HPP_
#define GRLADAPT_DATASET_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "grladapt/matrix.hpp"
#include "grladapt/rng.hpp"

namespace grladapt {

enum class Domain { source, target };

const char* to_string(Domain d);
Domain domain_from_string(const std::string& s);

struct UtteranceSpan {
  std::string id;
  Index first_row = 0;
  Index rows = 0;
};

// A frame-classification dataset: one row per frame. Labels are optional;
// target-domain data fed to adaptation must have none (enforced there).
// Utterance spans partition the rows and are the unit of subsetting.
struct FrameDataset {
  Matrix features;
  std::optional<std::vector<int>> labels;
  Domain domain = Domain::source;
  std::string language = "it";
  std::vector<UtteranceSpan> utterances;
  double frame_shift_s = 0.010;
  int n_classes = 0;  // 0 = unknown

  Index rows() const { return features.rows(); }
  Index dims() const { return features.cols(); }
  bool labeled() const { return labels.has_value(); }
  double hours_equivalent() const {
    return static_cast<double>(rows()) * frame_shift_s / 3600.0;
  }

  void validate() const;
};

FrameDataset strip_labels(FrameDataset data);

// Utterance-level random subset totalling at least `hours` and overshooting by
// less than one utterance. The seeded permutation makes subsets for the same
// rng state nested: a smaller request is a prefix of a larger one.
FrameDataset subset_hours(const FrameDataset& data, double hours, Rng& rng);

// On-disk corpus layout: <dir>/corpus.json (dataset-level metadata),
// <dir>/manifest.jsonl (one utterance per line), <dir>/feats/*.feat and
// <dir>/labels/*.lab binary files. Round trip is bit-exact.
void save_dataset(const FrameDataset& data, const std::filesystem::path& dir);
FrameDataset load_dataset(const std::filesystem::path& dir);

}  // namespace grladapt

#endif  // GRLADAPT_DATASET_HPP_
