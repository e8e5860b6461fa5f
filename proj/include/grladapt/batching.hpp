#ifndef GRLADAPT_BATCHING_HPP_
#define GRLADAPT_BATCHING_HPP_

#include <optional>
#include <vector>

#include "grladapt/dataset.hpp"
#include "grladapt/matrix.hpp"
#include "grladapt/rng.hpp"

namespace grladapt {

// One minibatch. Source rows carry labels; target rows carry -1 (their labels,
// if any ever existed, never reach a batch).
struct Batch {
  Matrix features;
  std::vector<Domain> domains;
  std::vector<int> labels;

  Index rows() const { return features.rows(); }
  Index source_count() const;
  Index target_count() const;

  // Compact per-domain views.
  Matrix source_features() const;
  Matrix target_features() const;
  std::vector<int> source_labels() const;
};

// Iterates a global shuffle of the union of a source dataset and an optional
// target dataset; every epoch visits every frame of both exactly once.
class MixedBatchIterator {
 public:
  MixedBatchIterator(const FrameDataset& source, const FrameDataset* target, Index batch_size,
                     std::uint64_t seed);

  // Reshuffles and rewinds; called implicitly on construction.
  void start_epoch();

  // nullopt signals end of epoch.
  std::optional<Batch> next_batch();

  Index batches_per_epoch() const;
  Index total_rows() const { return static_cast<Index>(order_.size()); }

 private:
  const FrameDataset* source_;
  const FrameDataset* target_;
  Index batch_size_;
  Rng rng_;
  std::vector<Index> order_;  // < source rows: source index; else target index + n_source
  Index cursor_ = 0;
};

}  // namespace grladapt

#endif  // GRLADAPT_BATCHING_HPP_
