#include "grladapt/batching.hpp"

#include <algorithm>
#include <numeric>

#include "grladapt/errors.hpp"

namespace grladapt {

Index Batch::source_count() const {
  return static_cast<Index>(std::count(domains.begin(), domains.end(), Domain::source));
}

Index Batch::target_count() const { return rows() - source_count(); }

namespace {
Matrix gather_rows(const Matrix& m, const std::vector<Domain>& domains, Domain which) {
  Index n = 0;
  for (Domain d : domains) {
    if (d == which) ++n;
  }
  Matrix out(n, m.cols());
  Index at = 0;
  for (Index i = 0; i < m.rows(); ++i) {
    if (domains[static_cast<std::size_t>(i)] == which) out.row(at++) = m.row(i);
  }
  return out;
}
}  // namespace

Matrix Batch::source_features() const { return gather_rows(features, domains, Domain::source); }

Matrix Batch::target_features() const { return gather_rows(features, domains, Domain::target); }

std::vector<int> Batch::source_labels() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < domains.size(); ++i) {
    if (domains[i] == Domain::source) out.push_back(labels[i]);
  }
  return out;
}

MixedBatchIterator::MixedBatchIterator(const FrameDataset& source, const FrameDataset* target,
                                       Index batch_size, std::uint64_t seed)
    : source_(&source), target_(target), batch_size_(batch_size), rng_(make_rng(seed)) {
  if (batch_size_ < 1) throw ConfigError("batch_size must be >= 1");
  if (target_ && target_->dims() != source_->dims()) {
    throw DataError("source dims " + std::to_string(source_->dims()) + " != target dims " +
                    std::to_string(target_->dims()));
  }
  order_.resize(static_cast<std::size_t>(source_->rows() + (target_ ? target_->rows() : 0)));
  std::iota(order_.begin(), order_.end(), Index{0});
  start_epoch();
}

void MixedBatchIterator::start_epoch() {
  std::shuffle(order_.begin(), order_.end(), rng_);
  cursor_ = 0;
}

std::optional<Batch> MixedBatchIterator::next_batch() {
  const Index total = total_rows();
  if (cursor_ >= total) return std::nullopt;
  const Index n = std::min(batch_size_, total - cursor_);
  const Index n_source = source_->rows();

  Batch batch;
  batch.features.resize(n, source_->dims());
  batch.domains.resize(static_cast<std::size_t>(n));
  batch.labels.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const Index idx = order_[static_cast<std::size_t>(cursor_ + i)];
    if (idx < n_source) {
      batch.features.row(i) = source_->features.row(idx);
      batch.domains[static_cast<std::size_t>(i)] = Domain::source;
      batch.labels[static_cast<std::size_t>(i)] =
          source_->labels ? (*source_->labels)[static_cast<std::size_t>(idx)] : -1;
    } else {
      const Index t = idx - n_source;
      batch.features.row(i) = target_->features.row(t);
      batch.domains[static_cast<std::size_t>(i)] = Domain::target;
      batch.labels[static_cast<std::size_t>(i)] = -1;
    }
  }
  cursor_ += n;
  return batch;
}

Index MixedBatchIterator::batches_per_epoch() const {
  return (total_rows() + batch_size_ - 1) / batch_size_;
}

}  // namespace grladapt
