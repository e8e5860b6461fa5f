#ifndef GRLADAPT_FEATURES_HPP_
#define GRLADAPT_FEATURES_HPP_

#include <span>
#include <vector>

#include "grladapt/matrix.hpp"

namespace grladapt {

// Log-mel filterbank analysis plus delta appendages and context splicing.
// The stock configuration (23 bands, deltas on, +-5 context) yields
// 23 * 3 * 11 = 759 dimensions.
struct FeatureConfig {
  double sample_rate_hz = 16000.0;
  double frame_length_ms = 25.0;
  double frame_shift_ms = 10.0;
  int n_mel = 23;
  int context_frames = 5;
  bool include_deltas = true;
  int delta_window = 2;
  double preemphasis = 0.97;
  double log_floor = 1e-10;  // energy floor before the log

  Index frame_samples() const;
  Index shift_samples() const;
  Index fft_size() const;  // next power of two >= frame_samples
  Index output_dim() const {
    return static_cast<Index>(n_mel) * (include_deltas ? 3 : 1) * (2 * context_frames + 1);
  }
  void validate() const;
};

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Triangular filters on the mel scale spanning [0, sample_rate/2];
// (fft_size/2 + 1) x n_mel.
Matrix mel_filterbank(int n_mel, Index fft_size, double sample_rate_hz);

Index num_frames(Index n_samples, const FeatureConfig& cfg);

// frames x output_dim: pre-emphasis, Hamming window, magnitude spectrum,
// mel energies, log, deltas, splicing.
Matrix extract_features(const Vector& waveform, const FeatureConfig& cfg);

// Standard regression deltas with edge replication.
Matrix delta_features(const Matrix& statics, int window);

// Row t becomes the concatenation of rows t-context .. t+context with boundary
// replication; context = 0 is the identity.
Matrix splice(const Matrix& frames, int context);

// Majority label is irrelevant: each frame takes the label at its center sample.
std::vector<int> frame_labels(std::span<const int> sample_labels, const FeatureConfig& cfg);

}  // namespace grladapt

#endif  // GRLADAPT_FEATURES_HPP_
