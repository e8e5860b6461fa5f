#ifndef GRLADAPT_SYNTH_HPP_
#define GRLADAPT_SYNTH_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "grladapt/dataset.hpp"
#include "grladapt/features.hpp"
#include "grladapt/matrix.hpp"
#include "grladapt/rng.hpp"

namespace grladapt {

// Recording-condition stand-in: reverberation (exponentially decaying noise
// impulse response), additive noise at a target SNR, and a channel gain.
// The clean close-talk profile is snr_db = +inf, reverb_taps = 0.
struct ChannelProfile {
  std::string name = "clean";
  double snr_db = std::numeric_limits<double>::infinity();
  double reverb_decay_s = 0.0;
  int reverb_taps = 0;
  double gain = 1.0;

  bool is_clean() const { return reverb_taps == 0 && std::isinf(snr_db); }
  void validate() const;

  static ChannelProfile clean_profile();
  static ChannelProfile far_field_profile();
};

// Per-class signal template: a harmonic stack with a class-specific
// fundamental and spectral tilt, mixed with a little shaped noise.
struct ClassTemplate {
  double f0_hz = 220.0;
  int n_harmonics = 5;
  double rolloff = 0.7;    // amplitude ratio between consecutive harmonics
  double noise_mix = 0.1;  // rms of the additive noise component
};

struct GeneratorSpec {
  int n_classes = 10;
  std::vector<ClassTemplate> class_templates;
  double utterance_length_s = 3.0;
  double sample_rate_hz = 16000.0;
  double segment_length_s = 0.5;  // one class per segment
  std::uint64_t seed = 1;
  std::string language_tag = "it";

  void validate() const;

  // Deterministic template inventory for a language. Different language tags
  // share a seed-determined base inventory but perturb part of it, emulating
  // overlapping-but-distinct acoustic inventories.
  static GeneratorSpec make(int n_classes, const std::string& language_tag, std::uint64_t seed,
                            double utterance_length_s = 3.0);
};

struct Utterance {
  Vector waveform;
  std::vector<int> sample_labels;
};

// Concatenated per-class segments with exact sample-aligned labels.
Utterance generate_utterance(const GeneratorSpec& spec, std::span<const int> class_seq, Rng& rng);

// Reverb convolution (IR drawn first from rng), noise mixing at snr_db
// (drawn second), then gain. Output length equals input length.
Vector apply_channel(const Vector& waveform, const ChannelProfile& profile, Rng& rng);

// generate_utterance + apply_channel + extract_features + frame labels.
struct LabeledFrames {
  Matrix features;
  std::vector<int> labels;
};
LabeledFrames generate_labeled_utterance(const GeneratorSpec& spec, std::span<const int> class_seq,
                                         const ChannelProfile& channel, const FeatureConfig& feat,
                                         Rng& rng);

// A whole corpus: utterances of random class sequences until `hours`
// (frames * shift / 3600) is reached. Fully determined by spec.seed + salt.
struct CorpusSpec {
  GeneratorSpec gen;
  ChannelProfile channel;
  FeatureConfig feat;
  double hours = 0.1;
  Domain domain = Domain::source;
  bool keep_labels = true;
  std::uint64_t salt = 0;  // distinguishes splits drawn from the same generator
};
FrameDataset synthesize_corpus(const CorpusSpec& spec);

}  // namespace grladapt

#endif  // GRLADAPT_SYNTH_HPP_
