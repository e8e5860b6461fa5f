#include "grladapt/synth.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "grladapt/errors.hpp"

namespace grladapt {

void ChannelProfile::validate() const {
  if (reverb_taps < 0) throw ConfigError("reverb_taps must be >= 0");
  if (reverb_taps > 0 && !(reverb_decay_s > 0.0)) {
    throw ConfigError("reverb_decay_s must be > 0 when reverb_taps > 0");
  }
  if (!(gain > 0.0)) throw ConfigError("channel gain must be > 0");
  if (std::isnan(snr_db)) throw ConfigError("snr_db must not be NaN");
}

ChannelProfile ChannelProfile::clean_profile() {
  return ChannelProfile{"ch1-clean", std::numeric_limits<double>::infinity(), 0.0, 0, 1.0};
}

ChannelProfile ChannelProfile::far_field_profile() {
  return ChannelProfile{"ch4-far", 6.0, 0.012, 512, 0.5};
}

void GeneratorSpec::validate() const {
  if (n_classes < 1) throw ConfigError("n_classes must be >= 1");
  if (static_cast<int>(class_templates.size()) != n_classes) {
    throw ConfigError("class_templates size != n_classes");
  }
  if (!(utterance_length_s > 0.0) || !(segment_length_s > 0.0)) {
    throw ConfigError("utterance/segment lengths must be > 0");
  }
  if (!(sample_rate_hz > 0.0)) throw ConfigError("sample_rate_hz must be > 0");
}

GeneratorSpec GeneratorSpec::make(int n_classes, const std::string& language_tag, std::uint64_t seed,
                                  double utterance_length_s) {
  if (n_classes < 1) throw ConfigError("n_classes must be >= 1");
  GeneratorSpec spec;
  spec.n_classes = n_classes;
  spec.seed = seed;
  spec.language_tag = language_tag;
  spec.utterance_length_s = utterance_length_s;
  const std::uint64_t lang_stream = derive_seed(seed, language_tag);
  for (int k = 0; k < n_classes; ++k) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ClassTemplate t;
    // Fundamentals on a geometric grid from ~180 Hz to ~2.2 kHz plus jitter.
    const double frac = n_classes > 1 ? static_cast<double>(k) / (n_classes - 1) : 0.0;
    t.f0_hz = 180.0 * std::pow(2200.0 / 180.0, frac) * (1.0 + 0.03 * (unit(rng) - 0.5));
    t.n_harmonics = 4 + static_cast<int>(unit(rng) * 4.0);
    t.rolloff = 0.55 + 0.30 * unit(rng);
    t.noise_mix = 0.10 + 0.20 * unit(rng);
    // Odd classes are language-specific: their fundamentals and noise floors
    // shift by a language-keyed amount, even classes are shared verbatim.
    if (k % 2 == 1) {
      Rng lrng = make_rng(derive_seed(lang_stream, static_cast<std::uint64_t>(k)));
      std::uniform_real_distribution<double> lunit(0.0, 1.0);
      t.f0_hz *= 1.0 + 0.12 * (lunit(lrng) - 0.5) * 2.0;
      t.noise_mix = 0.10 + 0.20 * lunit(lrng);
    }
    spec.class_templates.push_back(t);
  }
  return spec;
}

Utterance generate_utterance(const GeneratorSpec& spec, std::span<const int> class_seq, Rng& rng) {
  spec.validate();
  if (class_seq.empty()) throw DataError("class sequence must not be empty");
  for (int c : class_seq) {
    if (c < 0 || c >= spec.n_classes) {
      throw DataError("class " + std::to_string(c) + " out of range for " +
                      std::to_string(spec.n_classes) + " classes");
    }
  }
  const double fs = spec.sample_rate_hz;
  const Index seg_samples = static_cast<Index>(std::lround(
      spec.utterance_length_s / static_cast<double>(class_seq.size()) * fs));
  const Index total = seg_samples * static_cast<Index>(class_seq.size());
  const Index fade = std::min<Index>(static_cast<Index>(fs * 0.002), seg_samples / 4);

  Utterance utt;
  utt.waveform = Vector::Zero(total);
  utt.sample_labels.resize(static_cast<std::size_t>(total));

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double nyquist = fs / 2.0;

  Index at = 0;
  for (int c : class_seq) {
    const ClassTemplate& tpl = spec.class_templates[static_cast<std::size_t>(c)];
    int n_h = 0;
    double energy = 0.0;
    std::vector<double> amps, phases, freqs;
    for (int h = 1; h <= tpl.n_harmonics; ++h) {
      const double f = tpl.f0_hz * h;
      if (f >= nyquist) break;
      const double a = std::pow(tpl.rolloff, h - 1);
      amps.push_back(a);
      freqs.push_back(f);
      phases.push_back(2.0 * M_PI * unit(rng));
      energy += a * a / 2.0;
      ++n_h;
    }
    const double harm_scale = n_h > 0 ? 0.25 / std::sqrt(energy) : 0.0;
    const double seg_gain = 0.8 + 0.4 * unit(rng);
    const double noise_rms = 0.25 * tpl.noise_mix;
    for (Index i = 0; i < seg_samples; ++i) {
      const double t = static_cast<double>(i) / fs;
      double v = 0.0;
      for (int h = 0; h < n_h; ++h) {
        v += amps[static_cast<std::size_t>(h)] *
             std::sin(2.0 * M_PI * freqs[static_cast<std::size_t>(h)] * t +
                      phases[static_cast<std::size_t>(h)]);
      }
      v = v * harm_scale + noise_rms * gauss(rng);
      double env = 1.0;
      if (i < fade) env = static_cast<double>(i) / static_cast<double>(fade);
      if (i >= seg_samples - fade) {
        env = std::min(env, static_cast<double>(seg_samples - i) / static_cast<double>(fade));
      }
      utt.waveform(at + i) = seg_gain * env * v;
      utt.sample_labels[static_cast<std::size_t>(at + i)] = c;
    }
    at += seg_samples;
  }
  return utt;
}

Vector apply_channel(const Vector& waveform, const ChannelProfile& profile, Rng& rng) {
  profile.validate();
  Vector y = waveform;
  if (profile.reverb_taps > 0) {
    // Impulse response: unit direct path plus an exponentially decaying,
    // low-passed noise tail. The smoothing gives the tail positive short-lag
    // correlation so convolution visibly smears the waveform.
    const Index taps = profile.reverb_taps;
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector raw(taps);
    for (Index k = 0; k < taps; ++k) raw(k) = gauss(rng);
    const Index smooth = 16;
    Vector tail = Vector::Zero(taps);
    for (Index k = 1; k < taps; ++k) {
      double acc = 0.0;
      const Index lo = std::max<Index>(0, k - smooth + 1);
      for (Index j = lo; j <= k; ++j) acc += raw(j);
      const double env =
          std::exp(-static_cast<double>(k) / (profile.reverb_decay_s * 16000.0));
      tail(k) = acc / static_cast<double>(k - lo + 1) * env;
    }
    const double tail_energy = tail.squaredNorm();
    if (tail_energy > 0.0) {
      tail *= std::sqrt(0.8 / tail_energy);  // reverberant-to-direct energy 0.8 : 1
    }
    const Index n = y.size();
    for (Index k = 1; k < taps && k < n; ++k) {
      y.segment(k, n - k) += tail(k) * waveform.segment(0, n - k);
    }
  }
  if (std::isfinite(profile.snr_db)) {
    const double psig = y.size() > 0 ? y.squaredNorm() / static_cast<double>(y.size()) : 0.0;
    const double sigma = std::sqrt(psig / std::pow(10.0, profile.snr_db / 10.0));
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (Index i = 0; i < y.size(); ++i) y(i) += sigma * gauss(rng);
  }
  y *= profile.gain;
  return y;
}

LabeledFrames generate_labeled_utterance(const GeneratorSpec& spec, std::span<const int> class_seq,
                                         const ChannelProfile& channel, const FeatureConfig& feat,
                                         Rng& rng) {
  Utterance utt = generate_utterance(spec, class_seq, rng);
  Vector degraded = apply_channel(utt.waveform, channel, rng);
  LabeledFrames out;
  out.features = extract_features(degraded, feat);
  out.labels = frame_labels(utt.sample_labels, feat);
  if (static_cast<Index>(out.labels.size()) != out.features.rows()) {
    throw StateError("frame label count does not match feature rows");
  }
  return out;
}

FrameDataset synthesize_corpus(const CorpusSpec& spec) {
  spec.gen.validate();
  spec.channel.validate();
  spec.feat.validate();
  if (!(spec.hours > 0.0)) throw ConfigError("corpus hours must be > 0");

  const double frames_needed = spec.hours * 3600.0 * 1000.0 / spec.feat.frame_shift_ms;
  const int segs = std::max(1, static_cast<int>(std::lround(spec.gen.utterance_length_s /
                                                            spec.gen.segment_length_s)));
  const std::uint64_t corpus_seed = derive_seed(spec.gen.seed, spec.salt);

  FrameDataset data;
  data.domain = spec.domain;
  data.language = spec.gen.language_tag;
  data.frame_shift_s = spec.feat.frame_shift_ms / 1000.0;
  data.n_classes = spec.gen.n_classes;
  if (spec.keep_labels) data.labels.emplace();

  std::vector<Matrix> blocks;
  Index total = 0;
  std::size_t u = 0;
  while (static_cast<double>(total) < frames_needed - 1e-9) {
    Rng rng = make_rng(derive_seed(corpus_seed, u));
    std::uniform_int_distribution<int> cls(0, spec.gen.n_classes - 1);
    std::vector<int> seq(static_cast<std::size_t>(segs));
    for (int& c : seq) c = cls(rng);
    LabeledFrames lf = generate_labeled_utterance(spec.gen, seq, spec.channel, spec.feat, rng);

    char id[32];
    std::snprintf(id, sizeof(id), "utt_%06zu", u);
    data.utterances.push_back(UtteranceSpan{id, total, lf.features.rows()});
    if (spec.keep_labels) {
      data.labels->insert(data.labels->end(), lf.labels.begin(), lf.labels.end());
    }
    total += lf.features.rows();
    blocks.push_back(std::move(lf.features));
    ++u;
  }
  data.features.resize(total, spec.feat.output_dim());
  Index at = 0;
  for (const Matrix& b : blocks) {
    data.features.middleRows(at, b.rows()) = b;
    at += b.rows();
  }
  data.validate();
  return data;
}

}  // namespace grladapt
