#include "grladapt/features.hpp"

#include <cmath>
#include <complex>
#include <string>

#include <unsupported/Eigen/FFT>

#include "grladapt/errors.hpp"

namespace grladapt {

Index FeatureConfig::frame_samples() const {
  return static_cast<Index>(std::lround(sample_rate_hz * frame_length_ms / 1000.0));
}

Index FeatureConfig::shift_samples() const {
  return static_cast<Index>(std::lround(sample_rate_hz * frame_shift_ms / 1000.0));
}

Index FeatureConfig::fft_size() const {
  Index n = 1;
  while (n < frame_samples()) n <<= 1;
  return n;
}

void FeatureConfig::validate() const {
  if (!(sample_rate_hz > 0.0)) throw ConfigError("sample_rate_hz must be > 0");
  if (!(frame_length_ms > 0.0) || !(frame_shift_ms > 0.0)) {
    throw ConfigError("frame length/shift must be > 0");
  }
  if (n_mel < 1) throw ConfigError("n_mel must be >= 1");
  if (context_frames < 0) throw ConfigError("context_frames must be >= 0");
  if (delta_window < 1) throw ConfigError("delta_window must be >= 1");
  if (!(log_floor > 0.0)) throw ConfigError("log_floor must be > 0");
}

double hz_to_mel(double hz) { return 1127.0 * std::log(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::exp(mel / 1127.0) - 1.0); }

Matrix mel_filterbank(int n_mel, Index fft_size, double sample_rate_hz) {
  const Index n_bins = fft_size / 2 + 1;
  const double mel_lo = hz_to_mel(0.0);
  const double mel_hi = hz_to_mel(sample_rate_hz / 2.0);
  std::vector<double> centers_hz(static_cast<std::size_t>(n_mel) + 2);
  for (std::size_t k = 0; k < centers_hz.size(); ++k) {
    const double mel = mel_lo + (mel_hi - mel_lo) * static_cast<double>(k) /
                                    static_cast<double>(n_mel + 1);
    centers_hz[k] = mel_to_hz(mel);
  }
  Matrix fb = Matrix::Zero(n_bins, n_mel);
  for (Index bin = 0; bin < n_bins; ++bin) {
    const double hz = static_cast<double>(bin) * sample_rate_hz / static_cast<double>(fft_size);
    for (int m = 0; m < n_mel; ++m) {
      const double lo = centers_hz[static_cast<std::size_t>(m)];
      const double mid = centers_hz[static_cast<std::size_t>(m) + 1];
      const double hi = centers_hz[static_cast<std::size_t>(m) + 2];
      if (hz > lo && hz < hi) {
        fb(bin, m) = hz <= mid ? (hz - lo) / (mid - lo) : (hi - hz) / (hi - mid);
      }
    }
  }
  return fb;
}

Index num_frames(Index n_samples, const FeatureConfig& cfg) {
  const Index flen = cfg.frame_samples();
  if (n_samples < flen) return 0;
  return (n_samples - flen) / cfg.shift_samples() + 1;
}

Matrix delta_features(const Matrix& statics, int window) {
  if (window < 1) throw ConfigError("delta window must be >= 1");
  const Index n = statics.rows();
  Matrix deltas(n, statics.cols());
  double denom = 0.0;
  for (int k = 1; k <= window; ++k) denom += static_cast<double>(k) * k;
  denom *= 2.0;
  auto clamp_row = [&](Index t) { return std::min(std::max(t, Index{0}), n - 1); };
  for (Index t = 0; t < n; ++t) {
    RowVector acc = RowVector::Zero(statics.cols());
    for (int k = 1; k <= window; ++k) {
      acc += static_cast<double>(k) * (statics.row(clamp_row(t + k)) - statics.row(clamp_row(t - k)));
    }
    deltas.row(t) = acc / denom;
  }
  return deltas;
}

Matrix splice(const Matrix& frames, int context) {
  if (context < 0) throw ConfigError("splice context must be >= 0");
  if (context == 0) return frames;
  const Index n = frames.rows();
  const Index d = frames.cols();
  Matrix out(n, d * (2 * context + 1));
  auto clamp_row = [&](Index t) { return std::min(std::max(t, Index{0}), n - 1); };
  for (Index t = 0; t < n; ++t) {
    for (int c = -context; c <= context; ++c) {
      out.block(t, (c + context) * d, 1, d) = frames.row(clamp_row(t + c));
    }
  }
  return out;
}

Matrix extract_features(const Vector& waveform, const FeatureConfig& cfg) {
  cfg.validate();
  const Index flen = cfg.frame_samples();
  const Index shift = cfg.shift_samples();
  const Index nfft = cfg.fft_size();
  const Index n_frames = num_frames(waveform.size(), cfg);
  if (n_frames < 1) {
    throw DataError("waveform of " + std::to_string(waveform.size()) +
                    " samples is shorter than one frame (" + std::to_string(flen) + ")");
  }

  Vector window(flen);
  for (Index i = 0; i < flen; ++i) {
    window(i) = 0.54 - 0.46 * std::cos(2.0 * M_PI * static_cast<double>(i) /
                                       static_cast<double>(flen - 1));
  }
  const Matrix fb = mel_filterbank(cfg.n_mel, nfft, cfg.sample_rate_hz);

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  std::vector<double> buf(static_cast<std::size_t>(nfft));

  Matrix logmel(n_frames, cfg.n_mel);
  Vector bins(nfft / 2 + 1);
  for (Index t = 0; t < n_frames; ++t) {
    const Index start = t * shift;
    for (Index i = 0; i < flen; ++i) {
      const Index s = start + i;
      const double x = waveform(s);
      const double prev = s > 0 ? waveform(s - 1) : 0.0;
      buf[static_cast<std::size_t>(i)] = (x - cfg.preemphasis * prev) * window(i);
    }
    std::fill(buf.begin() + flen, buf.end(), 0.0);
    fft.fwd(spectrum, buf);
    for (Index k = 0; k <= nfft / 2; ++k) {
      bins(k) = std::abs(spectrum[static_cast<std::size_t>(k)]);
    }
    RowVector energies = bins.transpose() * fb;
    logmel.row(t) = energies.array().max(cfg.log_floor).log();
  }

  Matrix statics = logmel;
  if (cfg.include_deltas) {
    Matrix d1 = delta_features(logmel, cfg.delta_window);
    Matrix d2 = delta_features(d1, cfg.delta_window);
    statics.resize(n_frames, 3 * cfg.n_mel);
    statics << logmel, d1, d2;
  }
  Matrix out = splice(statics, cfg.context_frames);
  ensure_finite(out, "extracted features");
  return out;
}

std::vector<int> frame_labels(std::span<const int> sample_labels, const FeatureConfig& cfg) {
  const Index n_frames = num_frames(static_cast<Index>(sample_labels.size()), cfg);
  std::vector<int> labels(static_cast<std::size_t>(n_frames));
  const Index flen = cfg.frame_samples();
  const Index shift = cfg.shift_samples();
  for (Index t = 0; t < n_frames; ++t) {
    const Index center = t * shift + flen / 2;
    labels[static_cast<std::size_t>(t)] = sample_labels[static_cast<std::size_t>(center)];
  }
  return labels;
}

}  // namespace grladapt
