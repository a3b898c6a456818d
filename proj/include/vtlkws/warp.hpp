// vtlkws/warp.hpp

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

#ifndef VTLKWS_WARP_HPP_
#define VTLKWS_WARP_HPP_

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vtlkws {

// Vocal-tract-length warping factor. Physiologically meaningful values lie
// in [0.80, 1.20]; 1.00 is the identity warp.
struct WarpFactor {
  double alpha = 1.0;
};

inline constexpr double kAlphaMinValid = 0.80;
inline constexpr double kAlphaMaxValid = 1.20;

// Sentinel used to tag concatenated features, which have no single alpha.
inline constexpr double kConcatAlpha = -1.0;

struct WarpGrid {
  std::vector<WarpFactor> factors;  // strictly increasing

  std::size_t size() const { return factors.size(); }
  double alpha(std::size_t i) const { return factors.at(i).alpha; }

  bool contains(double a, double tol = 1e-9) const {
    for (const auto& f : factors) {
      if (std::abs(f.alpha - a) <= tol) return true;
    }
    return false;
  }

  std::size_t index_of(double a, double tol = 1e-9) const {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (std::abs(factors[i].alpha - a) <= tol) return i;
    }
    throw std::invalid_argument("alpha " + std::to_string(a) +
                                " is not on the warp grid");
  }
};

// alpha_min..alpha_max inclusive in alpha_step increments. Values are built
// from integer numerators so the canonical grid contains 1.00 exactly.
inline WarpGrid make_grid(double alpha_min, double alpha_max,
                          double alpha_step) {
  if (!(alpha_step > 0.0) || !(alpha_min < alpha_max)) {
    throw std::invalid_argument("invalid warp grid bounds/step");
  }
  const long num_min = std::lround(alpha_min * 10000.0);
  const long num_max = std::lround(alpha_max * 10000.0);
  const long num_step = std::lround(alpha_step * 10000.0);
  if (num_step <= 0) throw std::invalid_argument("alpha_step too small");
  WarpGrid g;
  for (long v = num_min; v <= num_max; v += num_step) {
    g.factors.push_back({static_cast<double>(v) / 10000.0});
  }
  for (const auto& f : g.factors) {
    if (f.alpha < kAlphaMinValid - 1e-12 || f.alpha > kAlphaMaxValid + 1e-12) {
      throw std::invalid_argument("grid factor " + std::to_string(f.alpha) +
                                  " outside [0.80, 1.20]");
    }
  }
  return g;
}

// The canonical 21-factor grid: 0.80 to 1.20 in steps of 0.02, with the
// identity warp 1.00 as the center entry.
inline WarpGrid default_grid() { return make_grid(0.80, 1.20, 0.02); }

// Knee (f0) and warp bandwidth (fm) of the piecewise-linear warp. fm is the
// highest frequency the warp touches and is a fixed point of the map.
struct WarpConfig {
  double f0_hz = 20.0;
  double fm_hz = 6800.0;
};

inline void validate_warp_config(const WarpConfig& cfg, double nyquist_hz,
                                 const WarpGrid& grid) {
  if (!(cfg.f0_hz > 0.0) || !(cfg.f0_hz < cfg.fm_hz)) {
    throw std::invalid_argument("warp config requires 0 < f0 < fm");
  }
  if (cfg.fm_hz > nyquist_hz + 1e-9) {
    throw std::invalid_argument("warp fm exceeds Nyquist");
  }
  for (const auto& f : grid.factors) {
    if (!(f.alpha * cfg.f0_hz < cfg.fm_hz)) {
      throw std::invalid_argument("alpha*f0 must stay below fm for alpha=" +
                                  std::to_string(f.alpha));
    }
  }
}

inline WarpConfig resolve_warp_config(double f0_hz,
                                      double fm_fraction_of_nyquist,
                                      int sample_rate) {
  WarpConfig cfg;
  cfg.f0_hz = f0_hz;
  cfg.fm_hz = fm_fraction_of_nyquist * (static_cast<double>(sample_rate) / 2.0);
  return cfg;
}

// Piecewise-linear frequency warp:
//   alpha*f                                       for 0 <= f <= f0
//   (fm - alpha*f0)/(fm - f0) * (f - f0) + alpha*f0   for f0 <= f <= fm
// The two pieces agree at f0 and fm is a fixed point. Frequencies above fm
// map to themselves so FFT bins beyond the warp band are untouched.
inline double warp_frequency(WarpFactor w, double f, const WarpConfig& cfg) {
  if (f < 0.0) {
    throw std::invalid_argument("warp_frequency: negative frequency");
  }
  if (w.alpha == 1.0) return f;  // identity warp, kept bit-exact
  if (f >= cfg.fm_hz) return f;
  if (f <= cfg.f0_hz) return w.alpha * f;
  const double slope = (cfg.fm_hz - w.alpha * cfg.f0_hz) / (cfg.fm_hz - cfg.f0_hz);
  return slope * (f - cfg.f0_hz) + w.alpha * cfg.f0_hz;
}

// Triangular mel filterbank rasterized onto rFFT bins. weights is row-major,
// n_filters x (n_fft/2 + 1).
struct MelFilterbank {
  int n_filters = 0;
  int n_bins = 0;
  std::vector<float> weights;
  std::vector<double> edge_hz;  // n_filters + 2 warped edge frequencies

  float at(int filter, int bin) const {
    return weights[static_cast<std::size_t>(filter) * n_bins + bin];
  }
};

inline double hz_to_mel(double hz) {
  return 2595.0 * std::log10(1.0 + hz / 700.0);
}

inline double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

// Mel-spaced triangle edges are laid out on [0, fm] in linear frequency and
// each edge is then mapped through the warp before rasterization. At
// alpha=1.00 this reproduces the unwarped filterbank exactly.
inline MelFilterbank build_warped_filterbank(WarpFactor w,
                                             const WarpConfig& cfg,
                                             int n_filters, int n_fft,
                                             int sample_rate) {
  if (n_filters < 1) throw std::invalid_argument("n_filters must be >= 1");
  if (n_fft < 2 || (n_fft & (n_fft - 1)) != 0) {
    throw std::invalid_argument("n_fft must be a power of two");
  }
  const double nyquist = sample_rate / 2.0;
  if (cfg.fm_hz > nyquist + 1e-9) {
    throw std::invalid_argument("warp fm exceeds Nyquist");
  }

  const double mel_lo = hz_to_mel(0.0);
  const double mel_hi = hz_to_mel(cfg.fm_hz);
  std::vector<double> edges(static_cast<std::size_t>(n_filters) + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const double mel =
        mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                     static_cast<double>(n_filters + 1);
    edges[i] = warp_frequency(w, mel_to_hz(mel), cfg);
  }

  MelFilterbank fb;
  fb.n_filters = n_filters;
  fb.n_bins = n_fft / 2 + 1;
  fb.weights.assign(static_cast<std::size_t>(n_filters) * fb.n_bins, 0.0f);
  fb.edge_hz = edges;

  const double bin_hz = static_cast<double>(sample_rate) / n_fft;
  for (int m = 0; m < n_filters; ++m) {
    const double left = edges[m], center = edges[m + 1], right = edges[m + 2];
    bool any = false;
    for (int k = 0; k < fb.n_bins; ++k) {
      const double f = k * bin_hz;
      double v = 0.0;
      if (f > left && f < center) {
        v = (f - left) / (center - left);
      } else if (f >= center && f < right) {
        v = (right - f) / (right - center);
      }
      if (v > 0.0) {
        fb.weights[static_cast<std::size_t>(m) * fb.n_bins + k] =
            static_cast<float>(v);
        any = true;
      }
    }
    if (!any) {
      throw std::runtime_error(
          "mel filter " + std::to_string(m) +
          " covers no FFT bin; increase n_fft or reduce n_filters");
    }
  }
  return fb;
}

}  // namespace vtlkws

#endif  // VTLKWS_WARP_HPP_
