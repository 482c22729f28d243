// Copyright 2026 The AudioVMAF Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "audiovmaf/metrics1d.h"

#include <algorithm>
#include <cmath>

namespace audiovmaf {

namespace {

constexpr double kEps = 1e-10;
// Largest possible population std of the [0,1]-bounded GMS map; anchors
// the affine rescaling of GMSD onto [0.687, 1].
constexpr double kGmsdScaleAnchor = 0.5;

void check_pair(const std::vector<double>& ref, const std::vector<double>& deg,
                size_t min_len) {
  if (ref.size() != deg.size()) {
    throw Error("length mismatch between reference and coded signals");
  }
  if (ref.size() < min_len) {
    throw Error("too short: need at least " + std::to_string(min_len) +
                " samples");
  }
}

// Length-2 mean filter then decimation by 2.
std::vector<double> halve(const std::vector<double>& x) {
  std::vector<double> out(x.size() / 2);
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = 0.5 * (x[2 * i] + x[2 * i + 1]);
  }
  return out;
}

struct CsAndSsim {
  double cs_mean = 0.0;
  double ssim_mean = 0.0;
};

CsAndSsim ssim_terms(const std::vector<double>& ref,
                     const std::vector<double>& deg,
                     const std::vector<double>& window,
                     const Metric1dConfig& cfg) {
  const double c1 = cfg.k1 * cfg.dynamic_range * cfg.k1 * cfg.dynamic_range;
  const double c2 = cfg.k2 * cfg.dynamic_range * cfg.k2 * cfg.dynamic_range;
  const LocalMoments m = windowed_moments(ref, deg, window);
  double cs_sum = 0.0, ssim_sum = 0.0;
  for (size_t i = 0; i < m.size(); ++i) {
    const double cs = (2.0 * m.cov[i] + c2) / (m.var_x[i] + m.var_y[i] + c2);
    const double lum = (2.0 * m.mu_x[i] * m.mu_y[i] + c1) /
                       (m.mu_x[i] * m.mu_x[i] + m.mu_y[i] * m.mu_y[i] + c1);
    cs_sum += cs;
    ssim_sum += lum * cs;
  }
  return {cs_sum / double(m.size()), ssim_sum / double(m.size())};
}

}  // namespace

std::vector<double> gaussian_window(int n, double sigma) {
  std::vector<double> w(size_t(n), 0.0);
  const double center = (n - 1) / 2.0;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = (i - center) / sigma;
    w[size_t(i)] = std::exp(-0.5 * d * d);
    sum += w[size_t(i)];
  }
  for (double& v : w) v /= sum;
  return w;
}

LocalMoments windowed_moments(const std::vector<double>& x,
                              const std::vector<double>& y,
                              const std::vector<double>& window) {
  if (x.size() != y.size()) throw Error("length mismatch");
  if (x.size() < window.size()) throw Error("too short");
  const size_t positions = x.size() - window.size() + 1;
  LocalMoments m;
  m.mu_x.resize(positions);
  m.mu_y.resize(positions);
  m.var_x.resize(positions);
  m.var_y.resize(positions);
  m.cov.resize(positions);
  for (size_t i = 0; i < positions; ++i) {
    double mx = 0, my = 0, mxx = 0, myy = 0, mxy = 0;
    for (size_t j = 0; j < window.size(); ++j) {
      const double w = window[j];
      const double a = x[i + j];
      const double b = y[i + j];
      mx += w * a;
      my += w * b;
      mxx += w * a * a;
      myy += w * b * b;
      mxy += w * a * b;
    }
    m.mu_x[i] = mx;
    m.mu_y[i] = my;
    m.var_x[i] = mxx - mx * mx;
    m.var_y[i] = myy - my * my;
    m.cov[i] = mxy - mx * my;
  }
  return m;
}

double ssim_1d(const std::vector<double>& ref, const std::vector<double>& deg,
               const Metric1dConfig& cfg) {
  check_pair(ref, deg, size_t(cfg.window_len));
  const auto window = gaussian_window(cfg.window_len, cfg.window_sigma);
  return ssim_terms(ref, deg, window, cfg).ssim_mean;
}

double ms_ssim_1d(const std::vector<double>& ref,
                  const std::vector<double>& deg, const Metric1dConfig& cfg) {
  const size_t min_len = size_t(cfg.window_len) << (cfg.ms_scales - 1);
  check_pair(ref, deg, min_len);
  const auto window = gaussian_window(cfg.window_len, cfg.window_sigma);

  std::vector<double> r = ref, d = deg;
  double product = 1.0;
  for (int s = 0; s < cfg.ms_scales; ++s) {
    const CsAndSsim terms = ssim_terms(r, d, window, cfg);
    const double w = cfg.ms_weights[size_t(s)];
    // Contrast-structure at the coarse scales, full SSIM at the last;
    // negative terms clamp to 0 so the result stays in [0, 1].
    const double value = s + 1 < cfg.ms_scales ? terms.cs_mean : terms.ssim_mean;
    product *= std::pow(std::max(value, 0.0), w);
    if (s + 1 < cfg.ms_scales) {
      r = halve(r);
      d = halve(d);
    }
  }
  return product;
}

double vifp_1d(const std::vector<double>& ref, const std::vector<double>& deg,
               const Metric1dConfig& cfg) {
  const size_t min_len = size_t(cfg.window_len) << (cfg.ms_scales - 1);
  check_pair(ref, deg, min_len);
  const auto window = gaussian_window(cfg.window_len, cfg.window_sigma);

  // vif_noise_var is the canonical constant for the 8-bit pixel range, so
  // signals are evaluated on that scale (VIF is invariant to a joint
  // rescale of both inputs and the noise variance).
  const double to_pixel_scale = 255.0 / cfg.dynamic_range;
  std::vector<double> r = ref, d = deg;
  for (double& v : r) v *= to_pixel_scale;
  for (double& v : d) v *= to_pixel_scale;
  double num = 0.0, den = 0.0;
  for (int s = 0; s < cfg.vif_scales; ++s) {
    const LocalMoments m = windowed_moments(r, d, window);
    for (size_t i = 0; i < m.size(); ++i) {
      double var_x = std::max(m.var_x[i], 0.0);
      const double var_y = std::max(m.var_y[i], 0.0);
      double g = m.cov[i] / (var_x + kEps);
      double sv_sq = var_y - g * m.cov[i];
      if (var_x < kEps) {
        g = 0.0;
        sv_sq = var_y;
        var_x = 0.0;
      }
      if (var_y < kEps) {
        g = 0.0;
        sv_sq = 0.0;
      }
      if (g < 0.0) {
        sv_sq = var_y;
        g = 0.0;
      }
      sv_sq = std::max(sv_sq, kEps);
      num += std::log2(1.0 + g * g * var_x / (sv_sq + cfg.vif_noise_var));
      den += std::log2(1.0 + var_x / cfg.vif_noise_var);
    }
    if (s + 1 < cfg.vif_scales) {
      r = halve(r);
      d = halve(d);
    }
  }
  if (den <= 0.0) {
    throw Error("degenerate reference: zero variance everywhere");
  }
  return num / den;
}

GmsResult gms_1d(const std::vector<double>& ref, const std::vector<double>& deg,
                 const Metric1dConfig& cfg) {
  check_pair(ref, deg, 3);
  const size_t n = ref.size();
  std::vector<double> gms(n - 2);
  for (size_t i = 1; i + 1 < n; ++i) {
    const double gr = std::fabs(0.5 * (ref[i + 1] - ref[i - 1]));
    const double gd = std::fabs(0.5 * (deg[i + 1] - deg[i - 1]));
    gms[i - 1] = (2.0 * gr * gd + cfg.gms_c) / (gr * gr + gd * gd + cfg.gms_c);
  }
  double mean = 0.0;
  for (double v : gms) mean += v;
  mean /= double(gms.size());
  double var = 0.0;
  for (double v : gms) var += (v - mean) * (v - mean);
  var /= double(gms.size());
  GmsResult result;
  result.gmsm = mean;
  result.gmsd_raw = std::sqrt(var);
  result.gmsd_paper_scaled =
      1.0 - result.gmsd_raw * (1.0 - 0.687) / kGmsdScaleAnchor;
  return result;
}

Metric1dReport run_metrics1d(const std::vector<double>& ref,
                             const std::vector<double>& deg,
                             const Metric1dConfig& cfg) {
  Metric1dReport report;
  report.ssim = ssim_1d(ref, deg, cfg);
  report.ms_ssim = ms_ssim_1d(ref, deg, cfg);
  report.vifp = vifp_1d(ref, deg, cfg);
  const GmsResult gms = gms_1d(ref, deg, cfg);
  report.gmsm = gms.gmsm;
  report.gmsd_raw = gms.gmsd_raw;
  report.gmsd_paper_scaled = gms.gmsd_paper_scaled;
  return report;
}

}  // namespace audiovmaf
