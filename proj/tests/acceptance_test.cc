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

// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Pipeline criteria run against the engine configured via
// AUDIOVMAF_ENGINE (the build wires in the bundled frscore).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "audiovmaf/composer.h"
#include "audiovmaf/eval.h"
#include "audiovmaf/frontend.h"
#include "audiovmaf/metrics1d.h"
#include "audiovmaf/pipeline.h"
#include "audiovmaf/stats.h"
#include "audiovmaf/subprocess.h"
#include "audiovmaf/wav.h"
#include "testutil.h"

using namespace audiovmaf;
using namespace audiovmaf::testing;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << (detail.str().empty() ? "" : "; ") << what;
    }
  }
};

PipelineConfig engine_cfg() {
  PipelineConfig cfg;
  cfg.engine.path = frscore_path();
  if (cfg.engine.path.empty()) {
    throw Error("AUDIOVMAF_ENGINE not set (expected the bundled frscore)");
  }
  return cfg;
}

double score_pair(const AudioBuffer& ref, const AudioBuffer& deg,
                  bool replication, Colormap colormap = Colormap::kHsv) {
  PipelineConfig cfg = engine_cfg();
  cfg.composer.replication = replication;
  cfg.composer.colormap = colormap;
  return audiovmaf_score_buffers(ref, deg, cfg).vmaf.pooled;
}

// Shared fixtures and results reused across criteria.
struct Context {
  AudioBuffer music10s;          // AC1, AC10
  ScoreResult identity10s;       // AC1 result
  double identity_runtime_s = 0;
  AudioBuffer music3s;           // AC4-AC6
  std::vector<double> hsv_ladder_scores;  // AC5, reused by AC6
};

// --- criterion 1 -----------------------------------------------------------

void ac1_identity_score(Context& ctx, Check& c) {
  ctx.music10s = make_music(201, 10.0, 48000, true);
  const auto t0 = std::chrono::steady_clock::now();
  ctx.identity10s =
      audiovmaf_score_buffers(ctx.music10s, ctx.music10s, engine_cfg());
  const auto t1 = std::chrono::steady_clock::now();
  ctx.identity_runtime_s =
      std::chrono::duration<double>(t1 - t0).count();

  c.expect(ctx.identity10s.vmaf.pooled >= 95.0,
           "pooled " + std::to_string(ctx.identity10s.vmaf.pooled) + " < 95");
  c.expect(ctx.identity_runtime_s < 60.0,
           "runtime " + std::to_string(ctx.identity_runtime_s) + "s >= 60s");
  c.detail << "pooled " << ctx.identity10s.vmaf.pooled << ", "
           << ctx.identity_runtime_s << " s";
}

// --- criterion 2 -----------------------------------------------------------

void ac2_calibration(Check& c) {
  const FrontendConfig cfg;
  const auto centers = erb_band_centers(cfg, 48000);
  double fc = centers[0];
  for (double center : centers) {
    if (std::fabs(center - 1000.0) < std::fabs(fc - 1000.0)) fc = center;
  }
  const auto x = make_sine(fc, dbfs_to_amplitude(-25.0), 0.5, 48000);
  const ErbSpectrogram spec = analyze_channel(x, 48000, cfg);
  int band = -1;
  for (int b = 0; b < spec.num_bands; ++b) {
    if (spec.band_centers[size_t(b)] == fc) band = b;
  }
  c.expect(band >= 0, "band for snapped center not found");
  double worst = 0.0;
  for (int col = 0; col < spec.num_columns; ++col) {
    worst = std::max(worst, std::fabs(spec.at(band, col) - 85.0));
  }
  c.expect(worst <= 0.5, "level deviates by " + std::to_string(worst) + " dB");
  c.detail << "center " << fc << " Hz, max |level-85| = " << worst << " dB";
}

// --- criterion 3 -----------------------------------------------------------

void ac3_geometry(Check& c) {
  const FrontendConfig fcfg;
  const ComposerConfig ccfg;

  const AudioBuffer stereo = make_music(202, 1.2, 48000, true);
  const auto stereo_specs = analyze_buffer(stereo, fcfg);
  const ComposedFrame sf = compose_frame(stereo_specs, 30, ccfg);
  auto px = [](const ComposedFrame& f, int r, int col) {
    const size_t i = (size_t(r) * size_t(f.width) + size_t(col)) * 3;
    return std::array<uint8_t, 3>{f.rgb[i], f.rgb[i + 1], f.rgb[i + 2]};
  };
  bool stereo_exact = true;
  for (int r = 0; r < 480 && stereo_exact; ++r) {
    for (int col = 0; col < 640; ++col) {
      if (px(sf, r, col) != px(sf, r % 240, col % 32)) {
        stereo_exact = false;
        break;
      }
    }
  }
  c.expect(stereo_exact, "stereo tiles are not pixel-identical 240x32 copies");

  const AudioBuffer mono = make_music(203, 1.2, 48000, false);
  const auto mono_specs = analyze_buffer(mono, fcfg);
  const ComposedFrame mf = compose_frame(mono_specs, 30, ccfg);
  bool mono_exact = true;
  for (int r = 0; r < 480 && mono_exact; ++r) {
    for (int col = 0; col < 640; ++col) {
      if (px(mf, r, col) != px(mf, r % 80, col % 32)) {
        mono_exact = false;
        break;
      }
    }
  }
  c.expect(mono_exact, "mono tiles are not pixel-identical 80x32 copies");

  // The base tiles must carry real structure for the check to mean much.
  bool varied = false;
  for (int r = 0; r < 240 && !varied; ++r) {
    for (int col = 0; col < 32; ++col) {
      if (px(sf, r, col) != px(sf, 0, 0)) {
        varied = true;
        break;
      }
    }
  }
  c.expect(varied, "stereo base tile is degenerate (uniform)");
  c.detail << "stereo 2x20 of 240x32, mono 6x20 of 80x32, pixel-exact";
}

// --- criterion 4 -----------------------------------------------------------

void ac4_anchor_ordering(Context& ctx, Check& c) {
  ctx.music3s = make_music(204, 3.0, 48000, true);
  const AudioBuffer& ref = ctx.music3s;
  const AudioBuffer lp7k = lowpass(ref, 7000.0);
  const AudioBuffer lp35 = lowpass(ref, 3500.0);

  const double on_full = score_pair(ref, ref, true);
  const double on_7k = score_pair(ref, lp7k, true);
  const double on_35 = score_pair(ref, lp35, true);
  c.expect(on_full > on_7k, "replication on: full <= 7k");
  c.expect(on_7k > on_35, "replication on: 7k <= 3.5k");

  const double off_full = score_pair(ref, ref, false);
  const double off_35 = score_pair(ref, lp35, false);
  const double gap_on = on_full - on_35;
  const double gap_off = off_full - off_35;
  c.expect(gap_off < gap_on, "replication off gap " + std::to_string(gap_off) +
                                 " not smaller than on gap " +
                                 std::to_string(gap_on));
  c.detail << "on: full " << on_full << " > 7k " << on_7k << " > 3.5k "
           << on_35 << "; gap on " << gap_on << " vs off " << gap_off;
}

// --- criterion 5 -----------------------------------------------------------

void ac5_noise_monotonicity(Context& ctx, Check& c) {
  const AudioBuffer& ref = ctx.music3s;
  const std::vector<double> snrs = {40.0, 30.0, 20.0, 10.0};

  ctx.hsv_ladder_scores.clear();
  std::vector<double> ssim_scores, ms_scores, vif_scores, gmsm_scores;
  const std::vector<double> ref_mid = downmix_mid(ref).samples[0];
  for (size_t i = 0; i < snrs.size(); ++i) {
    const AudioBuffer deg = add_noise_snr(ref, snrs[i], unsigned(300 + i));
    ctx.hsv_ladder_scores.push_back(score_pair(ref, deg, true));
    const std::vector<double> deg_mid = downmix_mid(deg).samples[0];
    ssim_scores.push_back(ssim_1d(ref_mid, deg_mid));
    ms_scores.push_back(ms_ssim_1d(ref_mid, deg_mid));
    vif_scores.push_back(vifp_1d(ref_mid, deg_mid));
    gmsm_scores.push_back(gms_1d(ref_mid, deg_mid).gmsm);
  }
  auto strictly_decreasing = [](const std::vector<double>& v) {
    for (size_t i = 1; i < v.size(); ++i) {
      if (!(v[i] < v[i - 1])) return false;
    }
    return true;
  };
  c.expect(strictly_decreasing(ctx.hsv_ladder_scores),
           "pooled scores not strictly decreasing");
  c.expect(strictly_decreasing(ssim_scores), "ssim_1d not strictly decreasing");
  c.expect(strictly_decreasing(ms_scores), "ms_ssim_1d not strictly decreasing");
  c.expect(strictly_decreasing(vif_scores), "vifp_1d not strictly decreasing");
  c.expect(strictly_decreasing(gmsm_scores), "gmsm_1d not strictly decreasing");
  c.detail << "pooled over SNR 40/30/20/10: ";
  for (double s : ctx.hsv_ladder_scores) c.detail << s << " ";
}

// --- criterion 6 -----------------------------------------------------------

void ac6_hsv_ablation(Context& ctx, Check& c) {
  const AudioBuffer& ref = ctx.music3s;
  const std::vector<double> snrs = {40.0, 30.0, 20.0, 10.0};
  std::vector<double> gray_scores;
  for (size_t i = 0; i < snrs.size(); ++i) {
    const AudioBuffer deg = add_noise_snr(ref, snrs[i], unsigned(300 + i));
    gray_scores.push_back(score_pair(ref, deg, true, Colormap::kGrayscale));
  }
  // Planted quality order: higher SNR is better.
  const std::vector<double> planted = {4.0, 3.0, 2.0, 1.0};
  const double rs_hsv = spearman(ctx.hsv_ladder_scores, planted);
  const double rs_gray = spearman(gray_scores, planted);
  c.expect(rs_hsv >= rs_gray, "hsv Rs " + std::to_string(rs_hsv) +
                                  " < grayscale Rs " + std::to_string(rs_gray));
  c.detail << "Rs hsv " << rs_hsv << " vs grayscale " << rs_gray;
}

// --- criterion 7 -----------------------------------------------------------

double brute_pearson(const std::vector<double>& x,
                     const std::vector<double>& y) {
  const size_t n = x.size();
  long double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  long double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return double(sxy / sqrtl(sxx * syy));
}

std::vector<double> brute_ranks(const std::vector<double>& x) {
  std::vector<double> r(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    size_t less = 0, equal = 0;
    for (size_t j = 0; j < x.size(); ++j) {
      if (x[j] < x[i]) ++less;
      if (x[j] == x[i]) ++equal;
    }
    r[i] = double(less) + (double(equal) + 1.0) / 2.0;
  }
  return r;
}

void ac7_statistics_oracle(Check& c) {
  std::mt19937 rng(401);
  std::uniform_real_distribution<double> unif(0.0, 100.0);
  std::uniform_int_distribution<int> len(3, 80);
  std::uniform_int_distribution<int> mode(0, 1);
  std::uniform_real_distribution<double> ci(1.0, 10.0);
  int tested = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = len(rng);
    std::vector<double> x(size_t(n), 0.0), y(size_t(n), 0.0);
    for (int i = 0; i < n; ++i) {
      x[size_t(i)] = mode(rng) ? std::round(unif(rng) / 10.0) : unif(rng);
      y[size_t(i)] = mode(rng) ? std::round(unif(rng) / 10.0) : unif(rng);
    }
    bool cx = true, cy = true;
    for (int i = 1; i < n; ++i) {
      cx = cx && x[size_t(i)] == x[0];
      cy = cy && y[size_t(i)] == y[0];
    }
    if (cx || cy) continue;
    ++tested;
    const double dp = std::fabs(pearson(x, y) - brute_pearson(x, y));
    const double ds = std::fabs(
        spearman(x, y) - brute_pearson(brute_ranks(x), brute_ranks(y)));
    worst = std::max({worst, dp, ds});

    // Outlier ratio against a direct counting loop.
    std::vector<EvaluationRecord> recs{size_t(n)};
    size_t outliers = 0;
    for (int i = 0; i < n; ++i) {
      recs[size_t(i)] =
          EvaluationRecord{"e", "c", false, x[size_t(i)],
                           std::min(100.0, y[size_t(i)]), ci(rng)};
      if (std::fabs(recs[size_t(i)].predicted - recs[size_t(i)].mos) >
          *recs[size_t(i)].ci95) {
        ++outliers;
      }
    }
    const double want_or = double(outliers) / double(n);
    worst = std::max(worst, std::fabs(outlier_ratio(recs) - want_or));
  }
  c.expect(tested >= 90, "too few usable random datasets");
  c.expect(worst <= 1e-12,
           "worst |impl - brute force| = " + std::to_string(worst));
  c.expect(pearson({1, 2, 3, 4}, {1, 3, 2, 4}) == 0.8,
           "pearson hand case not exactly 0.8");
  c.expect(spearman({1, 2, 3, 4}, {1, 3, 2, 4}) == 0.8,
           "spearman hand case not exactly 0.8");
  c.detail << tested << " datasets, worst deviation " << worst;
}

// --- criterion 8 -----------------------------------------------------------

void ac8_metric_identities(Check& c) {
  const auto x = make_music_channel(402, 0.2, 48000);
  const Metric1dReport r = run_metrics1d(x, x);
  c.expect(std::fabs(r.ssim - 1.0) <= 1e-9, "ssim identity off");
  c.expect(std::fabs(r.ms_ssim - 1.0) <= 1e-9, "ms_ssim identity off");
  c.expect(std::fabs(r.vifp - 1.0) <= 1e-9, "vifp identity off");
  c.expect(std::fabs(r.gmsm - 1.0) <= 1e-9, "gmsm identity off");
  c.expect(std::fabs(r.gmsd_raw) <= 1e-9, "gmsd identity off");

  // Local-moment helper vs per-window brute force.
  std::mt19937 rng(403);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const auto window = gaussian_window(11, 1.5);
  double worst = 0.0;
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> a(50), b(50);
    for (auto& v : a) v = unif(rng);
    for (auto& v : b) v = unif(rng);
    const LocalMoments m = windowed_moments(a, b, window);
    for (size_t i = 0; i < m.size(); ++i) {
      long double mx = 0, my = 0;
      for (size_t j = 0; j < window.size(); ++j) {
        mx += (long double)(window[j]) * a[i + j];
        my += (long double)(window[j]) * b[i + j];
      }
      long double vx = 0, vy = 0, cv = 0;
      for (size_t j = 0; j < window.size(); ++j) {
        vx += (long double)(window[j]) * (a[i + j] - mx) * (a[i + j] - mx);
        vy += (long double)(window[j]) * (b[i + j] - my) * (b[i + j] - my);
        cv += (long double)(window[j]) * (a[i + j] - mx) * (b[i + j] - my);
      }
      worst = std::max(worst, std::fabs(m.mu_x[i] - double(mx)));
      worst = std::max(worst, std::fabs(m.var_x[i] - double(vx)));
      worst = std::max(worst, std::fabs(m.var_y[i] - double(vy)));
      worst = std::max(worst, std::fabs(m.cov[i] - double(cv)));
    }
  }
  c.expect(worst <= 1e-12,
           "moment helper deviates by " + std::to_string(worst));
  c.detail << "identities exact, moment deviation " << worst;
}

// --- criterion 9 -----------------------------------------------------------

void ac9_determinism(Check& c) {
  const std::string cli = cli_path();
  if (cli.empty()) throw Error("AUDIOVMAF_CLI not set");
  TempDir tmp;
  const AudioBuffer ref = make_music(404, 1.5, 48000, true);
  const AudioBuffer deg = add_noise_snr(ref, 25.0, 8);
  write_wav(tmp.file("ref.wav"), ref);
  write_wav(tmp.file("deg.wav"), deg);

  const std::vector<std::string> argv = {cli, "score", tmp.file("ref.wav"),
                                         tmp.file("deg.wav")};
  const SubprocessResult a = run_subprocess(argv);
  const SubprocessResult b = run_subprocess(argv);
  c.expect(a.exit_code == 0, "first run failed: " + a.stderr_text);
  c.expect(b.exit_code == 0, "second run failed");
  c.expect(a.stdout_text == b.stdout_text, "JSON outputs differ between runs");
  c.expect(!a.stdout_text.empty(), "empty JSON output");
  c.detail << "two runs, " << a.stdout_text.size() << " identical bytes";
}

// --- criterion 10 ----------------------------------------------------------

void ac10_frame_accounting(Context& ctx, Check& c) {
  const PipelineConfig cfg = engine_cfg();
  for (const long n : {48000L, 123456L}) {
    AudioBuffer buf = make_music(405, 1.0, 48000, false);
    buf.samples[0] = make_music_channel(406, double(n) / 48000.0 + 0.1, 48000);
    buf.samples[0].resize(size_t(n));
    const ScoreResult r = audiovmaf_score_buffers(buf, buf, cfg);
    const long want = (n - 2048) / 1600 + 1;
    c.expect(r.frame_count == want,
             "N=" + std::to_string(n) + ": frames " +
                 std::to_string(r.frame_count) + " != " + std::to_string(want));
    c.expect(long(r.vmaf.per_frame.size()) == want,
             "N=" + std::to_string(n) + ": per-frame list length mismatch");
  }
  // N = 480000 is the 10 s identity run from criterion 1.
  c.expect(ctx.identity10s.frame_count == 299, "10 s fixture != 299 frames");
  c.expect(ctx.identity10s.vmaf.per_frame.size() == 299,
           "10 s fixture per-frame list != 299");
  c.detail << "N in {48000, 123456, 480000} -> {29, 76, 299}";
}

}  // namespace

int main() {
  Context ctx;
  struct Criterion {
    const char* name;
    const char* summary;
    std::function<void(Check&)> fn;
  };
  const std::vector<Criterion> criteria = {
      {"AC1", "identity score >= 95 within 60 s",
       [&](Check& c) { ac1_identity_score(ctx, c); }},
      {"AC2", "-25 dBFS sine calibrates to 85 +/- 0.5 dB SPL",
       [&](Check& c) { ac2_calibration(c); }},
      {"AC3", "stereo 2x20 of 240x32 and mono 6x20 of 80x32, pixel-exact",
       [&](Check& c) { ac3_geometry(c); }},
      {"AC4", "anchor ordering with replication; smaller gap without",
       [&](Check& c) { ac4_anchor_ordering(ctx, c); }},
      {"AC5", "scores fall strictly as SNR drops 40/30/20/10",
       [&](Check& c) { ac5_noise_monotonicity(ctx, c); }},
      {"AC6", "HSV ladder correlation >= grayscale ladder correlation",
       [&](Check& c) { ac6_hsv_ablation(ctx, c); }},
      {"AC7", "statistics match brute force within 1e-12",
       [&](Check& c) { ac7_statistics_oracle(c); }},
      {"AC8", "1D metric identities within 1e-9, moments within 1e-12",
       [&](Check& c) { ac8_metric_identities(c); }},
      {"AC9", "two end-to-end runs are byte-identical",
       [&](Check& c) { ac9_determinism(c); }},
      {"AC10", "frame counts follow floor((N-2048)/1600)+1",
       [&](Check& c) { ac10_frame_accounting(ctx, c); }},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Check check;
    try {
      criterion.fn(check);
    } catch (const std::exception& e) {
      check.ok = false;
      check.detail << "exception: " << e.what();
    }
    std::printf("%s %s — %s (%s)\n", criterion.name,
                check.ok ? "PASS" : "FAIL", criterion.summary,
                check.detail.str().c_str());
    std::fflush(stdout);
    if (!check.ok) ++failures;
  }
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu acceptance criteria passed\n", criteria.size());
  return 0;
}
