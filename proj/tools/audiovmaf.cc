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

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "audiovmaf/align.h"
#include "audiovmaf/composer.h"
#include "audiovmaf/eval.h"
#include "audiovmaf/media.h"
#include "audiovmaf/metrics1d.h"
#include "audiovmaf/pipeline.h"
#include "audiovmaf/png.h"
#include "audiovmaf/video.h"

namespace fs = std::filesystem;
using audiovmaf::Error;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "audiovmaf 1.0.0";

constexpr int kExitUsage = 1;
constexpr int kExitPipeline = 2;

std::string self_exe_dir() {
  char buf[4096];
  const ssize_t n = readlink("/proc/self/exe", buf, sizeof(buf) - 1);
  if (n <= 0) return "";
  buf[n] = '\0';
  return fs::path(buf).parent_path().string();
}

// Flags shared by every subcommand that runs the scoring pipeline.
struct PipelineFlags {
  audiovmaf::PipelineConfig cfg;
  std::string engine_kind = "auto";
  std::string colormap = "hsv";
  bool no_replication = false;
  std::string composer_config_file;
  std::string preset = "paper-default";
  bool verbose = false;

  void attach(CLI::App* cmd, bool with_engine) {
    cmd->add_option("--rate", cfg.target_rate,
                    "processing sample rate (Hz)")
        ->capture_default_str();
    cmd->add_option("--max-lag", cfg.max_lag_s,
                    "alignment search range (seconds)")
        ->capture_default_str();
    cmd->add_option("--num-bands", cfg.frontend.num_bands)
        ->capture_default_str();
    cmd->add_option("--fmin", cfg.frontend.f_min)->capture_default_str();
    cmd->add_option("--fmax", cfg.frontend.f_max)->capture_default_str();
    cmd->add_option("--window-len", cfg.frontend.window_len)
        ->capture_default_str();
    cmd->add_option("--hop", cfg.frontend.hop)->capture_default_str();
    cmd->add_option("--fps", cfg.frontend.fps)->capture_default_str();
    cmd->add_option("--columns-per-frame", cfg.composer.columns_per_frame)
        ->capture_default_str();
    cmd->add_option("--dynamic-range", cfg.composer.dynamic_range_db,
                    "composer dynamic range (dB)")
        ->capture_default_str();
    cmd->add_option("--db-ceiling", cfg.composer.db_ceiling,
                    "dB SPL mapped to index 255")
        ->capture_default_str();
    cmd->add_flag("--no-replication", no_replication,
                  "place one tile top-left instead of tiling the image");
    cmd->add_option("--colormap", colormap, "hsv|grayscale")
        ->capture_default_str();
    cmd->add_option("--composer-config", composer_config_file,
                    "key=value file overriding composer settings");
    cmd->add_option("--media-tool", cfg.media_tool,
                    "external demuxer for non-WAV input")
        ->capture_default_str();
    cmd->add_option("--preset", preset, "named default set")
        ->capture_default_str();
    cmd->add_flag("-v,--verbose", verbose, "log external commands to stderr");
    if (with_engine) {
      cmd->add_option("--engine", cfg.engine.path,
                      "VMAF engine binary (default: $AUDIOVMAF_ENGINE, then "
                      "vmaf/ffmpeg on PATH, then bundled frscore)");
      cmd->add_option("--engine-kind", engine_kind, "auto|vmaf|ffmpeg")
          ->capture_default_str();
      cmd->add_option("--model", cfg.engine.model_path,
                      "VMAF model file (default: $AUDIOVMAF_VMAF_MODEL or "
                      "the engine's stock model)");
      cmd->add_flag("--keep-intermediates", cfg.keep_intermediates,
                    "keep spectrogram videos and engine reports");
      cmd->add_option("--work-dir", cfg.work_dir,
                      "directory for intermediates (default: temp)");
    }
  }

  // Validates overrides against the module invariants before any work.
  void resolve(bool with_engine) {
    if (preset != "paper-default") {
      throw Error("unknown preset '" + preset + "'");
    }
    if (!composer_config_file.empty()) {
      cfg.composer = audiovmaf::parse_composer_config_file(
          composer_config_file, cfg.composer);
    }
    if (no_replication) cfg.composer.replication = false;
    if (colormap == "hsv") {
      cfg.composer.colormap = audiovmaf::Colormap::kHsv;
    } else if (colormap == "grayscale") {
      cfg.composer.colormap = audiovmaf::Colormap::kGrayscale;
    } else {
      throw Error("unknown colormap '" + colormap + "'");
    }
    if (engine_kind == "auto") {
      cfg.engine.kind = audiovmaf::EngineKind::kAuto;
    } else if (engine_kind == "vmaf") {
      cfg.engine.kind = audiovmaf::EngineKind::kVmafCli;
    } else if (engine_kind == "ffmpeg") {
      cfg.engine.kind = audiovmaf::EngineKind::kFfmpeg;
    } else {
      throw Error("unknown engine kind '" + engine_kind + "'");
    }
    cfg.log_commands = verbose;
    cfg.frontend.validate(cfg.target_rate);
    cfg.composer.validate();
    if (with_engine) {
      cfg.engine = audiovmaf::resolve_engine(cfg.engine, self_exe_dir());
    }
  }

  ojson config_json(bool with_engine) const {
    ojson j;
    j["preset"] = preset;
    j["target_rate"] = cfg.target_rate;
    j["max_lag_s"] = cfg.max_lag_s;
    j["frontend"] = {
        {"num_bands", cfg.frontend.num_bands},
        {"f_min", cfg.frontend.f_min},
        {"f_max", cfg.frontend.f_max},
        {"window_len", cfg.frontend.window_len},
        {"hop", cfg.frontend.hop},
        {"fps", cfg.frontend.fps},
        {"calibration",
         {{"dbfs_ref", cfg.frontend.calibration.dbfs_ref},
          {"spl_ref", cfg.frontend.calibration.spl_ref},
          {"offset_db", cfg.frontend.calibration.offset_db}}},
    };
    j["composer"] = {
        {"columns_per_frame", cfg.composer.columns_per_frame},
        {"image_height", cfg.composer.image_height},
        {"image_width", cfg.composer.image_width},
        {"dynamic_range_db", cfg.composer.dynamic_range_db},
        {"replication", cfg.composer.replication},
        {"colormap", cfg.composer.colormap == audiovmaf::Colormap::kHsv
                         ? "hsv"
                         : "grayscale"},
        {"db_ceiling", cfg.composer.db_ceiling},
    };
    if (with_engine) {
      j["engine"] = {
          {"path", cfg.engine.path},
          {"kind", cfg.engine.kind == audiovmaf::EngineKind::kVmafCli
                       ? "vmaf"
                       : "ffmpeg"},
          {"model_path", cfg.engine.model_path},
      };
    }
    j["media_tool"] = cfg.media_tool;
    return j;
  }
};

void emit(const ojson& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot write output file: " + out_path);
    out << text;
  }
}

// ---- score ----

int cmd_score(const std::string& ref, const std::string& coded,
              PipelineFlags& flags, const std::string& out_path) {
  const audiovmaf::ScoreResult result =
      audiovmaf::audiovmaf_score(ref, coded, flags.cfg);

  ojson j;
  j["tool"] = kToolVersion;
  j["subcommand"] = "score";
  j["inputs"] = {{"reference", ref}, {"coded", coded}};
  j["config"] = flags.config_json(true);
  j["alignment"] = {{"lag_samples", result.alignment.lag_samples},
                    {"peak_correlation", result.alignment.peak_correlation}};
  j["frame_count"] = result.frame_count;
  j["model_id"] = result.vmaf.model_id;
  j["engine_version"] = result.vmaf.engine_version;
  j["pooled"] = result.vmaf.pooled;
  j["per_frame"] = result.vmaf.per_frame;
  if (flags.cfg.keep_intermediates) {
    j["intermediates"] = {{"ref_video", result.ref_video_path},
                          {"deg_video", result.deg_video_path}};
    j["external_commands"] = result.external_commands;
  }
  emit(j, out_path);
  std::fprintf(stderr, "pooled score %.4f over %ld frames (lag %ld, model %s)\n",
               result.vmaf.pooled, result.frame_count,
               result.alignment.lag_samples, result.vmaf.model_id.c_str());
  return 0;
}

// ---- render ----

int cmd_render(const std::string& input, PipelineFlags& flags,
               const std::string& frames_dir, const std::string& video_path,
               const std::string& spec_dump_prefix,
               const std::string& out_path) {
  audiovmaf::ExtractOptions opt;
  opt.media_tool = flags.cfg.media_tool;
  opt.log_commands = flags.verbose;
  const audiovmaf::AudioBuffer buf =
      audiovmaf::extract_audio(input, flags.cfg.target_rate, opt);
  const std::vector<audiovmaf::ErbSpectrogram> specs =
      audiovmaf::analyze_buffer(buf, flags.cfg.frontend);

  ojson outputs;
  if (!spec_dump_prefix.empty()) {
    static const char* kSignalNames[3] = {"L", "R", "M"};
    ojson dumps = ojson::array();
    for (size_t s = 0; s < specs.size(); ++s) {
      const std::string name = specs.size() == 1
                                   ? spec_dump_prefix + ".erb"
                                   : spec_dump_prefix + "_" +
                                         kSignalNames[s] + ".erb";
      audiovmaf::dump_spectrogram(name, specs[s], flags.cfg.target_rate,
                                  flags.cfg.frontend.hop);
      dumps.push_back(name);
    }
    outputs["spectrogram_dumps"] = dumps;
  }

  long frames = 0;
  if (!frames_dir.empty()) {
    fs::create_directories(frames_dir);
  }
  std::unique_ptr<audiovmaf::AviWriter> writer;
  if (!video_path.empty()) {
    writer = std::make_unique<audiovmaf::AviWriter>(
        video_path, flags.cfg.composer.image_width,
        flags.cfg.composer.image_height, flags.cfg.frontend.fps);
  }
  audiovmaf::for_each_frame(
      specs, flags.cfg.composer, [&](const audiovmaf::ComposedFrame& frame) {
        if (!frames_dir.empty()) {
          char name[32];
          std::snprintf(name, sizeof(name), "frame_%05d.png",
                        frame.frame_index);
          audiovmaf::write_png((fs::path(frames_dir) / name).string(),
                               frame.width, frame.height, frame.rgb);
        }
        if (writer) writer->write_frame(frame.rgb);
        ++frames;
      });
  if (writer) writer->close();

  ojson j;
  j["tool"] = kToolVersion;
  j["subcommand"] = "render";
  j["inputs"] = {{"audio", input}};
  j["config"] = flags.config_json(false);
  j["frames"] = frames;
  if (!frames_dir.empty()) outputs["png_dir"] = frames_dir;
  if (!video_path.empty()) outputs["video"] = video_path;
  j["outputs"] = outputs;
  emit(j, out_path);
  std::fprintf(stderr, "rendered %ld frames\n", frames);
  return 0;
}

// ---- metrics1d ----

int cmd_metrics1d(const std::string& ref, const std::string& coded,
                  PipelineFlags& flags, const std::string& out_path) {
  audiovmaf::ExtractOptions opt;
  opt.media_tool = flags.cfg.media_tool;
  opt.log_commands = flags.verbose;
  const audiovmaf::AudioBuffer ref_buf =
      audiovmaf::extract_audio(ref, flags.cfg.target_rate, opt);
  const audiovmaf::AudioBuffer coded_buf =
      audiovmaf::extract_audio(coded, flags.cfg.target_rate, opt);
  if (ref_buf.num_channels() != coded_buf.num_channels()) {
    throw Error("channel layout mismatch between reference and coded audio");
  }

  auto [aligned, report] =
      audiovmaf::time_align(ref_buf, coded_buf, flags.cfg.max_lag_s);
  if (ref_buf.num_frames() != aligned.num_frames()) {
    throw Error("length mismatch after alignment");
  }

  const bool stereo = ref_buf.layout() == audiovmaf::ChannelLayout::kStereo;
  const std::vector<double> r =
      stereo ? audiovmaf::downmix_mid(ref_buf).samples[0] : ref_buf.samples[0];
  const std::vector<double> d =
      stereo ? audiovmaf::downmix_mid(aligned).samples[0] : aligned.samples[0];

  const audiovmaf::Metric1dConfig mcfg;
  const audiovmaf::Metric1dReport scores = audiovmaf::run_metrics1d(r, d, mcfg);

  ojson j;
  j["tool"] = kToolVersion;
  j["subcommand"] = "metrics1d";
  j["inputs"] = {{"reference", ref}, {"coded", coded}};
  j["config"] = {
      {"window_len", mcfg.window_len},
      {"window_sigma", mcfg.window_sigma},
      {"dynamic_range", mcfg.dynamic_range},
      {"ms_scales", mcfg.ms_scales},
      {"vif_scales", mcfg.vif_scales},
      {"k1", mcfg.k1},
      {"k2", mcfg.k2},
      {"vif_noise_var", mcfg.vif_noise_var},
      {"gms_c", mcfg.gms_c},
      {"target_rate", flags.cfg.target_rate},
      {"max_lag_s", flags.cfg.max_lag_s},
  };
  j["stereo_downmix"] = stereo ? "mid" : "mono-input";
  j["alignment"] = {{"lag_samples", report.lag_samples},
                    {"peak_correlation", report.peak_correlation}};
  j["scores"] = {
      {"ssim", scores.ssim},
      {"ms_ssim", scores.ms_ssim},
      {"vifp", scores.vifp},
      {"gmsm", scores.gmsm},
      {"gmsd_raw", scores.gmsd_raw},
      {"gmsd_paper_scaled", scores.gmsd_paper_scaled},
  };
  emit(j, out_path);
  std::fprintf(stderr,
               "ssim %.6f  ms_ssim %.6f  vifp %.6f  gmsm %.6f  gmsd %.6f\n",
               scores.ssim, scores.ms_ssim, scores.vifp, scores.gmsm,
               scores.gmsd_raw);
  return 0;
}

// ---- evaluate ----

ojson report_json(const audiovmaf::CorrelationReport& r) {
  ojson j;
  j["subset"] = r.subset;
  j["r_pearson"] = r.r_pearson;
  j["r_spearman"] = r.r_spearman;
  if (r.outlier_ratio.has_value()) {
    j["outlier_ratio"] = *r.outlier_ratio;
  } else {
    j["outlier_ratio"] = nullptr;
    j["outlier_ratio_note"] = "dataset lacks confidence intervals";
  }
  j["n"] = r.n;
  return j;
}

int cmd_evaluate(const std::string& csv, const std::string& subset,
                 const std::string& out_path) {
  const std::vector<audiovmaf::EvaluationRecord> records =
      audiovmaf::load_records_csv(csv);

  ojson j;
  j["tool"] = kToolVersion;
  j["subcommand"] = "evaluate";
  j["inputs"] = {{"dataset", csv}};
  j["config"] = {{"subset", subset}};
  ojson subsets = ojson::array();
  if (subset == "both" || subset == "with") {
    subsets.push_back(report_json(audiovmaf::correlate_records(
        records, audiovmaf::AnchorFilter::kWith)));
  }
  if (subset == "both" || subset == "without") {
    subsets.push_back(report_json(audiovmaf::correlate_records(
        records, audiovmaf::AnchorFilter::kWithout)));
  }
  if (subsets.empty()) {
    throw Error("unknown subset '" + subset + "' (with|without|both)");
  }
  j["subsets"] = subsets;
  emit(j, out_path);
  for (const auto& s : subsets) {
    std::fprintf(stderr, "%s: Rp %.4f  Rs %.4f  n %zu\n",
                 s["subset"].get<std::string>().c_str(),
                 s["r_pearson"].get<double>(), s["r_spearman"].get<double>(),
                 s["n"].get<size_t>());
  }
  return 0;
}

// ---- ladder ----

int cmd_ladder(const std::string& ref_dir,
               const std::vector<std::string>& rung_args, PipelineFlags& flags,
               int parallelism, const std::string& tsv_path,
               const std::string& out_path) {
  std::vector<audiovmaf::LadderRungSpec> rungs;
  for (const auto& arg : rung_args) {
    const size_t eq = arg.find('=');
    if (eq == std::string::npos) {
      throw Error("bad --rung '" + arg + "' (expected BITRATE_KBPS=DIR)");
    }
    audiovmaf::LadderRungSpec rung;
    try {
      rung.bitrate_kbps = std::stod(arg.substr(0, eq));
    } catch (const std::exception&) {
      throw Error("bad --rung bitrate in '" + arg + "'");
    }
    rung.dir = arg.substr(eq + 1);
    rungs.push_back(std::move(rung));
  }

  const audiovmaf::PipelineConfig cfg = flags.cfg;
  const audiovmaf::LadderReport report = audiovmaf::ladder_report(
      ref_dir, rungs,
      [&cfg](const std::string& r, const std::string& c) {
        return audiovmaf::audiovmaf_score(r, c, cfg).vmaf.pooled;
      },
      parallelism);

  ojson j;
  j["tool"] = kToolVersion;
  j["subcommand"] = "ladder";
  j["inputs"] = {{"ref_dir", ref_dir}};
  j["config"] = flags.config_json(true);
  j["config"]["parallelism"] = parallelism;
  ojson jr = ojson::array();
  for (const auto& rung : report.rungs) {
    ojson per = ojson::object();
    for (const auto& [name, score] : rung.per_excerpt) per[name] = score;
    jr.push_back({{"bitrate_kbps", rung.bitrate_kbps},
                  {"mean_score", rung.mean_score},
                  {"n", rung.per_excerpt.size()},
                  {"per_excerpt", per}});
  }
  j["rungs"] = jr;
  j["verdict"] = report.verdict;
  j["insufficient_rungs"] = report.insufficient_rungs;
  emit(j, out_path);

  if (!tsv_path.empty()) {
    std::ofstream tsv(tsv_path, std::ios::binary);
    if (!tsv) throw Error("cannot write TSV: " + tsv_path);
    tsv << audiovmaf::ladder_tsv(report);
  }
  std::fprintf(stderr, "ladder verdict: %s%s\n", report.verdict.c_str(),
               report.insufficient_rungs ? " (insufficient rungs)" : "");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coded-audio quality scoring via spectrogram videos and an "
               "external VMAF engine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  // Parent options (--out) may appear after the subcommand.
  app.fallthrough();

  std::string out_path;
  app.add_option("--out", out_path, "write the JSON report here (default stdout)");

  // score
  auto* score = app.add_subcommand("score", "score a reference/coded pair");
  std::string score_ref, score_coded;
  score->add_option("reference", score_ref)->required();
  score->add_option("coded", score_coded)->required();
  PipelineFlags score_flags;
  score_flags.attach(score, true);

  // render
  auto* render = app.add_subcommand(
      "render", "write spectrogram frames/video for one input");
  std::string render_input, render_dir, render_video, render_dump;
  render->add_option("audio", render_input)->required();
  render->add_option("--out-dir", render_dir, "PNG output directory");
  render->add_option("--video", render_video, "AVI output path");
  render->add_option("--dump-spectrogram", render_dump,
                     "binary spectrogram dump path prefix");
  PipelineFlags render_flags;
  render_flags.attach(render, false);

  // metrics1d
  auto* metrics = app.add_subcommand(
      "metrics1d", "1D baseline metrics on a reference/coded pair");
  std::string m_ref, m_coded;
  metrics->add_option("reference", m_ref)->required();
  metrics->add_option("coded", m_coded)->required();
  PipelineFlags metrics_flags;
  metrics_flags.attach(metrics, false);

  // evaluate
  auto* evaluate = app.add_subcommand(
      "evaluate", "correlation statistics for a prediction dataset");
  std::string eval_csv, eval_subset = "both";
  evaluate->add_option("dataset", eval_csv)->required();
  evaluate->add_option("--subset", eval_subset, "with|without|both")
      ->capture_default_str();

  // ladder
  auto* ladder = app.add_subcommand(
      "ladder", "mean scores across bitrate rungs of the same excerpts");
  std::string ladder_ref_dir, ladder_tsv_path;
  std::vector<std::string> ladder_rungs;
  int ladder_parallel = 1;
  ladder->add_option("--ref-dir", ladder_ref_dir)->required();
  ladder->add_option("--rung", ladder_rungs, "BITRATE_KBPS=DIR (repeatable)")
      ->required();
  ladder->add_option("--parallel", ladder_parallel,
                     "concurrent excerpt pipelines")
      ->capture_default_str();
  ladder->add_option("--tsv", ladder_tsv_path, "plot-ready table output");
  PipelineFlags ladder_flags;
  ladder_flags.attach(ladder, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  // Resolve and validate all overrides before any work starts; bad
  // configuration is a usage error.
  try {
    if (score->parsed()) score_flags.resolve(true);
    if (render->parsed()) render_flags.resolve(false);
    if (metrics->parsed()) metrics_flags.resolve(false);
    if (ladder->parsed()) ladder_flags.resolve(true);
    if (evaluate->parsed() && eval_subset != "with" &&
        eval_subset != "without" && eval_subset != "both") {
      throw Error("unknown subset '" + eval_subset + "'");
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "audiovmaf: %s\n", e.what());
    return kExitUsage;
  }

  try {
    if (score->parsed()) {
      return cmd_score(score_ref, score_coded, score_flags, out_path);
    }
    if (render->parsed()) {
      if (render_dir.empty() && render_video.empty() && render_dump.empty()) {
        std::fprintf(stderr,
                     "audiovmaf: render needs --out-dir, --video, or "
                     "--dump-spectrogram\n");
        return kExitUsage;
      }
      return cmd_render(render_input, render_flags, render_dir, render_video,
                        render_dump, out_path);
    }
    if (metrics->parsed()) {
      return cmd_metrics1d(m_ref, m_coded, metrics_flags, out_path);
    }
    if (evaluate->parsed()) {
      return cmd_evaluate(eval_csv, eval_subset, out_path);
    }
    if (ladder->parsed()) {
      return cmd_ladder(ladder_ref_dir, ladder_rungs, ladder_flags,
                        ladder_parallel, ladder_tsv_path, out_path);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "audiovmaf: %s\n", e.what());
    return kExitPipeline;
  }
  return 0;
}
