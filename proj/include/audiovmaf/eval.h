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

#ifndef AUDIOVMAF_EVAL_H_
#define AUDIOVMAF_EVAL_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace audiovmaf {

// One (excerpt, condition) row of a listening-test dataset.
struct EvaluationRecord {
  std::string excerpt_id;
  std::string condition;
  bool is_anchor = false;
  double predicted = 0.0;
  double mos = 0.0;                // subjective score, 0..100
  std::optional<double> ci95;      // half-width of the 95% CI
};

enum class AnchorFilter { kWith, kWithout };

struct CorrelationReport {
  std::string subset;  // "with_anchors" or "without_anchors"
  double r_pearson = 0.0;
  double r_spearman = 0.0;
  // Unset when any record lacks ci95 (noted by the CLI as null).
  std::optional<double> outlier_ratio;
  size_t n = 0;
};

// CSV schema: excerpt_id,condition,is_anchor,predicted,mos,ci95 with a
// mandatory header, dot decimals, ci95 may be empty. Malformed rows are
// reported with their line number.
std::vector<EvaluationRecord> load_records_csv(const std::string& path);

// Fraction of records with |predicted - mos| > ci95. Errors with
// "dataset lacks confidence intervals" if any ci95 is missing.
double outlier_ratio(const std::vector<EvaluationRecord>& records);

CorrelationReport correlate_records(std::vector<EvaluationRecord> records,
                                    AnchorFilter filter);

// Loads the CSV and computes the statistics for one anchor subset.
CorrelationReport evaluate_dataset(const std::string& csv_path,
                                   AnchorFilter filter);

// ----- bitrate ladder -----

struct LadderRungSpec {
  double bitrate_kbps = 0.0;
  std::string dir;
};

struct LadderRungReport {
  double bitrate_kbps = 0.0;
  double mean_score = 0.0;
  std::vector<std::pair<std::string, double>> per_excerpt;  // file -> score
};

struct LadderReport {
  std::vector<LadderRungReport> rungs;  // ascending bitrate
  bool monotone = false;                // means strictly increase
  bool insufficient_rungs = false;      // fewer than two rungs
  std::string verdict;                  // "monotone" | "non-monotone"
};

// Scores every (ref_dir/file, rung_dir/file) pair with `score_fn` and
// aggregates per rung. Every rung directory must contain exactly the
// reference excerpt set (error "excerpt-set mismatch" otherwise).
// `parallelism` pipelines run concurrently; output order is deterministic.
LadderReport ladder_report(
    const std::string& ref_dir, std::vector<LadderRungSpec> rungs,
    const std::function<double(const std::string& ref_path,
                               const std::string& coded_path)>& score_fn,
    int parallelism = 1);

// Plot-ready table: bitrate_kbps <TAB> mean_score <TAB> n.
std::string ladder_tsv(const LadderReport& report);

}  // namespace audiovmaf

#endif  // AUDIOVMAF_EVAL_H_
