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

#include "audiovmaf/eval.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <mutex>
#include <set>
#include <sstream>

#include "audiovmaf/audio.h"
#include "audiovmaf/stats.h"

namespace audiovmaf {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  fields.push_back(field);
  return fields;
}

double parse_double(const std::string& s, int line, const char* what) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error("CSV line " + std::to_string(line) + ": bad " + what + " '" +
                s + "'");
  }
}

}  // namespace

std::vector<EvaluationRecord> load_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset: " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error("empty dataset: " + path);

  const std::vector<std::string> header = split_csv_line(line);
  const std::vector<std::string> expected = {
      "excerpt_id", "condition", "is_anchor", "predicted", "mos", "ci95"};
  if (header != expected) {
    throw Error("bad CSV header in " + path +
                " (expected excerpt_id,condition,is_anchor,predicted,mos,"
                "ci95)");
  }

  std::vector<EvaluationRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != expected.size()) {
      throw Error("CSV line " + std::to_string(line_no) + ": expected " +
                  std::to_string(expected.size()) + " fields, got " +
                  std::to_string(f.size()));
    }
    EvaluationRecord rec;
    rec.excerpt_id = f[0];
    rec.condition = f[1];
    if (f[2] == "0") {
      rec.is_anchor = false;
    } else if (f[2] == "1") {
      rec.is_anchor = true;
    } else {
      throw Error("CSV line " + std::to_string(line_no) +
                  ": is_anchor must be 0 or 1");
    }
    rec.predicted = parse_double(f[3], line_no, "predicted");
    rec.mos = parse_double(f[4], line_no, "mos");
    if (!(rec.mos >= 0.0 && rec.mos <= 100.0)) {
      throw Error("CSV line " + std::to_string(line_no) +
                  ": mos out of [0,100]");
    }
    if (!f[5].empty()) {
      rec.ci95 = parse_double(f[5], line_no, "ci95");
      if (*rec.ci95 < 0.0) {
        throw Error("CSV line " + std::to_string(line_no) + ": ci95 < 0");
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

double outlier_ratio(const std::vector<EvaluationRecord>& records) {
  if (records.empty()) throw Error("no records");
  size_t outliers = 0;
  for (const auto& r : records) {
    if (!r.ci95.has_value()) {
      throw Error("dataset lacks confidence intervals");
    }
    if (std::fabs(r.predicted - r.mos) > *r.ci95) ++outliers;
  }
  return double(outliers) / double(records.size());
}

CorrelationReport correlate_records(std::vector<EvaluationRecord> records,
                                    AnchorFilter filter) {
  if (filter == AnchorFilter::kWithout) {
    records.erase(std::remove_if(records.begin(), records.end(),
                                 [](const EvaluationRecord& r) {
                                   return r.is_anchor;
                                 }),
                  records.end());
  }
  CorrelationReport report;
  report.subset =
      filter == AnchorFilter::kWith ? "with_anchors" : "without_anchors";
  report.n = records.size();

  std::vector<double> predicted, mos;
  predicted.reserve(records.size());
  mos.reserve(records.size());
  bool all_ci = !records.empty();
  for (const auto& r : records) {
    predicted.push_back(r.predicted);
    mos.push_back(r.mos);
    all_ci = all_ci && r.ci95.has_value();
  }
  report.r_pearson = pearson(predicted, mos);
  report.r_spearman = spearman(predicted, mos);
  if (all_ci) report.outlier_ratio = outlier_ratio(records);
  return report;
}

CorrelationReport evaluate_dataset(const std::string& csv_path,
                                   AnchorFilter filter) {
  return correlate_records(load_records_csv(csv_path), filter);
}

namespace {

std::set<std::string> audio_files_in(const std::string& dir) {
  if (!fs::is_directory(dir)) {
    throw Error("not a directory: " + dir);
  }
  std::set<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      names.insert(entry.path().filename().string());
    }
  }
  return names;
}

}  // namespace

LadderReport ladder_report(
    const std::string& ref_dir, std::vector<LadderRungSpec> rungs,
    const std::function<double(const std::string&, const std::string&)>&
        score_fn,
    int parallelism) {
  if (rungs.empty()) throw Error("no ladder rungs given");
  std::sort(rungs.begin(), rungs.end(),
            [](const LadderRungSpec& a, const LadderRungSpec& b) {
              return a.bitrate_kbps < b.bitrate_kbps;
            });
  const std::set<std::string> excerpts = audio_files_in(ref_dir);
  if (excerpts.empty()) throw Error("no excerpts in " + ref_dir);
  for (const auto& rung : rungs) {
    if (audio_files_in(rung.dir) != excerpts) {
      throw Error("excerpt-set mismatch: " + rung.dir +
                  " does not hold the reference excerpt set");
    }
  }

  struct Job {
    size_t rung;
    std::string name, ref_path, coded_path;
    double score = 0.0;
  };
  std::vector<Job> jobs;
  for (size_t r = 0; r < rungs.size(); ++r) {
    for (const auto& name : excerpts) {
      jobs.push_back({r, name, (fs::path(ref_dir) / name).string(),
                      (fs::path(rungs[r].dir) / name).string()});
    }
  }

  parallelism = std::max(1, parallelism);
  std::atomic<size_t> next{0};
  std::vector<std::future<void>> workers;
  std::mutex error_mutex;
  std::string first_error;
  for (int w = 0; w < parallelism; ++w) {
    workers.push_back(std::async(std::launch::async, [&] {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= jobs.size()) return;
        try {
          jobs[i].score = score_fn(jobs[i].ref_path, jobs[i].coded_path);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (first_error.empty()) {
            first_error = jobs[i].coded_path + ": " + e.what();
          }
        }
      }
    }));
  }
  for (auto& f : workers) f.get();
  if (!first_error.empty()) throw Error(first_error);

  LadderReport report;
  report.rungs.resize(rungs.size());
  for (size_t r = 0; r < rungs.size(); ++r) {
    report.rungs[r].bitrate_kbps = rungs[r].bitrate_kbps;
  }
  for (const auto& job : jobs) {
    report.rungs[job.rung].per_excerpt.emplace_back(job.name, job.score);
  }
  for (auto& rung : report.rungs) {
    double sum = 0.0;
    for (const auto& [name, score] : rung.per_excerpt) sum += score;
    rung.mean_score = sum / double(rung.per_excerpt.size());
  }

  report.insufficient_rungs = report.rungs.size() < 2;
  report.monotone = true;
  for (size_t r = 1; r < report.rungs.size(); ++r) {
    if (!(report.rungs[r].mean_score > report.rungs[r - 1].mean_score)) {
      report.monotone = false;
      break;
    }
  }
  report.verdict = report.monotone ? "monotone" : "non-monotone";
  return report;
}

std::string ladder_tsv(const LadderReport& report) {
  std::ostringstream os;
  os << "bitrate_kbps\tmean_score\tn\n";
  for (const auto& rung : report.rungs) {
    os << rung.bitrate_kbps << '\t' << rung.mean_score << '\t'
       << rung.per_excerpt.size() << '\n';
  }
  return os.str();
}

}  // namespace audiovmaf
