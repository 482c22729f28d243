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

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "audiovmaf/eval.h"
#include "audiovmaf/stats.h"
#include "testutil.h"

using namespace audiovmaf;
using namespace audiovmaf::testing;

namespace {

// Brute-force references, deliberately different routes than the
// implementation: two-pass long double Pearson and O(n^2) rank counting.
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

double brute_spearman(const std::vector<double>& x,
                      const std::vector<double>& y) {
  return brute_pearson(brute_ranks(x), brute_ranks(y));
}

void write_csv(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  out << "excerpt_id,condition,is_anchor,predicted,mos,ci95\n" << body;
}

}  // namespace

TEST_CASE("pearson hand examples") {
  CHECK(pearson({1, 2, 3}, {2, 4, 6}) == 1.0);
  CHECK(pearson({1, 2, 3}, {3, 2, 1}) == -1.0);
  // cov = 4, var_x = var_y = 5 -> exactly 0.8.
  CHECK(pearson({1, 2, 3, 4}, {1, 3, 2, 4}) == 0.8);
}

TEST_CASE("spearman hand examples") {
  CHECK(spearman({1, 5, 9, 11}, {2, 3, 40, 41}) == 1.0);
  CHECK(spearman({1, 2, 3, 4}, {1, 3, 2, 4}) == 0.8);
  // Ties get average ranks.
  CHECK(spearman({1, 2, 2, 3}, {10, 20, 20, 30}) == 1.0);
  const std::vector<double> ranks = average_ranks({1, 2, 2, 3});
  CHECK(ranks == std::vector<double>{1.0, 2.5, 2.5, 4.0});
}

TEST_CASE("correlation error cases") {
  CHECK_THROWS_WITH_AS(pearson({1, 1, 1}, {1, 2, 3}),
                       doctest::Contains("zero variance"), Error);
  CHECK_THROWS_AS(pearson({1, 2}, {1, 2}), Error);
  CHECK_THROWS_AS(pearson({1, 2, 3}, {1, 2}), Error);
  CHECK_THROWS_WITH_AS(spearman({5, 5, 5, 5}, {1, 2, 3, 4}),
                       doctest::Contains("zero variance"), Error);
}

TEST_CASE("pearson/spearman match brute force on 100 random datasets") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> unif(0.0, 100.0);
  std::uniform_int_distribution<int> len(3, 60);
  std::uniform_int_distribution<int> quantize(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = len(rng);
    std::vector<double> x(size_t(n), 0.0), y(size_t(n), 0.0);
    const bool ties = quantize(rng) == 1;
    for (int i = 0; i < n; ++i) {
      x[size_t(i)] = ties ? std::round(unif(rng) / 10.0) : unif(rng);
      y[size_t(i)] = ties ? std::round(unif(rng) / 10.0) : unif(rng);
    }
    // Skip degenerate draws.
    bool cx = true, cy = true;
    for (int i = 1; i < n; ++i) {
      cx = cx && x[size_t(i)] == x[0];
      cy = cy && y[size_t(i)] == y[0];
    }
    if (cx || cy) continue;
    CHECK(pearson(x, y) == doctest::Approx(brute_pearson(x, y)).epsilon(1e-12));
    CHECK(spearman(x, y) ==
          doctest::Approx(brute_spearman(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("spearman is invariant under strictly increasing transforms") {
  std::mt19937 rng(78);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(25), y(25);
    for (auto& v : x) v = unif(rng);
    for (auto& v : y) v = unif(rng);
    const double base = spearman(x, y);
    std::vector<double> fx = x;
    for (double& v : fx) v = 5.0 * std::exp(0.7 * v) + 2.0;
    CHECK(spearman(fx, y) == doctest::Approx(base).epsilon(1e-12));
    std::vector<double> gx = x;
    for (double& v : gx) v = std::atan(v) * 10.0;
    CHECK(spearman(gx, y) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("pearson is invariant under positive affine maps") {
  std::mt19937 rng(79);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  std::vector<double> x(30), y(30);
  for (auto& v : x) v = unif(rng);
  for (auto& v : y) v = unif(rng);
  const double base = pearson(x, y);
  std::vector<double> ax = x;
  for (double& v : ax) v = 3.5 * v + 11.0;
  CHECK(pearson(ax, y) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("outlier_ratio counts errors beyond the CI half-width") {
  std::vector<EvaluationRecord> recs(2);
  recs[0] = {"e1", "c", false, 50.0, 50.0, 5.0};
  recs[1] = {"e2", "c", false, 60.0, 70.0, 5.0};
  CHECK(outlier_ratio(recs) == 0.5);

  recs[1].predicted = recs[1].mos;
  CHECK(outlier_ratio(recs) == 0.0);

  recs[0].ci95.reset();
  CHECK_THROWS_WITH_AS(outlier_ratio(recs),
                       doctest::Contains("dataset lacks confidence intervals"),
                       Error);
}

TEST_CASE("csv loading validates header and rows") {
  TempDir tmp;
  SUBCASE("good file") {
    const std::string path = tmp.file("ok.csv");
    write_csv(path,
              "e1,codec@32,0,55.5,60.0,4.5\n"
              "e1,anchor35,1,90.0,30.0,\n");
    const auto recs = load_records_csv(path);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].predicted == 55.5);
    CHECK(recs[0].ci95.has_value());
    CHECK(recs[1].is_anchor);
    CHECK_FALSE(recs[1].ci95.has_value());
  }
  SUBCASE("bad header") {
    const std::string path = tmp.file("hdr.csv");
    std::ofstream(path) << "a,b,c\n1,2,3\n";
    CHECK_THROWS_WITH_AS(load_records_csv(path),
                         doctest::Contains("bad CSV header"), Error);
  }
  SUBCASE("malformed rows name their line numbers") {
    const std::string path = tmp.file("bad.csv");
    write_csv(path,
              "e1,c,0,55.5,60.0,4.5\n"
              "e2,c,0,not_a_number,60.0,4.5\n");
    CHECK_THROWS_WITH_AS(load_records_csv(path), doctest::Contains("line 3"),
                         Error);
  }
  SUBCASE("mos outside [0,100] is rejected") {
    const std::string path = tmp.file("range.csv");
    write_csv(path, "e1,c,0,55.5,160.0,4.5\n");
    CHECK_THROWS_AS(load_records_csv(path), Error);
  }
}

TEST_CASE("evaluate_dataset mirrors the with/without anchor split") {
  TempDir tmp;
  const std::string path = tmp.file("set.csv");
  // Plant a perfectly monotone prediction on non-anchors and two anchors
  // that are heavily overestimated.
  std::string body;
  for (int i = 0; i < 24; ++i) {
    const double mos = 20.0 + 3.0 * i;
    const double pred = 10.0 + 3.5 * i;
    body += "e" + std::to_string(i % 8) + ",codec@" + std::to_string(i) +
            ",0," + std::to_string(pred) + "," + std::to_string(mos) + ",4.0\n";
  }
  body += "a0,anchor35,1,95.0,20.0,4.0\n";
  body += "a1,anchor70,1,96.0,40.0,4.0\n";
  write_csv(path, body);

  const CorrelationReport with =
      evaluate_dataset(path, AnchorFilter::kWith);
  const CorrelationReport without =
      evaluate_dataset(path, AnchorFilter::kWithout);
  CHECK(with.subset == "with_anchors");
  CHECK(without.subset == "without_anchors");
  CHECK(with.n == 26);
  CHECK(without.n == 24);  // n drops by exactly the anchor count
  CHECK(without.r_spearman == doctest::Approx(1.0));
  CHECK(without.r_pearson == doctest::Approx(1.0));
  CHECK(with.r_spearman < 1.0);
  REQUIRE(with.outlier_ratio.has_value());
  // Brute-force outlier count over the non-anchor rows: |pred - mos| =
  // |0.5*i - 10| exceeds ci95=4 exactly for i < 12, so 12 of 24.
  REQUIRE(without.outlier_ratio.has_value());
  CHECK(*without.outlier_ratio == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("evaluate_dataset: predictions equal to MOS give identity stats") {
  TempDir tmp;
  const std::string path = tmp.file("perfect.csv");
  std::string body;
  for (int i = 0; i < 10; ++i) {
    const double mos = 30.0 + 5.0 * i;
    body += "e" + std::to_string(i) + ",c,0," + std::to_string(mos) + "," +
            std::to_string(mos) + ",2.0\n";
  }
  write_csv(path, body);
  const CorrelationReport r = evaluate_dataset(path, AnchorFilter::kWith);
  CHECK(r.r_pearson == doctest::Approx(1.0));
  CHECK(r.r_spearman == doctest::Approx(1.0));
  REQUIRE(r.outlier_ratio.has_value());
  CHECK(*r.outlier_ratio == 0.0);
}

TEST_CASE("ladder_report aggregates rungs and judges monotonicity") {
  TempDir tmp;
  namespace fs = std::filesystem;
  fs::create_directories(tmp.file("ref"));
  for (const char* rung : {"r32", "r64", "r128"}) {
    fs::create_directories(tmp.file(rung));
  }
  for (const char* name : {"a.wav", "b.wav", "c.wav"}) {
    std::ofstream(tmp.file("ref") + "/" + name) << "x";
    for (const char* rung : {"r32", "r64", "r128"}) {
      std::ofstream(tmp.file(rung) + "/" + name) << "x";
    }
  }

  // Stub scorer: higher-bitrate dirs score higher, with per-file jitter.
  auto score = [&](const std::string&, const std::string& coded) {
    double base = coded.find("r32") != std::string::npos    ? 50.0
                  : coded.find("r64") != std::string::npos  ? 70.0
                                                            : 90.0;
    base += coded.back() == 'v' ? 0.0 : 0.0;
    base += double(coded[coded.size() - 5] % 3);
    return base;
  };

  SUBCASE("ascending means give a monotone verdict") {
    const LadderReport report = ladder_report(
        tmp.file("ref"),
        {{32.0, tmp.file("r32")}, {128.0, tmp.file("r128")},
         {64.0, tmp.file("r64")}},
        score, 2);
    REQUIRE(report.rungs.size() == 3);
    CHECK(report.rungs[0].bitrate_kbps == 32.0);
    CHECK(report.rungs[2].bitrate_kbps == 128.0);
    CHECK(report.monotone);
    CHECK(report.verdict == "monotone");
    CHECK_FALSE(report.insufficient_rungs);
    const std::string tsv = ladder_tsv(report);
    CHECK(tsv.find("bitrate_kbps\tmean_score\tn") == 0);
  }
  SUBCASE("single rung is flagged insufficient") {
    const LadderReport report =
        ladder_report(tmp.file("ref"), {{32.0, tmp.file("r32")}}, score, 1);
    CHECK(report.monotone);
    CHECK(report.insufficient_rungs);
  }
  SUBCASE("mismatched excerpt sets error") {
    fs::create_directories(tmp.file("bad"));
    std::ofstream(tmp.file("bad") + "/a.wav") << "x";
    CHECK_THROWS_WITH_AS(
        ladder_report(tmp.file("ref"), {{32.0, tmp.file("bad")}}, score, 1),
        doctest::Contains("excerpt-set mismatch"), Error);
  }
}
