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

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "audiovmaf/engine.h"
#include "audiovmaf/subprocess.h"
#include "audiovmaf/video.h"
#include "testutil.h"

using namespace audiovmaf;
using namespace audiovmaf::testing;

namespace {

void write_avi(const std::string& path, int frames, uint8_t fill) {
  AviWriter writer(path, 64, 48, 30);
  std::vector<uint8_t> rgb(64 * 48 * 3, fill);
  for (int i = 0; i < frames; ++i) writer.write_frame(rgb);
  writer.close();
}

// Fake vmaf-style engine that extracts --output from its args and writes
// a canned report there.
void write_fake_engine(const std::string& path, const std::string& report) {
  write_script(path,
               "out=\"\"\n"
               "while [ $# -gt 0 ]; do\n"
               "  if [ \"$1\" = \"--output\" ]; then out=\"$2\"; shift; fi\n"
               "  shift\n"
               "done\n"
               "cat > \"$out\" <<'JSON'\n" +
                   report + "\nJSON\n");
}

constexpr const char* kThreeFrameReport = R"({
  "version": "fake 0.1",
  "frames": [
    {"frameNum": 0, "metrics": {"vmaf": 97.5}},
    {"frameNum": 1, "metrics": {"vmaf": 98.5}},
    {"frameNum": 2, "metrics": {"vmaf": 99.5}}
  ],
  "pooled_metrics": {"vmaf": {"mean": 98.5}}
})";

}  // namespace

TEST_CASE("parse_vmaf_report extracts frames and pools by mean") {
  const VmafResult r = parse_vmaf_report(kThreeFrameReport);
  REQUIRE(r.per_frame.size() == 3);
  CHECK(r.per_frame[0] == doctest::Approx(97.5));
  CHECK(r.per_frame[2] == doctest::Approx(99.5));
  double mean = 0.0;
  for (double v : r.per_frame) mean += v;
  mean /= double(r.per_frame.size());
  CHECK(r.pooled == doctest::Approx(mean).epsilon(1e-6));
}

TEST_CASE("parse_vmaf_report rejects malformed reports") {
  CHECK_THROWS_WITH_AS(parse_vmaf_report("this is not json"),
                       doctest::Contains("unparsable engine report"), Error);
  CHECK_THROWS_WITH_AS(parse_vmaf_report(R"({"frames": []})"),
                       doctest::Contains("unparsable engine report"), Error);
  CHECK_THROWS_WITH_AS(
      parse_vmaf_report(R"({"frames": [{"metrics": {"ssim": 1.0}}]})"),
      doctest::Contains("unparsable engine report"), Error);
}

TEST_CASE("run_vmaf drives a vmaf-style engine and records versions") {
  TempDir tmp;
  write_avi(tmp.file("ref.avi"), 3, 10);
  write_avi(tmp.file("deg.avi"), 3, 12);
  const std::string engine = tmp.file("fake_vmaf");
  write_fake_engine(engine, kThreeFrameReport);

  EngineSpec spec;
  spec.path = engine;
  std::vector<std::string> log;
  const VmafResult r =
      run_vmaf(tmp.file("ref.avi"), tmp.file("deg.avi"), spec, tmp.path(), &log);
  CHECK(r.per_frame.size() == 3);
  CHECK(r.pooled == doctest::Approx(98.5));
  CHECK(r.model_id == "vmaf_v0.6.1");  // pinned default, no explicit model
  REQUIRE(log.size() == 1);
  CHECK(log[0].find("--reference") != std::string::npos);
  CHECK(log[0].find(".y4m") != std::string::npos);
}

TEST_CASE("run_vmaf rejects frame-count mismatch before engine launch") {
  TempDir tmp;
  write_avi(tmp.file("ref.avi"), 3, 10);
  write_avi(tmp.file("deg.avi"), 2, 10);
  const std::string engine = tmp.file("fake_vmaf");
  // The fake proves it never ran by dropping a marker file.
  write_script(engine, "touch '" + tmp.file("ran") + "'\nexit 0\n");
  EngineSpec spec;
  spec.path = engine;
  CHECK_THROWS_WITH_AS(
      run_vmaf(tmp.file("ref.avi"), tmp.file("deg.avi"), spec, tmp.path()),
      doctest::Contains("frame-count mismatch"), Error);
  CHECK_FALSE(std::filesystem::exists(tmp.file("ran")));
}

TEST_CASE("run_vmaf surfaces engine failures with diagnostics") {
  TempDir tmp;
  write_avi(tmp.file("ref.avi"), 2, 10);
  write_avi(tmp.file("deg.avi"), 2, 10);
  const std::string engine = tmp.file("fake_vmaf");
  write_script(engine, "echo 'problem loading model' >&2\nexit 3\n");
  EngineSpec spec;
  spec.path = engine;
  CHECK_THROWS_WITH_AS(
      run_vmaf(tmp.file("ref.avi"), tmp.file("deg.avi"), spec, tmp.path()),
      doctest::Contains("problem loading model"), Error);
}

TEST_CASE("run_vmaf rejects an unparsable engine report") {
  TempDir tmp;
  write_avi(tmp.file("ref.avi"), 2, 10);
  write_avi(tmp.file("deg.avi"), 2, 10);
  const std::string engine = tmp.file("fake_vmaf");
  write_fake_engine(engine, "garbage, not json");
  EngineSpec spec;
  spec.path = engine;
  CHECK_THROWS_WITH_AS(
      run_vmaf(tmp.file("ref.avi"), tmp.file("deg.avi"), spec, tmp.path()),
      doctest::Contains("unparsable"), Error);
}

TEST_CASE("run_vmaf rejects a per-frame count that disagrees with the video") {
  TempDir tmp;
  write_avi(tmp.file("ref.avi"), 4, 10);
  write_avi(tmp.file("deg.avi"), 4, 10);
  const std::string engine = tmp.file("fake_vmaf");
  write_fake_engine(engine, kThreeFrameReport);  // 3 frames for 4-frame video
  EngineSpec spec;
  spec.path = engine;
  CHECK_THROWS_AS(
      run_vmaf(tmp.file("ref.avi"), tmp.file("deg.avi"), spec, tmp.path()),
      Error);
}

TEST_CASE("run_vmaf drives an ffmpeg-style engine through the filter path") {
  TempDir tmp;
  write_avi(tmp.file("ref.avi"), 3, 30);
  write_avi(tmp.file("deg.avi"), 3, 32);
  // Fake ffmpeg: pull log_path out of the -lavfi filter spec and write a
  // canned report there.
  const std::string engine = tmp.file("ffmpeg");
  write_script(engine,
               "filter=\"\"\n"
               "prev=\"\"\n"
               "for a in \"$@\"; do\n"
               "  if [ \"$prev\" = \"-lavfi\" ]; then filter=\"$a\"; fi\n"
               "  prev=\"$a\"\n"
               "done\n"
               "out=$(printf '%s' \"$filter\" | sed -n "
               "'s/.*log_path=\\([^:]*\\).*/\\1/p')\n"
               "cat > \"$out\" <<'JSON'\n" +
                   std::string(kThreeFrameReport) + "\nJSON\n");

  EngineSpec spec;
  spec.path = engine;  // basename "ffmpeg" selects the filter invocation
  std::vector<std::string> log;
  const VmafResult r =
      run_vmaf(tmp.file("ref.avi"), tmp.file("deg.avi"), spec, tmp.path(), &log);
  CHECK(r.per_frame.size() == 3);
  CHECK(r.pooled == doctest::Approx(98.5));
  REQUIRE(log.size() == 1);
  CHECK(log[0].find("-lavfi") != std::string::npos);
  CHECK(log[0].find("libvmaf") != std::string::npos);
  // Distorted input precedes the reference in the filter invocation.
  CHECK(log[0].find("deg.avi") < log[0].find("ref.avi"));
}

TEST_CASE("resolve_engine: explicit > env > PATH > bundled; errors when none") {
  TempDir tmp;
  const std::string saved_engine = env_or(kEngineEnvVar, "");
  const std::string engine = tmp.file("my_vmaf");
  write_script(engine, "exit 0\n");

  SUBCASE("explicit path wins and kind comes from the basename") {
    EngineSpec spec;
    spec.path = engine;
    const EngineSpec resolved = resolve_engine(spec);
    CHECK(resolved.path == engine);
    CHECK(resolved.kind == EngineKind::kVmafCli);
  }
  SUBCASE("ffmpeg basename selects the filter invocation") {
    const std::string ff = tmp.file("ffmpeg");
    write_script(ff, "exit 0\n");
    EngineSpec spec;
    spec.path = ff;
    CHECK(resolve_engine(spec).kind == EngineKind::kFfmpeg);
  }
  SUBCASE("environment variable is honored") {
    setenv(kEngineEnvVar, engine.c_str(), 1);
    const EngineSpec resolved = resolve_engine(EngineSpec{});
    CHECK(resolved.path == engine);
    setenv(kEngineEnvVar, saved_engine.c_str(), 1);
  }
  SUBCASE("nothing available is the 'engine not installed' error") {
    const char* saved_path = std::getenv("PATH");
    unsetenv(kEngineEnvVar);
    setenv("PATH", tmp.path().c_str(), 1);
    CHECK_THROWS_WITH_AS(resolve_engine(EngineSpec{}),
                         doctest::Contains("engine not installed"), Error);
    setenv("PATH", saved_path ? saved_path : "", 1);
    setenv(kEngineEnvVar, saved_engine.c_str(), 1);
  }
  SUBCASE("a configured model path must exist") {
    EngineSpec spec;
    spec.path = engine;
    spec.model_path = tmp.file("missing_model.json");
    CHECK_THROWS_WITH_AS(resolve_engine(spec),
                         doctest::Contains("model missing"), Error);
  }
  SUBCASE("a frscore binary next to the executable is the last resort") {
    const char* saved_path = std::getenv("PATH");
    unsetenv(kEngineEnvVar);
    setenv("PATH", tmp.path().c_str(), 1);
    const std::string bundled = tmp.file("frscore");
    write_script(bundled, "exit 0\n");
    const EngineSpec resolved = resolve_engine(EngineSpec{}, tmp.path());
    CHECK(resolved.path == bundled);
    CHECK(resolved.kind == EngineKind::kVmafCli);
    setenv("PATH", saved_path ? saved_path : "", 1);
    setenv(kEngineEnvVar, saved_engine.c_str(), 1);
  }
}

TEST_CASE("bundled frscore scores identical videos at 100") {
  const std::string engine = frscore_path();
  REQUIRE_MESSAGE(!engine.empty(), "AUDIOVMAF_ENGINE must point at frscore");
  TempDir tmp;
  // Non-trivial content so the score is not a constant-image artifact.
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> dist(0, 255);
  AviWriter writer(tmp.file("ref.avi"), 64, 48, 30);
  std::vector<uint8_t> rgb(64 * 48 * 3);
  for (int i = 0; i < 5; ++i) {
    for (auto& v : rgb) v = uint8_t(dist(rng));
    writer.write_frame(rgb);
  }
  writer.close();
  std::filesystem::copy_file(tmp.file("ref.avi"), tmp.file("deg.avi"));

  EngineSpec spec;
  spec.path = engine;
  const VmafResult r =
      run_vmaf(tmp.file("ref.avi"), tmp.file("deg.avi"), spec, tmp.path());
  REQUIRE(r.per_frame.size() == 5);
  for (double v : r.per_frame) CHECK(v == doctest::Approx(100.0).epsilon(1e-9));
  CHECK(r.engine_version.find("frscore") != std::string::npos);
}
