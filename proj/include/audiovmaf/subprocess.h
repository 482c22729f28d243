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

#ifndef AUDIOVMAF_SUBPROCESS_H_
#define AUDIOVMAF_SUBPROCESS_H_

#include <string>
#include <vector>

namespace audiovmaf {

struct SubprocessResult {
  int exit_code = -1;
  std::string stdout_text;
  std::string stderr_text;
  std::string command_line;  // argv joined with spaces, for logging
};

// Runs argv[0] with execvp semantics, capturing stdout and stderr.
// Throws Error when the binary cannot be spawned at all; a nonzero exit
// is reported through exit_code, not an exception.
SubprocessResult run_subprocess(const std::vector<std::string>& argv);

// True if `name` resolves to an executable via PATH (or directly).
bool executable_exists(const std::string& name);

std::string join_command_line(const std::vector<std::string>& argv);

}  // namespace audiovmaf

#endif  // AUDIOVMAF_SUBPROCESS_H_
