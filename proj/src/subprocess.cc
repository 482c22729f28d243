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

#include "audiovmaf/subprocess.h"

#include <fcntl.h>
#include <poll.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <sstream>

#include "audiovmaf/audio.h"

namespace audiovmaf {

std::string join_command_line(const std::vector<std::string>& argv) {
  std::ostringstream os;
  for (size_t i = 0; i < argv.size(); ++i) {
    if (i) os << ' ';
    const bool needs_quotes = argv[i].find(' ') != std::string::npos;
    if (needs_quotes) os << '\'';
    os << argv[i];
    if (needs_quotes) os << '\'';
  }
  return os.str();
}

SubprocessResult run_subprocess(const std::vector<std::string>& argv) {
  if (argv.empty()) throw Error("empty command");

  int out_pipe[2], err_pipe[2], status_pipe[2];
  if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0 || pipe(status_pipe) != 0) {
    throw Error("pipe() failed");
  }
  // status_pipe reports exec failure back to the parent (O_CLOEXEC makes
  // it close silently on success).
  fcntl(status_pipe[1], F_SETFD, FD_CLOEXEC);

  const pid_t pid = fork();
  if (pid < 0) throw Error("fork() failed");
  if (pid == 0) {
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(err_pipe[1], STDERR_FILENO);
    close(out_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[0]);
    close(err_pipe[1]);
    close(status_pipe[0]);
    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const auto& s : argv) cargv.push_back(const_cast<char*>(s.c_str()));
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    const int err = errno;
    ssize_t ignored = write(status_pipe[1], &err, sizeof(err));
    (void)ignored;
    _exit(127);
  }

  close(out_pipe[1]);
  close(err_pipe[1]);
  close(status_pipe[1]);

  SubprocessResult result;
  result.command_line = join_command_line(argv);

  struct Stream {
    int fd;
    std::string* sink;
  } streams[2] = {{out_pipe[0], &result.stdout_text},
                  {err_pipe[0], &result.stderr_text}};
  int open_streams = 2;
  char buf[4096];
  while (open_streams > 0) {
    pollfd fds[2];
    int n_fds = 0;
    for (auto& s : streams) {
      if (s.fd >= 0) fds[n_fds++] = {s.fd, POLLIN, 0};
    }
    if (poll(fds, nfds_t(n_fds), -1) < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (int i = 0; i < n_fds; ++i) {
      if (!(fds[i].revents & (POLLIN | POLLHUP))) continue;
      for (auto& s : streams) {
        if (s.fd != fds[i].fd) continue;
        const ssize_t n = read(s.fd, buf, sizeof(buf));
        if (n > 0) {
          s.sink->append(buf, size_t(n));
        } else {
          close(s.fd);
          s.fd = -1;
          --open_streams;
        }
      }
    }
  }

  int exec_errno = 0;
  if (read(status_pipe[0], &exec_errno, sizeof(exec_errno)) ==
      sizeof(exec_errno)) {
    close(status_pipe[0]);
    int status;
    waitpid(pid, &status, 0);
    throw Error("cannot execute '" + argv[0] +
                "': " + std::strerror(exec_errno));
  }
  close(status_pipe[0]);

  int status = 0;
  waitpid(pid, &status, 0);
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.exit_code = 128 + WTERMSIG(status);
  }
  return result;
}

bool executable_exists(const std::string& name) {
  if (name.empty()) return false;
  if (name.find('/') != std::string::npos) {
    return access(name.c_str(), X_OK) == 0;
  }
  const char* path_env = std::getenv("PATH");
  if (!path_env) return false;
  std::istringstream is(path_env);
  std::string dir;
  while (std::getline(is, dir, ':')) {
    if (dir.empty()) continue;
    const std::string candidate = dir + "/" + name;
    if (access(candidate.c_str(), X_OK) == 0) return true;
  }
  return false;
}

}  // namespace audiovmaf
