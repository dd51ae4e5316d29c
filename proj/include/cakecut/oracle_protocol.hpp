/*
 * Copyright 2026 The cakecut Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * \file cakecut/oracle_protocol.hpp
 *
 * \brief Line-delimited JSON protocol for out-of-process mechanisms.
 *
 * Request, one per line on the oracle's stdin:  {"A": <set>, "B": <set>}
 * Response, one per line on its stdout:         {"C": <set>, "D": <set>}
 * An oracle may answer {"error": "..."} instead of an allocation.
 *
 * SubprocessOracle is POSIX-only.
 */

#pragma once

#include <csignal>
#include <cstdio>
#include <istream>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>

#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include "cakecut/errors.hpp"
#include "cakecut/general_mechanism.hpp"
#include "cakecut/json_io.hpp"

namespace cakecut {

inline std::string encode_request(const IntervalSet& A, const IntervalSet& B) {
  return Json{{"A", A}, {"B", B}}.dump();
}

/// Answers requests from `in` until end of input. Malformed requests and
/// mechanism failures are reported in-band as {"error": ...}.
inline void serve_mechanism(const MechanismOracle& mech, std::istream& in, std::ostream& out) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json response;
    try {
      Json request = Json::parse(line);
      if (!request.is_object() || !request.contains("A") || !request.contains("B"))
        throw InputError("request must carry \"A\" and \"B\"");
      response = mech(request.at("A").get<IntervalSet>(), request.at("B").get<IntervalSet>());
    } catch (const std::exception& e) {
      response = Json{{"error", e.what()}};
    }
    out << response.dump() << '\n' << std::flush;
  }
}

/// A mechanism living in a child process started with `/bin/sh -c command`.
/// Calls are serialized; the child is closed and reaped on destruction.
class SubprocessOracle {
 public:
  explicit SubprocessOracle(const std::string& command) {
    int to_child[2], from_child[2];
    if (pipe(to_child) != 0) throw InvariantError("pipe() failed");
    if (pipe(from_child) != 0) {
      close(to_child[0]);
      close(to_child[1]);
      throw InvariantError("pipe() failed");
    }
    pid_ = fork();
    if (pid_ < 0) throw InvariantError("fork() failed");
    if (pid_ == 0) {
      dup2(to_child[0], STDIN_FILENO);
      dup2(from_child[1], STDOUT_FILENO);
      close(to_child[0]);
      close(to_child[1]);
      close(from_child[0]);
      close(from_child[1]);
      execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
      _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    writer_ = fdopen(to_child[1], "w");
    reader_ = fdopen(from_child[0], "r");
    if (!writer_ || !reader_) throw InvariantError("fdopen() failed");
    std::signal(SIGPIPE, SIG_IGN);
  }

  SubprocessOracle(const SubprocessOracle&) = delete;
  SubprocessOracle& operator=(const SubprocessOracle&) = delete;

  ~SubprocessOracle() {
    if (writer_) std::fclose(writer_);
    if (reader_) std::fclose(reader_);
    if (pid_ > 0) waitpid(pid_, nullptr, 0);
  }

  Allocation operator()(const IntervalSet& A, const IntervalSet& B) {
    std::lock_guard lock(mutex_);
    const std::string request = encode_request(A, B) + "\n";
    if (std::fputs(request.c_str(), writer_) < 0 || std::fflush(writer_) != 0)
      throw InvariantError("oracle process closed its input");
    std::string line;
    for (int ch; (ch = std::fgetc(reader_)) != EOF && ch != '\n';) line.push_back(static_cast<char>(ch));
    if (line.empty()) throw InvariantError("oracle process returned no response");
    Json response;
    try {
      response = Json::parse(line);
    } catch (const Json::exception& e) {
      throw InvariantError(std::string("oracle returned malformed JSON: ") + e.what());
    }
    if (response.is_object() && response.contains("error"))
      throw InvariantError("oracle reported an error: " + response.at("error").dump());
    return response.get<Allocation>();
  }

 private:
  pid_t pid_ = -1;
  std::FILE* writer_ = nullptr;
  std::FILE* reader_ = nullptr;
  std::mutex mutex_;
};

/// Wraps a shared subprocess as a MechanismOracle.
inline MechanismOracle subprocess_mechanism(std::shared_ptr<SubprocessOracle> oracle) {
  return [oracle = std::move(oracle)](const IntervalSet& A, const IntervalSet& B) { return (*oracle)(A, B); };
}

}  // namespace cakecut
