#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace graybench::detail {

struct ProcessResult {
  int exit_code = -1;      // valid when !signaled
  bool signaled = false;
  int signal = 0;
  std::string out;
  std::string err;
  std::chrono::nanoseconds started{0};  // clock reading right before spawn
  std::chrono::nanoseconds exited{0};   // clock reading right after reap

  bool ok() const noexcept { return !signaled && exit_code == 0; }
  std::string describe_status() const;
};

/// Locates `command` the way execvp would. Commands containing '/' are
/// checked directly.
std::optional<std::filesystem::path> find_executable(std::string_view command);

/// Spawns argv (PATH lookup for argv[0]) and waits for it. stdout and stderr
/// are captured through temporary files so a chatty child never blocks.
/// `clock`, when set, is read immediately before the spawn and after the reap.
/// Throws Error(Errc::environment) when the process cannot be started.
ProcessResult run_process(const std::vector<std::string>& argv,
                          const std::function<std::chrono::nanoseconds()>& clock = {});

}  // namespace graybench::detail
