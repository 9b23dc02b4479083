#include "process.hpp"

#include "graybench/error.hpp"

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>

extern char** environ;

namespace graybench::detail {

namespace {

// Unlinked temporary file; the descriptor closes on scope exit.
class ScratchFile {
 public:
  ScratchFile() {
    std::string pattern = (std::filesystem::temp_directory_path() / "graybench-XXXXXX").string();
    fd_ = ::mkstemp(pattern.data());
    if (fd_ < 0) throw Error(Errc::io, std::string("mkstemp: ") + std::strerror(errno));
    ::unlink(pattern.c_str());
  }
  ScratchFile(const ScratchFile&) = delete;
  ScratchFile& operator=(const ScratchFile&) = delete;
  ~ScratchFile() { ::close(fd_); }

  int fd() const noexcept { return fd_; }

  std::string slurp() const {
    std::string text;
    ::lseek(fd_, 0, SEEK_SET);
    char buf[4096];
    ssize_t n = 0;
    while ((n = ::read(fd_, buf, sizeof buf)) > 0) text.append(buf, static_cast<std::size_t>(n));
    return text;
  }

 private:
  int fd_ = -1;
};

class SpawnActions {
 public:
  SpawnActions() { posix_spawn_file_actions_init(&actions_); }
  SpawnActions(const SpawnActions&) = delete;
  SpawnActions& operator=(const SpawnActions&) = delete;
  ~SpawnActions() { posix_spawn_file_actions_destroy(&actions_); }
  posix_spawn_file_actions_t* get() noexcept { return &actions_; }

 private:
  posix_spawn_file_actions_t actions_;
};

}  // namespace

std::string ProcessResult::describe_status() const {
  if (signaled) return "killed by signal " + std::to_string(signal);
  return "exit status " + std::to_string(exit_code);
}

std::optional<std::filesystem::path> find_executable(std::string_view command) {
  if (command.empty()) return std::nullopt;
  if (command.find('/') != std::string_view::npos) {
    std::filesystem::path p(command);
    if (::access(p.c_str(), X_OK) == 0 && !std::filesystem::is_directory(p)) return p;
    return std::nullopt;
  }
  const char* path_env = std::getenv("PATH");
  std::string_view dirs = path_env ? path_env : "/usr/local/bin:/usr/bin:/bin";
  while (true) {
    const auto colon = dirs.find(':');
    std::string_view dir = dirs.substr(0, colon);
    std::filesystem::path candidate = std::filesystem::path(dir.empty() ? "." : dir) / command;
    if (::access(candidate.c_str(), X_OK) == 0 && !std::filesystem::is_directory(candidate)) {
      return candidate;
    }
    if (colon == std::string_view::npos) break;
    dirs.remove_prefix(colon + 1);
  }
  return std::nullopt;
}

ProcessResult run_process(const std::vector<std::string>& argv,
                          const std::function<std::chrono::nanoseconds()>& clock) {
  if (argv.empty()) throw Error(Errc::argument, "run_process: empty argv");
  ScratchFile out;
  ScratchFile err;
  SpawnActions actions;
  posix_spawn_file_actions_addopen(actions.get(), 0, "/dev/null", O_RDONLY, 0);
  posix_spawn_file_actions_adddup2(actions.get(), out.fd(), 1);
  posix_spawn_file_actions_adddup2(actions.get(), err.fd(), 2);

  std::vector<char*> args;
  args.reserve(argv.size() + 1);
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  ProcessResult result;
  if (clock) result.started = clock();
  pid_t pid = 0;
  const int rc = ::posix_spawnp(&pid, args[0], actions.get(), nullptr, args.data(), environ);
  if (rc != 0) {
    throw Error(Errc::environment, "cannot start '" + argv[0] + "': " + std::strerror(rc));
  }
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) throw Error(Errc::environment, std::string("waitpid: ") + std::strerror(errno));
  }
  if (clock) result.exited = clock();

  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.signaled = true;
    result.signal = WTERMSIG(status);
  }
  result.out = out.slurp();
  result.err = err.slurp();
  return result;
}

}  // namespace graybench::detail
