#include "graybench/matrix.hpp"

#include "build_info.hpp"
#include "graybench/error.hpp"
#include "graybench/imagekit.hpp"
#include "process.hpp"

#include <openssl/evp.h>
#include <sys/utsname.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>

namespace graybench {

namespace {

constexpr std::string_view kUnknown = "unknown";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

std::string join(const std::vector<std::string>& words, std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += sep;
    out += words[i];
  }
  return out;
}

bool is_label_token(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '.' || c == '+';
  });
}

[[noreturn]] void config_error(std::size_t line, const std::string& what) {
  throw Error(Errc::configuration, "config line " + std::to_string(line) + ": " + what);
}

bool parse_bool(std::string_view v, std::size_t line) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  config_error(line, "expected true or false, got '" + std::string(v) + "'");
}

std::string escape_value(std::string_view v) {
  std::string out;
  for (char c : v) {
    if (c == '\\') out += "\\\\";
    else if (c == '\n') out += "\\n";
    else if (c == '\r') continue;
    else out += c;
  }
  return out;
}

std::string unescape_value(std::string_view v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == '\\' && i + 1 < v.size()) {
      ++i;
      out += v[i] == 'n' ? '\n' : v[i];
    } else {
      out += v[i];
    }
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  if (!::gmtime_r(&now, &tm)) return std::string(kUnknown);
  char buf[32];
  if (std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm) == 0) return std::string(kUnknown);
  return buf;
}

std::string host_name() {
  char buf[256] = {};
  if (::gethostname(buf, sizeof buf - 1) != 0 || buf[0] == '\0') return std::string(kUnknown);
  return buf;
}

std::string os_description() {
  utsname u{};
  if (::uname(&u) != 0) return std::string(kUnknown);
  return std::string(u.sysname) + " " + u.release + " " + u.version + " " + u.machine;
}

std::string cpu_model() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    const auto key = trim(std::string_view(line).substr(0, colon));
    if (key == "model name" || key == "Model" || key == "cpu model") {
      const auto value = trim(std::string_view(line).substr(colon + 1));
      if (!value.empty()) return std::string(value);
    }
  }
  return std::string(kUnknown);
}

std::string compiler_self_report(const std::string& command) {
  if (!detail::find_executable(command)) return std::string(kUnknown);
  try {
    const auto proc = detail::run_process({command, "--version"});
    std::string text = proc.out.empty() ? proc.err : proc.out;
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    if (!proc.ok() || text.empty()) return std::string(kUnknown);
    return text;
  } catch (const Error&) {
    return std::string(kUnknown);
  }
}

struct EvpContextFree {
  void operator()(EVP_MD_CTX* ctx) const noexcept { EVP_MD_CTX_free(ctx); }
};

}  // namespace

// --- config -----------------------------------------------------------------

void MatrixConfig::validate() const {
  if (variants.empty()) throw Error(Errc::configuration, "no variants selected");
  if (!include_builtin && compilers.empty()) {
    throw Error(Errc::configuration, "need at least one compiler or include_builtin = true");
  }
  if (!compilers.empty() && flag_sets.empty()) {
    throw Error(Errc::configuration, "compilers given but no flag sets");
  }
  if (reps == 0) throw Error(Errc::configuration, "reps must be at least 1");
  std::set<std::string> seen;
  for (const auto& c : compilers) {
    if (!is_label_token(c.id)) throw Error(Errc::configuration, "invalid compiler id '" + c.id + "'");
    if (c.command.empty()) throw Error(Errc::configuration, "compiler '" + c.id + "' has no command");
    if (!seen.insert(c.id).second) throw Error(Errc::configuration, "duplicate compiler id '" + c.id + "'");
  }
  seen.clear();
  for (const auto& f : flag_sets) {
    if (!is_label_token(f.label)) throw Error(Errc::configuration, "invalid flag set label '" + f.label + "'");
    if (!seen.insert(f.label).second) {
      throw Error(Errc::configuration, "duplicate flag set label '" + f.label + "'");
    }
  }
}

MatrixConfig MatrixConfig::parse(std::string_view text) {
  MatrixConfig cfg;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) config_error(line_no, "expected 'key = value'");
    const auto lhs = split_ws(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (lhs.empty()) config_error(line_no, "missing key");
    const std::string& key = lhs[0];
    const auto want_plain = [&] {
      if (lhs.size() != 1) config_error(line_no, "'" + key + "' takes no name");
    };
    if (key == "variants") {
      want_plain();
      std::set<Variant> chosen;
      for (const auto& w : split_ws(value)) {
        auto v = try_parse_variant(w);
        if (!v) config_error(line_no, "unknown variant '" + w + "'");
        chosen.insert(*v);
      }
      cfg.variants.clear();
      for (Variant v : kAllVariants) {
        if (chosen.count(v)) cfg.variants.push_back(v);
      }
    } else if (key == "compiler") {
      if (lhs.size() != 2) config_error(line_no, "expected 'compiler <id> = <command>'");
      if (value.empty()) config_error(line_no, "compiler '" + lhs[1] + "' has no command");
      cfg.compilers.push_back({lhs[1], std::string(value)});
    } else if (key == "flags") {
      if (lhs.size() != 2) config_error(line_no, "expected 'flags <label> = <flags...>'");
      cfg.flag_sets.push_back({lhs[1], split_ws(value)});
    } else if (key == "include_builtin") {
      want_plain();
      cfg.include_builtin = parse_bool(value, line_no);
    } else if (key == "reps") {
      want_plain();
      unsigned reps = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), reps);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        config_error(line_no, "reps must be a positive integer");
      }
      cfg.reps = reps;
    } else if (key == "sizes") {
      want_plain();
      cfg.sizes = SizeSelector::parse(value);
    } else if (key == "corpus") {
      want_plain();
      cfg.corpus_dir = std::string(value);
    } else {
      config_error(line_no, "unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

std::string MatrixConfig::to_text() const {
  std::ostringstream out;
  out << "variants =";
  for (Variant v : variants) out << ' ' << to_string(v);
  out << '\n';
  for (const auto& c : compilers) out << "compiler " << c.id << " = " << c.command << '\n';
  for (const auto& f : flag_sets) {
    out << "flags " << f.label << " =";
    for (const auto& flag : f.flags) out << ' ' << flag;
    out << '\n';
  }
  out << "include_builtin = " << (include_builtin ? "true" : "false") << '\n';
  out << "reps = " << reps << '\n';
  out << "sizes = " << sizes.to_string() << '\n';
  if (!corpus_dir.empty()) out << "corpus = " << corpus_dir.string() << '\n';
  return out.str();
}

// --- labels and expansion ---------------------------------------------------

std::string JobLabel::to_string() const {
  return "c-" + compiler + "-" + flags + "-" + io + "-" + variant;
}

std::optional<JobLabel> JobLabel::parse(std::string_view label) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto dash = label.find('-', start);
    parts.push_back(label.substr(start, dash == std::string_view::npos ? std::string_view::npos : dash - start));
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  if (parts.size() != 5 || parts[0] != "c") return std::nullopt;
  for (std::size_t i = 1; i < 5; ++i) {
    if (!is_label_token(parts[i])) return std::nullopt;
  }
  return JobLabel{std::string(parts[1]), std::string(parts[2]), std::string(parts[3]), std::string(parts[4])};
}

std::vector<Job> expand(const MatrixConfig& config) {
  config.validate();
  std::vector<Job> jobs;
  for (const auto& compiler : config.compilers) {
    for (const auto& flags : config.flag_sets) {
      for (Variant v : config.variants) {
        const std::string label = JobLabel{compiler.id, flags.label, "unix", std::string(corpus_name(v))}.to_string();
        jobs.push_back(Job{TargetSpec::external(std::filesystem::path(label) / label, label),
                           Provenance{false, compiler.id, flags.label, v}});
      }
    }
  }
  if (config.include_builtin) {
    for (Variant v : config.variants) {
      jobs.push_back(Job{TargetSpec::builtin(v), Provenance{true, {}, {}, v}});
    }
  }
  if (jobs.empty()) throw Error(Errc::configuration, "configuration expands to no jobs");
  return jobs;
}

// --- manifests --------------------------------------------------------------

std::string ToolchainManifest::platform_line() const {
  std::string first_line = compiler_version.substr(0, compiler_version.find('\n'));
  return cpu + ", " + os.substr(0, os.find(' ', os.find(' ') + 1)) + ", " + first_line;
}

std::string sha256_file(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  std::unique_ptr<EVP_MD_CTX, EvpContextFree> ctx(EVP_MD_CTX_new());
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
    throw Error(Errc::io, path.string() + ": SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xF];
  }
  return hex;
}

ToolchainManifest capture_manifest(const ManifestProbe& probe) {
  ToolchainManifest m;
  m.label = probe.label.empty() ? std::string(kUnknown) : probe.label;
  m.timestamp = utc_timestamp();
  m.hostname = host_name();
  m.os = os_description();
  m.cpu = cpu_model();
  std::vector<std::filesystem::path> sources = probe.sources;
  if (probe.compiler_command.empty()) {
    m.compiler_id = probe.compiler_id.empty() ? GRAYBENCH_CXX_ID : probe.compiler_id;
#ifdef __VERSION__
    m.compiler_version = __VERSION__;
#else
    m.compiler_version = kUnknown;
#endif
    m.flags = probe.flags.empty() ? split_ws(GRAYBENCH_CXX_FLAGS) : probe.flags;
    // Builtin kernels are compiled into this executable.
    if (sources.empty()) {
      std::error_code ec;
      const auto self = std::filesystem::read_symlink("/proc/self/exe", ec);
      if (!ec) sources.push_back(self);
    }
  } else {
    m.compiler_id = probe.compiler_id.empty() ? probe.compiler_command : probe.compiler_id;
    m.compiler_version = compiler_self_report(probe.compiler_command);
    m.flags = probe.flags;
  }
  for (const auto& src : sources) {
    std::string digest(kUnknown);
    try {
      digest = sha256_file(src);
    } catch (const Error&) {
    }
    m.sources.push_back({src.filename().string(), digest});
  }
  m.harness_version = GRAYBENCH_VERSION;
  m.timer_resolution = timer_resolution_seconds();
  return m;
}

std::string format_manifests(std::span<const ToolchainManifest> manifests) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < manifests.size(); ++i) {
    const auto& m = manifests[i];
    if (i) out << '\n';
    out << "label: " << escape_value(m.label) << '\n'
        << "timestamp: " << escape_value(m.timestamp) << '\n'
        << "hostname: " << escape_value(m.hostname) << '\n'
        << "os: " << escape_value(m.os) << '\n'
        << "cpu: " << escape_value(m.cpu) << '\n'
        << "compiler_id: " << escape_value(m.compiler_id) << '\n'
        << "compiler_version: " << escape_value(m.compiler_version) << '\n'
        << "flags: " << escape_value(join(m.flags)) << '\n';
    for (const auto& s : m.sources) out << "source: " << escape_value(s.file) << ' ' << s.sha256 << '\n';
    out << "harness_version: " << escape_value(m.harness_version) << '\n'
        << "timer_resolution_seconds: " << m.timer_resolution << '\n';
  }
  return out.str();
}

std::vector<ToolchainManifest> parse_manifests(std::string_view text) {
  std::vector<ToolchainManifest> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  ToolchainManifest* current = nullptr;
  while (std::getline(in, raw)) {
    ++line_no;
    if (trim(raw).empty()) {
      current = nullptr;
      continue;
    }
    const auto colon = raw.find(": ");
    const std::string key = raw.substr(0, colon == std::string::npos ? raw.find(':') : colon);
    const std::string value = colon == std::string::npos ? std::string() : raw.substr(colon + 2);
    if (key == "label") {
      out.emplace_back();
      current = &out.back();
      current->label = unescape_value(value);
      continue;
    }
    if (!current) {
      throw Error(Errc::schema, "manifest line " + std::to_string(line_no) + ": record must start with 'label:'");
    }
    if (key == "timestamp") current->timestamp = unescape_value(value);
    else if (key == "hostname") current->hostname = unescape_value(value);
    else if (key == "os") current->os = unescape_value(value);
    else if (key == "cpu") current->cpu = unescape_value(value);
    else if (key == "compiler_id") current->compiler_id = unescape_value(value);
    else if (key == "compiler_version") current->compiler_version = unescape_value(value);
    else if (key == "flags") current->flags = split_ws(unescape_value(value));
    else if (key == "source") {
      const auto sp = value.rfind(' ');
      if (sp == std::string::npos) {
        throw Error(Errc::schema, "manifest line " + std::to_string(line_no) + ": malformed source entry");
      }
      current->sources.push_back({unescape_value(value.substr(0, sp)), value.substr(sp + 1)});
    } else if (key == "harness_version") current->harness_version = unescape_value(value);
    else if (key == "timer_resolution_seconds") current->timer_resolution = std::stod(value);
    else throw Error(Errc::schema, "manifest line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  return out;
}

// --- builds -----------------------------------------------------------------

std::string corpus_body_file(Variant variant) { return std::string(corpus_name(variant)) + ".c"; }

BuildResult build_external(Variant variant, const CompilerSpec& compiler, const FlagSet& flag_set,
                           const std::filesystem::path& corpus_dir, const std::filesystem::path& out_dir) {
  if (!detail::find_executable(compiler.command)) {
    throw Error(Errc::environment, "compiler '" + compiler.command + "' not found");
  }
  const std::vector<std::filesystem::path> sources = {
      corpus_dir / kCorpusDriver, corpus_dir / corpus_body_file(variant), corpus_dir / kCorpusIoUnit};
  for (const auto& s : sources) {
    if (!std::filesystem::is_regular_file(s)) throw Error(Errc::io, s.string() + ": corpus source missing");
  }

  const std::string label =
      JobLabel{compiler.id, flag_set.label, "unix", std::string(corpus_name(variant))}.to_string();
  const auto job_dir = out_dir / label;
  std::filesystem::create_directories(job_dir);
  const auto exe = std::filesystem::absolute(job_dir / label);

  std::vector<std::string> argv{compiler.command};
  argv.insert(argv.end(), flag_set.flags.begin(), flag_set.flags.end());
  argv.push_back("-o");
  argv.push_back(exe.string());
  for (const auto& s : sources) argv.push_back(s.string());

  detail::ProcessResult proc;
  {
    std::shared_lock lock(measurement_lock());
    proc = detail::run_process(argv);
  }
  if (!proc.ok()) {
    throw Error(Errc::build, label + ": " + compiler.command + " " + proc.describe_status() + "\n" + proc.err);
  }
  return {exe, capture_manifest(ManifestProbe{label, compiler.id, compiler.command, flag_set.flags, sources})};
}

std::vector<JobOutcome> run_matrix(const MatrixConfig& config, const std::filesystem::path& out_dir,
                                   const JobProgressFn& progress) {
  const auto jobs = expand(config);
  const auto build_dir = out_dir / "build";
  const auto work_dir = out_dir / "work";
  std::filesystem::create_directories(work_dir);

  std::vector<JobOutcome> outcomes;
  outcomes.reserve(jobs.size());
  for (const Job& job : jobs) {
    JobOutcome outcome{job, std::nullopt, {}, {}};
    if (job.provenance.builtin) {
      outcome.manifest = capture_manifest(ManifestProbe{job.label(), {}, {}, {}, {}});
    } else {
      const auto compiler = std::find_if(config.compilers.begin(), config.compilers.end(),
                                         [&](const CompilerSpec& c) { return c.id == job.provenance.compiler_id; });
      const auto flags = std::find_if(config.flag_sets.begin(), config.flag_sets.end(),
                                      [&](const FlagSet& f) { return f.label == job.provenance.flag_label; });
      try {
        auto built = build_external(job.provenance.variant, *compiler, *flags, config.corpus_dir, build_dir);
        outcome.job.target = TargetSpec::external(built.executable, job.label());
        outcome.manifest = std::move(built.manifest);
      } catch (const Error& e) {
        outcome.build_error = e.what();
      }
    }
    outcomes.push_back(std::move(outcome));
  }

  const Runner runner(RunnerOptions{work_dir, {}, 0.0});
  const auto specs = config.sizes.select();
  for (auto& outcome : outcomes) {
    if (!outcome.build_error.empty()) continue;
    outcome.entries = runner.run_suite(outcome.job.target, specs, config.reps, [&](const SuiteProgress& p) {
      if (progress) progress(outcome.job, p);
    });
  }
  return outcomes;
}

}  // namespace graybench
