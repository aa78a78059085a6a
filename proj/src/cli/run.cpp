#include "dlab/cli/run.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <boost/version.hpp>
#include <fstream>
#include <set>
#include <sstream>

#include "dlab/errors.hpp"
#include "dlab/util/fft.hpp"

#ifndef DLAB_VERSION
#define DLAB_VERSION "unknown"
#endif

namespace fs = std::filesystem;

namespace dlab::cli {

std::filesystem::path RunContext::file(const std::string& name, const std::string& description) {
  for (const auto& f : files_)
    if (f.name == name) throw std::logic_error("file registered twice: " + name);
  files_.push_back({name, description});
  return staging_ / name;
}

nlohmann::json version_info() {
  return {{"dlab", DLAB_VERSION},
          {"compiler", std::string("gcc ") + __VERSION__},
          {"fftw", fft_backend_version()},
          {"boost", BOOST_LIB_VERSION},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

namespace {

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// O_EXCL lock file holding the pid; released by the destructor.
class DirLock {
 public:
  explicit DirLock(fs::path p) : path_(std::move(p)) {
    const int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0)
      throw ConfigError("output directory is in use by another run (lock file " + path_.string() +
                        "; remove it if that run is gone)");
    const std::string pid = std::to_string(::getpid()) + "\n";
    [[maybe_unused]] auto n = ::write(fd, pid.data(), pid.size());
    ::close(fd);
  }
  ~DirLock() {
    std::error_code ec;
    fs::remove(path_, ec);
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  fs::path path_;
};

// Files a previous run recorded, so a rerun may replace them.
std::set<std::string> previous_outputs(const fs::path& dir) {
  std::set<std::string> out;
  const fs::path m = dir / kManifestName;
  if (!fs::exists(m)) return out;
  try {
    const auto j = nlohmann::json::parse(read_bytes(m));
    for (const auto& f : j.at("files")) out.insert(f.at("path").get<std::string>());
  } catch (const std::exception&) {
    throw ConfigError("output directory holds an unreadable " + std::string(kManifestName));
  }
  out.insert(kManifestName);
  return out;
}

}  // namespace

nlohmann::json run(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path out = cfg.out_dir();
  if (out.empty()) throw ConfigError("an output directory is required (--out DIR)");
  const bool created = !fs::exists(out);
  if (!created && !fs::is_directory(out)) throw ConfigError(out.string() + " exists and is not a directory");
  fs::create_directories(out);

  const fs::path staging = out / ".staging";
  auto cleanup_dir = [&] {
    std::error_code ec;
    fs::remove_all(staging, ec);
    if (created && fs::is_empty(out, ec)) fs::remove(out, ec);
  };

  nlohmann::json manifest;
  try {
    DirLock lock(out / kLockName);
    const auto previous = previous_outputs(out);
    for (const auto& e : fs::directory_iterator(out)) {
      const std::string name = e.path().filename().string();
      if (name == kLockName || name == ".staging" || previous.count(name)) continue;
      throw ConfigError("output directory " + out.string() + " holds '" + name +
                        "', which no earlier run recorded; use an empty or dlab-owned directory");
    }
    fs::remove_all(staging);
    fs::create_directory(staging);

    RunContext ctx(staging);
    run_command(cfg, ctx);

    for (const auto& name : previous) fs::remove(out / name);
    nlohmann::json files = nlohmann::json::array();
    for (const auto& f : ctx.files()) {
      const fs::path src = staging / f.name;
      if (!fs::exists(src)) throw std::logic_error("registered file was not written: " + f.name);
      const std::string bytes = read_bytes(src);
      files.push_back({{"path", f.name},
                       {"description", f.description},
                       {"bytes", bytes.size()},
                       {"fnv1a64", hex64(fnv1a64(bytes))}});
      fs::rename(src, out / f.name);
    }
    files.push_back({{"path", kManifestName}, {"description", "this manifest"}});
    fs::remove_all(staging);

    nlohmann::json steps = nlohmann::json::object();
    for (const auto& s : ctx.steps()) steps[s.name] = s.ms;
    const double total = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    nlohmann::json config = nlohmann::json::object();
    for (const auto& [k, v] : cfg.values()) config[k] = v;
    manifest = {{"tool", "dlab"},
                {"command", cfg.command()},
                {"config", config},
                {"config_hash", cfg.hash()},
                {"seed", cfg.seed()},
                {"versions", version_info()},
                {"files", files},
                {"notes", ctx.notes()},
                {"runtime_ms", {{"total", total}, {"steps", steps}}}};
    std::ofstream(out / kManifestName, std::ios::binary) << manifest.dump(2) << '\n';
  } catch (...) {
    cleanup_dir();
    throw;
  }
  return manifest;
}

}  // namespace dlab::cli
