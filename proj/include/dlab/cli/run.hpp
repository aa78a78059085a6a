#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "dlab/cli/config.hpp"

namespace dlab::cli {

/// Collects the files and timings of one run. Files are written into a staging
/// directory and only moved into the output directory when the run succeeds.
class RunContext {
 public:
  explicit RunContext(std::filesystem::path staging) : staging_(std::move(staging)) {}

  /// Registers a file and returns the path to write it to.
  std::filesystem::path file(const std::string& name, const std::string& description);
  /// Times the enclosed step under `name`.
  template <class Fn>
  auto timed(const std::string& name, Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    struct Record {
      RunContext* ctx;
      std::string name;
      std::chrono::steady_clock::time_point t0;
      ~Record() {
        ctx->steps_.push_back({name, std::chrono::duration<double, std::milli>(
                                         std::chrono::steady_clock::now() - t0)
                                         .count()});
      }
    } rec{this, name, t0};
    return fn();
  }
  /// Free-form lines surfaced in the manifest and on stderr.
  void note(const std::string& line) { notes_.push_back(line); }

  struct Entry {
    std::string name, description;
  };
  struct Step {
    std::string name;
    double ms;
  };
  const std::vector<Entry>& files() const { return files_; }
  const std::vector<Step>& steps() const { return steps_; }
  const std::vector<std::string>& notes() const { return notes_; }
  const std::filesystem::path& staging() const { return staging_; }

 private:
  std::filesystem::path staging_;
  std::vector<Entry> files_;
  std::vector<Step> steps_;
  std::vector<std::string> notes_;
};

/// Runs one command body; throws ConfigError or BudgetExceeded on failure.
void run_command(const ExperimentConfig& cfg, RunContext& ctx);

/// Full run: lock, staging, command, manifest. Returns the manifest. On any
/// exception nothing is left in the output directory.
nlohmann::json run(const ExperimentConfig& cfg);

/// Library and toolchain versions recorded in manifests.
nlohmann::json version_info();

inline constexpr const char* kManifestName = "manifest.json";
inline constexpr const char* kLockName = ".dlab.lock";

}  // namespace dlab::cli
