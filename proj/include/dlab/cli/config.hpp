#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dlab::cli {

enum class ParamType { Int, Real, IntList, RealList, Text, Flag };

struct ParamDef {
  std::string name;
  ParamType type;
  std::string default_value;
  std::string help;
};

struct CommandDef {
  std::string name;
  std::string summary;
  std::vector<ParamDef> params;
};

/// Every subcommand with its typed parameters. Each also accepts `seed` and `threads`.
const std::vector<CommandDef>& command_table();
const CommandDef& find_command(std::string_view name);

/// key=value lines; '#' starts a comment, blank lines are skipped.
std::map<std::string, std::string> parse_config_text(std::string_view text, const std::string& origin);
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// Resolved configuration: defaults, then the file, then flags. Values are stored
/// in canonical text form so that hashing does not depend on how they were typed.
class ExperimentConfig {
 public:
  static ExperimentConfig resolve(std::string_view command, const std::map<std::string, std::string>& file,
                                  const std::map<std::string, std::string>& flags,
                                  const std::filesystem::path& out_dir);

  const std::string& command() const { return command_; }
  const std::filesystem::path& out_dir() const { return out_dir_; }
  const std::map<std::string, std::string>& values() const { return values_; }

  long long get_int(const std::string& key) const;
  double get_real(const std::string& key) const;
  std::vector<long long> get_int_list(const std::string& key) const;
  std::vector<double> get_real_list(const std::string& key) const;
  const std::string& get_text(const std::string& key) const;
  bool get_flag(const std::string& key) const;
  std::uint64_t seed() const { return static_cast<std::uint64_t>(get_int("seed")); }
  unsigned threads() const;

  /// "command\nkey=value\n..." in key order.
  std::string canonical_text() const;
  /// FNV-1a 64 of canonical_text, as 16 hex digits.
  std::string hash() const;

 private:
  const std::string& raw(const std::string& key) const;
  std::string command_;
  std::filesystem::path out_dir_;
  std::map<std::string, std::string> values_;
};

/// Integer list syntax: "8", "8,16,32", "8..64" (step 1) or "8..64*2" (doubling).
std::vector<long long> parse_int_list(std::string_view text, const std::string& key);
std::vector<double> parse_real_list(std::string_view text, const std::string& key);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

}  // namespace dlab::cli
