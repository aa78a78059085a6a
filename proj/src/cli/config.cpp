#include "dlab/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "dlab/errors.hpp"
#include "dlab/util/csv.hpp"

namespace dlab::cli {

namespace {

using T = ParamType;

std::vector<ParamDef> with_common(std::vector<ParamDef> p) {
  p.push_back({"seed", T::Int, "1", "seed for every random choice in the run"});
  p.push_back({"threads", T::Int, "0", "worker threads, 0 for all cores"});
  return p;
}

std::vector<CommandDef> build_table() {
  std::vector<CommandDef> t;
  t.push_back({"count", "exact solution counts S(N;b) of the paired power-sum system",
               with_common({{"d", T::Int, "3", "power d >= 2"},
                            {"b", T::Int, "2", "variables per side"},
                            {"N", T::IntList, "1", "range bounds, list or a..b or a..b*2"},
                            {"table", T::Flag, "false", "also write the (A,B) signature table per N"},
                            {"divisor", T::Flag, "false", "scan the three-variable divisor property (odd d)"},
                            {"memory_mb", T::Int, "1024", "memory budget"},
                            {"max_work", T::Real, "6e8", "cap on enumerated sorted tuples"}})});
  t.push_back({"strichartz", "lower envelopes for the discrete Strichartz constant",
               with_common({{"d", T::Int, "5", "curve degree"},
                            {"p", T::Int, "4", "even exponent"},
                            {"N", T::IntList, "8,16,32", "range bounds"},
                            {"strategies", T::Text, "all-ones,single,random,ascent", "comma list"},
                            {"random_draws", T::Int, "16", "random unit vectors"},
                            {"restarts", T::Int, "8", "ascent restarts"},
                            {"iterations", T::Int, "200", "ascent iterations"},
                            {"step", T::Real, "0.5", "initial ascent step"},
                            {"eps", T::Real, "0.05", "epsilon in the theoretical exponent"},
                            {"search_limit", T::Real, "2e4", "multisets per evaluation for search strategies"},
                            {"memory_mb", T::Int, "1024", "memory budget"}})});
  t.push_back({"levelset", "Monte Carlo level-set measures against their predicted decay",
               with_common({{"mode", T::Text, "curve", "curve (normalized exponential sum) or kernel"},
                            {"coefficients", T::Text, "ones", "curve mode: ones or random"},
                            {"d", T::Int, "3", "curve degree"},
                            {"N", T::Int, "64", "range bound"},
                            {"c", T::Real, "1", "constant in the lower end of the lambda range"},
                            {"eps", T::Real, "0.05", "epsilon"},
                            {"lambdas", T::Int, "16", "geometric lambda grid size"},
                            {"min_hits", T::Int, "25", "hits needed for a resolved row"},
                            {"samples", T::Int, "1000000", "samples per lambda (shared across lambdas)"},
                            {"z", T::Real, "1.96", "normal quantile for Wilson intervals"}})});
  t.push_back({"weyl", "minor-arc Weyl sum bounds, major arcs and Ramanujan-sum mass",
               with_common({{"d", T::Int, "3", "degree"},
                            {"N", T::IntList, "16,32,64", "Weyl sum lengths"},
                            {"eps", T::Real, "0.05", "epsilon"},
                            {"primes", T::Int, "4", "prime denominators per N"},
                            {"arcs_Q", T::Int, "10", "Q for the major-arc listing"},
                            {"lemma2_Q", T::IntList, "8..256*2", "Q values for the Ramanujan mass ratio"},
                            {"lemma2_n", T::IntList, "720720", "n values for the Ramanujan mass ratio"}})});
  t.push_back({"kernel", "kernel decomposition K_N = K_1 + K_2 diagnostics",
               with_common({{"d", T::Int, "3", "degree"},
                            {"N", T::IntList, "16,32,64,128", "range bounds; Q = N^(d-1)"},
                            {"k_dense", T::Int, "256", "dense prefix of the Phi-hat scan"},
                            {"structured", T::Int, "32", "structured k per family"},
                            {"random", T::Int, "256", "random k"},
                            {"samples", T::Int, "2000", "samples for the sup of |K_1|"}})});
  t.push_back({"illposed", "H^s growth of the first Picard iterate for two-mode data",
               with_common({{"p1", T::RealList, "0,0,1", "coefficients of P1 in powers of u"},
                            {"p2", T::RealList, "", "coefficients of P2 in powers of u"},
                            {"s", T::Real, "0.3", "Sobolev index"},
                            {"eps", T::Real, "1", "data amplitude"},
                            {"t", T::Real, "4", "time"},
                            {"N", T::IntList, "16..256*2", "frequencies"},
                            {"min_dominance", T::Real, "3", "warn below this secular to linear ratio"}})});
  const std::vector<ParamDef> flow = {
      {"phi", T::Text, "1:0.1,-1:0.1", "initial data as n:re[:im] terms"},
      {"delta", T::Real, "1e-3", "time horizon"},
      {"s", T::Real, "1", "Sobolev index of the diagnostics"},
      {"max_iter", T::Int, "8", "Picard iterations"},
      {"band_cap", T::Int, "64", "kept band"},
      {"term_cap", T::Int, "20000", "harmonic terms before switching to samples"},
      {"work_cap", T::Real, "2e8", "product work before switching to samples"},
      {"prune_tol", T::Real, "1e-24", "drop terms with |c| delta^j below this"},
      {"diag_samples", T::Int, "33", "time samples for diagnostics"},
      {"sampled_steps", T::Int, "2048", "time steps of the sampled fallback (even)"}};
  auto solve = flow;
  solve.push_back({"p1", T::RealList, "0,0,1", "coefficients of P1"});
  solve.push_back({"p2", T::RealList, "", "coefficients of P2"});
  solve.push_back({"mean_removed", T::Flag, "false", "subtract the spatial mean of each power in P1"});
  t.push_back({"solve", "Picard iteration with contraction diagnostics", with_common(solve)});
  auto gauge = flow;
  gauge.push_back({"k", T::Int, "2", "power in P1 = u^k"});
  t.push_back({"gauge-check", "mean-removed solve, gauge transform, residual in the full equation",
               with_common(gauge)});
  t.push_back({"embeddings", "windowed L4 norm against the X_{0,0.3} norm",
               with_common({{"N", T::IntList, "4,8,16,32,64", "band limits"},
                            {"trials", T::Int, "3", "random tables per N"},
                            {"delta", T::Real, "1", "window scale"},
                            {"samples", T::Int, "200000", "Monte Carlo samples per norm"}})});
  return t;
}

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

long long to_int(std::string_view s, const std::string& key) {
  const std::string t = trim(s);
  long long v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec == std::errc{} && p == t.data() + t.size() && !t.empty()) return v;
  // accept integral values written in floating form, e.g. 1e6
  double d = 0;
  auto [q, ec2] = std::from_chars(t.data(), t.data() + t.size(), d);
  if (ec2 == std::errc{} && q == t.data() + t.size() && !t.empty() && std::floor(d) == d && std::abs(d) < 9e18)
    return static_cast<long long>(d);
  throw ConfigError("parameter '" + key + "': '" + t + "' is not an integer");
}

double to_real(std::string_view s, const std::string& key) {
  const std::string t = trim(s);
  double v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size() || t.empty() || !std::isfinite(v))
    throw ConfigError("parameter '" + key + "': '" + t + "' is not a finite number");
  return v;
}

bool to_flag(std::string_view s, const std::string& key) {
  const std::string t = trim(s);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError("parameter '" + key + "': '" + t + "' is not a boolean");
}

template <class V>
std::string join(const std::vector<V>& v, auto&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt(v[i]);
  }
  return out;
}

std::string canonicalize(const ParamDef& def, const std::string& value) {
  switch (def.type) {
    case T::Int:
      return std::to_string(to_int(value, def.name));
    case T::Real:
      return format_double(to_real(value, def.name));
    case T::IntList:
      return join(parse_int_list(value, def.name), [](long long x) { return std::to_string(x); });
    case T::RealList:
      return join(parse_real_list(value, def.name), [](double x) { return format_double(x); });
    case T::Flag:
      return to_flag(value, def.name) ? "true" : "false";
    case T::Text:
      return trim(value);
  }
  return value;
}

}  // namespace

const std::vector<CommandDef>& command_table() {
  static const std::vector<CommandDef> table = build_table();
  return table;
}

const CommandDef& find_command(std::string_view name) {
  for (const auto& c : command_table())
    if (c.name == name) return c;
  throw ConfigError("unknown command '" + std::string(name) + "'");
}

std::vector<long long> parse_int_list(std::string_view text, const std::string& key) {
  std::vector<long long> out;
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("parameter '" + key + "': empty list");
  for (const auto& item : split(t, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(item, key));
      continue;
    }
    const long long lo = to_int(item.substr(0, dots), key);
    std::string rest = item.substr(dots + 2);
    long long factor = 0;
    if (const auto star = rest.find('*'); star != std::string::npos) {
      factor = to_int(rest.substr(star + 1), key);
      rest = rest.substr(0, star);
      if (factor < 2) throw ConfigError("parameter '" + key + "': range factor must be at least 2");
    }
    const long long hi = to_int(rest, key);
    if (hi < lo) throw ConfigError("parameter '" + key + "': range " + item + " is empty");
    if (factor == 0) {
      if (hi - lo > 1'000'000) throw ConfigError("parameter '" + key + "': range " + item + " is too long");
      for (long long v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      if (lo < 1) throw ConfigError("parameter '" + key + "': geometric range must start at 1 or more");
      for (long long v = lo; v <= hi; v *= factor) out.push_back(v);
    }
  }
  return out;
}

std::vector<double> parse_real_list(std::string_view text, const std::string& key) {
  std::vector<double> out;
  const std::string t = trim(text);
  if (t.empty()) return out;
  for (const auto& item : split(t, ',')) out.push_back(to_real(item, key));
  return out;
}

std::map<std::string, std::string> parse_config_text(std::string_view text, const std::string& origin) {
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  for (const auto& raw_line : split(text, '\n')) {
    ++line_no;
    std::string line = raw_line;
    if (const auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path.string());
}

ExperimentConfig ExperimentConfig::resolve(std::string_view command,
                                           const std::map<std::string, std::string>& file,
                                           const std::map<std::string, std::string>& flags,
                                           const std::filesystem::path& out_dir) {
  const CommandDef& def = find_command(command);
  ExperimentConfig cfg;
  cfg.command_ = def.name;
  cfg.out_dir_ = out_dir;
  auto lookup = [&](const std::string& key) -> const ParamDef* {
    for (const auto& p : def.params)
      if (p.name == key) return &p;
    return nullptr;
  };
  for (const auto* src : {&file, &flags})
    for (const auto& [k, v] : *src)
      if (!lookup(k)) throw ConfigError("unknown parameter '" + k + "' for command " + def.name);
  for (const auto& p : def.params) {
    std::string v = p.default_value;
    if (auto it = file.find(p.name); it != file.end()) v = it->second;
    if (auto it = flags.find(p.name); it != flags.end()) v = it->second;
    if (v.empty() && (p.type == T::Int || p.type == T::Real || p.type == T::IntList))
      throw ConfigError("parameter '" + p.name + "' needs a value");
    cfg.values_[p.name] = v.empty() ? v : canonicalize(p, v);
  }
  if (cfg.get_int("seed") < 0) throw ConfigError("seed must be nonnegative");
  if (cfg.get_int("threads") < 0) throw ConfigError("threads must be nonnegative");
  return cfg;
}

const std::string& ExperimentConfig::raw(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("parameter '" + key + "' is not defined for " + command_);
  return it->second;
}

long long ExperimentConfig::get_int(const std::string& key) const { return to_int(raw(key), key); }
double ExperimentConfig::get_real(const std::string& key) const { return to_real(raw(key), key); }
std::vector<long long> ExperimentConfig::get_int_list(const std::string& key) const {
  return parse_int_list(raw(key), key);
}
std::vector<double> ExperimentConfig::get_real_list(const std::string& key) const {
  return parse_real_list(raw(key), key);
}
const std::string& ExperimentConfig::get_text(const std::string& key) const { return raw(key); }
bool ExperimentConfig::get_flag(const std::string& key) const { return to_flag(raw(key), key); }

unsigned ExperimentConfig::threads() const {
  const long long t = get_int("threads");
  if (t > 0) return static_cast<unsigned>(t);
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string ExperimentConfig::canonical_text() const {
  std::string s = command_ + "\n";
  for (const auto& [k, v] : values_) s += k + "=" + v + "\n";
  return s;
}

std::string ExperimentConfig::hash() const { return hex64(fnv1a64(canonical_text())); }

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xf];
  return s;
}

}  // namespace dlab::cli
