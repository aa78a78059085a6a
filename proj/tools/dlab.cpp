#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

#include "dlab/cli/config.hpp"
#include "dlab/cli/run.hpp"
#include "dlab/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

std::string param_help(const dlab::cli::CommandDef& c) {
  std::string s = "Parameters (--name value or --name=value; defaults in brackets):\n";
  for (const auto& p : c.params) s += "  --" + p.name + " [" + p.default_value + "]  " + p.help + "\n";
  return s;
}

// Leftover "--key value" / "--key=value" tokens become parameter overrides.
std::map<std::string, std::string> parse_overrides(const std::vector<std::string>& extras) {
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& tok = extras[i];
    if (tok.rfind("--", 0) != 0 || tok.size() < 3) throw dlab::ConfigError("unexpected argument '" + tok + "'");
    const std::string body = tok.substr(2);
    if (const auto eq = body.find('='); eq != std::string::npos) {
      out[body.substr(0, eq)] = body.substr(eq + 1);
    } else {
      if (i + 1 >= extras.size()) throw dlab::ConfigError("parameter '" + body + "' needs a value");
      out[body] = extras[++i];
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dlab: batch verification runs for discrete restriction and dispersive PDE experiments"};
  app.require_subcommand(1);
  struct Sub {
    CLI::App* app;
    std::string config;
    std::string out;
  };
  std::vector<Sub> subs;
  subs.reserve(dlab::cli::command_table().size());
  for (const auto& c : dlab::cli::command_table()) {
    auto* sc = app.add_subcommand(c.name, c.summary);
    sc->allow_extras();
    sc->footer(param_help(c));
    subs.push_back({sc, {}, {}});
    sc->add_option("--config", subs.back().config, "key=value file; flags override it");
    sc->add_option("--out", subs.back().out, "output directory")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  for (auto& s : subs) {
    if (!s.app->parsed()) continue;
    try {
      const auto flags = parse_overrides(s.app->remaining());
      const auto file = s.config.empty() ? std::map<std::string, std::string>{} : dlab::cli::read_config_file(s.config);
      const auto cfg = dlab::cli::ExperimentConfig::resolve(s.app->get_name(), file, flags, s.out);
      const auto manifest = dlab::cli::run(cfg);
      for (const auto& note : manifest["notes"]) std::cerr << "note: " << note.get<std::string>() << "\n";
      std::cout << "wrote " << manifest["files"].size() << " files to " << s.out << " (config "
                << cfg.hash() << ")\n";
      return 0;
    } catch (const dlab::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitConfig;
    } catch (const dlab::DomainError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitConfig;
    } catch (const dlab::BudgetExceeded& e) {
      std::cerr << "budget exceeded: " << e.what();
      if (e.suggested_N() > 0) std::cerr << " (largest N within budget: " << e.suggested_N() << ")";
      std::cerr << "\n";
      return kExitBudget;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return kExitConfig;
}
