#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "cli_core.hpp"
#include "ggsum/errors.hpp"
#include "ggsum/version.hpp"

namespace ggsum::cli {

namespace {

struct LeafState {
  std::string command;
  std::map<std::string, std::string> flags;
  std::string config_path;
  std::string output_path;
  CLI::App* sub = nullptr;
};

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{
      "Sums of Gamma-Gamma variates: closed-form approximations, BER and "
      "outage metrics for MRC and MIMO optical receivers, and a seeded "
      "Monte-Carlo oracle"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::map<std::string, CLI::App*> groups;
  std::vector<std::shared_ptr<LeafState>> leaves;

  for (const auto& [command, options] : command_schemas()) {
    std::stringstream cs(command);
    std::string group, verb;
    cs >> group >> verb;
    if (!groups.count(group)) {
      groups[group] = app.add_subcommand(group);
      groups[group]->require_subcommand(1);
    }
    auto state = std::make_shared<LeafState>();
    state->command = command;
    state->sub = groups[group]->add_subcommand(verb);
    for (const auto& opt : options) {
      const std::string name = std::string("--") + opt.key;
      if (opt.is_flag) {
        state->sub->add_flag_callback(
            name, [state, key = std::string(opt.key)] {
              state->flags[key] = "true";
            },
            opt.help);
      } else {
        state->sub->add_option_function<std::string>(
            name,
            [state, key = std::string(opt.key)](const std::string& v) {
              state->flags[key] = v;
            },
            opt.help);
      }
    }
    state->sub->add_option("--config", state->config_path,
                           "key = value file; flags override its entries");
    state->sub->add_option("-o,--output", state->output_path,
                           "write the report to this file instead of stdout");
    leaves.push_back(state);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto leaf = std::find_if(leaves.begin(), leaves.end(),
                                 [](const auto& l) { return l->sub->parsed(); });
  if (leaf == leaves.end()) {
    std::cerr << "error: no command selected\n";
    return 2;
  }

  RunConfig cfg;
  cfg.command = (*leaf)->command;
  try {
    if (!(*leaf)->config_path.empty()) {
      std::ifstream in((*leaf)->config_path);
      if (!in)
        throw ValidationError("cannot open config file " + (*leaf)->config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      cfg.params = parse_config_text(buf.str());
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  for (const auto& [key, value] : (*leaf)->flags) cfg.params[key] = value;

  if ((*leaf)->output_path.empty()) return run_command(cfg, std::cout, std::cerr);
  std::ofstream out((*leaf)->output_path);
  if (!out) {
    std::cerr << "error: cannot open output file " << (*leaf)->output_path
              << "\n";
    return 2;
  }
  return run_command(cfg, out, std::cerr);
}

}  // namespace ggsum::cli
