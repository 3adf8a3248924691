#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "szeta/cli/commands.hpp"
#include "szeta/error.hpp"

using namespace szeta::cli;

int main(int argc, char** argv) {
  CLI::App app{"Explicit-formula and S(t) bound toolkit"};
  app.require_subcommand(1);

  std::string config_path, zeros, cache, out_path, tol, workers, l, height;
  std::vector<std::string> sets;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--zeros", zeros, "published zero table");
    sub->add_option("--cache", cache, "zero cache directory");
    sub->add_option("--workers", workers, "worker threads");
    sub->add_option("--out", out_path, "CSV output path (default stdout)");
    sub->add_option("--tol", tol, "tolerance");
    sub->add_option("--l", l, "zeta | legendre:<p> | dirichlet:<q>:<k,...> | file:<path>");
    sub->add_option("--height", height, "zero height");
    sub->add_option("--set", sets, "key=value override (repeatable)");
  };
  for (const auto& name : command_names()) common(app.add_subcommand(name));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = RunConfig::load(config_path);
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw szeta::ConfigError("--set expects key=value, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    const std::pair<const char*, std::string*> flags[] = {{"zeros", &zeros},   {"cache", &cache},
                                                          {"workers", &workers}, {"tol", &tol},
                                                          {"l", &l},           {"height", &height}};
    for (const auto& [key, value] : flags) {
      if (!value->empty()) cfg.set(key, *value);
    }
  } catch (const szeta::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }

  if (out_path.empty()) return run_command(command, cfg, std::cout, std::cerr);
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << '\n';
    return kExitInput;
  }
  return run_command(command, cfg, out, std::cerr);
}
