// Command-line front end: eulerps <verify|simulate|shear|rank|export> [options]

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eulerps/commands.hpp"
#include "eulerps/errors.hpp"

namespace {

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw eulerps::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson structures of the truncated 3D Euler equations in Fourier vorticity coordinates"};
  app.require_subcommand(1);

  Options opts;
  using Command = int (*)(const eulerps::RunConfig&, std::ostream&);
  const std::vector<std::tuple<std::string, std::string, Command>> commands{
      {"verify", "run the identity suite (exit 1 if any check fails)", eulerps::cmd_verify},
      {"simulate", "integrate a trajectory and write diagnostics", eulerps::cmd_simulate},
      {"shear", "check a shear-flow equilibrium", eulerps::cmd_shear},
      {"rank", "compare Poisson-tensor ranks against generic baselines", eulerps::cmd_rank},
      {"export", "write the assembled Poisson tensor", eulerps::cmd_export},
  };
  Command chosen = nullptr;
  for (const auto& [name, help, fn] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", opts.config_path, "JSON config file");
    sub->add_option("-s,--set", opts.overrides, "override a config key: key=value (JSON value, dotted keys nest)");
    sub->callback([&chosen, fn = fn] { chosen = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? eulerps::kExitOk : eulerps::kExitConfig;
  }

  try {
    const std::string base = opts.config_path.empty() ? std::string("{}") : read_text(opts.config_path);
    const auto cfg = eulerps::parse_config(eulerps::apply_overrides(base, opts.overrides));
    return chosen(cfg, std::cout);
  } catch (const eulerps::BlowUpError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return eulerps::kExitBlowUp;
  } catch (const eulerps::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return eulerps::kExitConfig;
  } catch (const eulerps::TruncationTooSmallError& e) {
    std::cerr << "truncation too small: " << e.what() << '\n';
    return eulerps::kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return eulerps::kExitConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "out of range: " << e.what() << '\n';
    return eulerps::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return eulerps::kExitFailure;
  }
}
