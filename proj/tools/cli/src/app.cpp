#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include "internal.hpp"
#include "toycascade/errors.hpp"

namespace toycascade::cli {

namespace {

using nlohmann::json;

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const std::map<std::string, std::function<int(Context&)>>& commands() {
  static const std::map<std::string, std::function<int(Context&)>> table{
      {"simulate", cmd_simulate}, {"stationary", cmd_stationary}, {"minimize", cmd_minimize},
      {"hessian", cmd_hessian},   {"sample", cmd_sample},         {"report", cmd_report},
  };
  return table;
}

const char* status_name(int code) {
  switch (code) {
    case kOk: return "ok";
    case kConfigError: return "config_error";
    case kNumericalFailure: return "numerical_failure";
    case kBudgetExceeded: return "budget_exceeded";
    default: return "error";
  }
}

}  // namespace

int run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  const auto cmd = commands().find(opts.command);
  if (cmd == commands().end()) {
    err << "unknown command '" << opts.command << "'\n";
    return kUsage;
  }

  json manifest{{"command", opts.command}, {"config", nullptr}, {"seed", nullptr},
                {"git_describe", git_describe()}, {"started", utc_now()}};
  OutputSet outputs(opts.out_dir);
  int code = kOk;
  try {
    const json config = load_config(opts.config_path);
    manifest["config"] = config;
    const std::uint64_t seed =
        opts.seed ? *opts.seed : static_cast<std::uint64_t>(integer_field(config, "seed", 1));
    manifest["seed"] = seed;
    if (opts.threads < 1) throw ConfigError("--threads must be >= 1");
    Context ctx{config, opts.config_path.parent_path(), seed, opts.threads, outputs, out};
    code = cmd->second(ctx);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    code = kConfigError;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << "\n";
    code = kConfigError;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    code = kBudgetExceeded;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    code = kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    code = kUsage;
  }

  manifest["finished"] = utc_now();
  manifest["exit_code"] = code;
  manifest["status"] = status_name(code);
  json files = json::array();
  for (const OutputFile& f : outputs.files()) files.push_back({{"path", f.path}, {"sha256", f.sha256}});
  manifest["outputs"] = files;
  try {
    std::filesystem::create_directories(opts.out_dir);
    std::ofstream f(opts.out_dir / "manifest.json", std::ios::trunc);
    f << manifest.dump(2) << "\n";
    if (!f) throw std::runtime_error("write failed");
  } catch (const std::exception& e) {
    err << "cannot write manifest in " << opts.out_dir.string() << ": " << e.what() << "\n";
    if (code == kOk) code = kUsage;
  }
  return code;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"toy-cascade: batch experiments on the lattice toy model"};
  app.require_subcommand(1);
  RunOptions opts;
  std::uint64_t seed = 0;
  for (const auto& [name, fn] : commands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", opts.config_path, "JSON config file")->required();
    sub->add_option("--seed", seed, "overrides the config seed");
    sub->add_option("--threads", opts.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", opts.out_dir, "output directory");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  for (CLI::App* sub : app.get_subcommands()) {
    opts.command = sub->get_name();
    if (sub->count("--seed") > 0) opts.seed = seed;
  }
  if (const char* env = std::getenv("TOY_CASCADE_OUT"); env && *env) opts.out_dir = env;
  return run(opts, std::cout, std::cerr);
}

}  // namespace toycascade::cli
