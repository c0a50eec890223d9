#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace toycascade::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConfigError = 2,
  kNumericalFailure = 3,
  kBudgetExceeded = 4,
};

// Bad or missing configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses JSON text; syntax errors report line and column.
nlohmann::json parse_config(const std::string& text);
nlohmann::json load_config(const std::filesystem::path& path);

std::string sha256_hex(const std::string& bytes);

struct OutputFile {
  std::string path;  // relative to the output directory
  std::string sha256;
};

// Files produced by one run. Writes go straight to disk and are hashed from
// the bytes written.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }
  const std::vector<OutputFile>& files() const { return files_; }
  void write(const std::string& name, const std::string& contents);

 private:
  std::filesystem::path dir_;
  std::vector<OutputFile> files_;
};

struct RunOptions {
  std::string command;
  std::filesystem::path config_path;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::filesystem::path out_dir = ".";
};

// Runs one command and writes manifest.json into the output directory,
// whatever the outcome. Progress goes to `out`, diagnostics to `err`.
int run(const RunOptions& opts, std::ostream& out, std::ostream& err);

// Full command line front-end; applies TOY_CASCADE_OUT.
int main_entry(int argc, char** argv);

std::string git_describe();

}  // namespace toycascade::cli
