#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "framelab/errors.hpp"

namespace framelab::cli {

enum ExitCode : int {
  kOk = 0,
  kDomainError = 1,
  kUsage = 2,
  kFileNotFound = 3,
  kSpecParse = 4,
  kIo = 5,
};

/// Errors that map onto a specific process exit code.
class CliError : public Error {
 public:
  CliError(int code, const std::string& what) : Error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

struct UsageError : CliError {
  explicit UsageError(const std::string& what) : CliError(kUsage, what) {}
};
struct FileNotFound : CliError {
  explicit FileNotFound(const std::string& what) : CliError(kFileNotFound, what) {}
};
struct SpecParseError : CliError {
  explicit SpecParseError(const std::string& what) : CliError(kSpecParse, what) {}
};
struct IoError : CliError {
  explicit IoError(const std::string& what) : CliError(kIo, what) {}
};

enum class Format { Csv, Json };

struct RunConfig {
  std::string command;
  std::string subcommand;

  std::string measure_path;
  std::vector<std::string> function_paths;
  std::string values_path;
  std::vector<int> orders;  ///< strictly increasing
  std::optional<double> tolerance;
  std::string out_path;     ///< empty: stdout
  Format format = Format::Csv;
  std::uint64_t seed = 0;
  int count = 0;            ///< generated test functions when no --function is given

  std::optional<double> period;
  std::optional<double> atom;
  std::optional<double> lattice_c;
  std::optional<double> split;
  std::optional<int> n_order;
  std::optional<int> m_order;
  std::optional<int> truncation;
  std::vector<double> radii;
  std::vector<std::string> w_points;
  std::vector<std::string> z_points;
  bool parseval = false;
  std::string family;
  std::optional<int> dimension;
  std::string dual;
  std::string weights;
  std::string coeffs;
  long first = 0;
  long last = 20;
};

/// Parses `args` (without the program name).  Throws UsageError.
RunConfig parse_config(const std::vector<std::string>& args);

std::string usage_text();

}  // namespace framelab::cli
