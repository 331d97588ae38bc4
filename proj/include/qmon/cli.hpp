#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qmon/io.hpp"

namespace qmon::cli {

using io::json;

enum class Status { Pass, Fail, Refused, Skipped };
std::string_view status_name(Status s);

struct Check {
  std::string name;
  Status status = Status::Pass;
  json witness;                // null when there is none
  bool informational = false;  // never affects the exit code
  std::string note;
};

struct Report {
  std::vector<std::string> command;
  std::vector<Check> checks;
  json data = json::object();  // constructed objects, in the input file formats
  std::vector<std::pair<std::string, std::string>> inputs;  // path, sha256
  double timing_ms = 0;

  Check& add(std::string name, bool ok, json witness = nullptr, std::string note = {});
  Check& info(std::string name, bool ok, json witness = nullptr, std::string note = {});
  /// 0 pass, 1 some non-informational check failed, 2 some check was refused.
  int exit_code() const;
  json to_json(bool with_timing = true) const;
  std::string text() const;
};

struct Options {
  std::uint64_t seed = 0;
  std::size_t max_size = kDefaultMaxElements;
  CylMode mode = CylMode::Full;
  bool require_oml = false;
  std::size_t max_blocks = 4;
  bool boolean_only = false;
  std::size_t max_atoms = 4;
  std::size_t dim = 0;               // 0: command default
  std::vector<std::size_t> layout;   // empty: command default
  std::size_t samples = 20;
};

std::string sha256_hex(std::string_view bytes);

Report cmd_check(const std::string& kind, const std::filesystem::path& file, const Options& opt);
Report cmd_repro(const std::string& name, const Options& opt);
Report cmd_search(const std::string& target, const Options& opt);
/// Returns the converted document (lattice JSON or cylindric JSON).
json cmd_convert(const std::string& kind, const std::filesystem::path& file, const Options& opt);

/// Full command line entry point; returns the exit status.
int run(int argc, char** argv);

}  // namespace qmon::cli
