#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gbnl/grid.hpp"

namespace gbnl::cli {

/// Whole file, or stdin for "-".
std::string read_input(const std::string& path);
/// Writes to the file, or stdout for "-".
void write_output(const std::string& path, std::string_view content);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

struct FileHash {
  std::string path;
  std::string fnv1a64;
};

/// Provenance record written next to a command's primary output. Holds no
/// timestamps, so reruns with the same inputs and flags reproduce it exactly.
struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  std::vector<FileHash> inputs;
  std::vector<FileHash> outputs;
  std::optional<EpsilonGrid> grid;
  std::optional<std::string> schema_path;
  std::vector<std::uint64_t> seeds;

  void add_input(const std::string& path, std::string_view content);
  void add_output(const std::string& path, std::string_view content);
  std::string serialize() const;
};

/// "<primary>.manifest.json"; nothing is written for stdout output.
void write_manifest(const std::string& primary_output, const RunManifest& manifest);

/// Argument vector of the current process, set once by main.
void set_process_arguments(std::vector<std::string> args);
const std::vector<std::string>& process_arguments();

/// --jobs value, else GBNL_JOBS, else the hardware thread count.
std::size_t resolve_jobs(std::optional<std::size_t> flag);

}  // namespace gbnl::cli
