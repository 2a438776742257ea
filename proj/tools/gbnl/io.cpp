#include "io.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include "gbnl/error.hpp"
#include "json.hpp"

namespace gbnl::cli {

namespace {

std::vector<std::string>& argument_store() {
  static std::vector<std::string> args;
  return args;
}

}  // namespace

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, std::string_view content) {
  if (path == "-") {
    std::cout.write(content.data(), static_cast<std::streamsize>(content.size()));
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorCode::kIo, "cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) raise(ErrorCode::kIo, "write failed for '" + path + "'");
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int k = 15; k >= 0; --k, value >>= 4) s[static_cast<std::size_t>(k)] = kDigits[value & 0xf];
  return s;
}

void RunManifest::add_input(const std::string& path, std::string_view content) {
  inputs.push_back({path, hex64(fnv1a64(content))});
}

void RunManifest::add_output(const std::string& path, std::string_view content) {
  outputs.push_back({path, hex64(fnv1a64(content))});
}

std::string RunManifest::serialize() const {
  nlohmann::ordered_json j;
  j["format"] = "gbnl-run-manifest";
  j["tool_version"] = GBNL_VERSION;
  j["command"] = command;
  j["arguments"] = arguments;
  auto files = [](const std::vector<FileHash>& v) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& f : v) arr.push_back({{"path", f.path}, {"fnv1a64", f.fnv1a64}});
    return arr;
  };
  j["inputs"] = files(inputs);
  j["outputs"] = files(outputs);
  if (grid) j["grid"] = format_grid(*grid);
  if (schema_path) j["schema"] = *schema_path;
  if (!seeds.empty()) j["seeds"] = seeds;
  return j.dump(1) + "\n";
}

void write_manifest(const std::string& primary_output, const RunManifest& manifest) {
  if (primary_output == "-") return;
  write_output(primary_output + ".manifest.json", manifest.serialize());
}

void set_process_arguments(std::vector<std::string> args) { argument_store() = std::move(args); }

const std::vector<std::string>& process_arguments() { return argument_store(); }

std::size_t resolve_jobs(std::optional<std::size_t> flag) {
  if (flag) return std::max<std::size_t>(1, *flag);
  if (const char* env = std::getenv("GBNL_JOBS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) raise(ErrorCode::kUsage, "GBNL_JOBS must be a positive integer");
    return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace gbnl::cli
