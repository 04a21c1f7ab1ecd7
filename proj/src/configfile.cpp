#include "configfile.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace nlse {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '.' || c == '-';
    if (!ok) return false;
  }
  return true;
}

long long parse_int(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  require(end != value.c_str() && *end == '\0' && errno == 0, Errc::invalid_argument,
          "config: key '" + key + "' expects an integer, got '" + value + "'");
  return v;
}

double parse_real(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  require(end != value.c_str() && *end == '\0' && errno == 0 && std::isfinite(v),
          Errc::invalid_argument,
          "config: key '" + key + "' expects a finite real, got '" + value + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  require(end != value.c_str() && *end == '\0' && errno == 0 && value[0] != '-',
          Errc::invalid_argument,
          "config: key '" + key + "' expects an unsigned integer, got '" + value + "'");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, Errc::invalid_argument,
            "config: line " + std::to_string(lineno) + " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    require(valid_key(key), Errc::invalid_argument,
            "config: line " + std::to_string(lineno) + " has an invalid key '" + key + "'");
    require(!value.empty(), Errc::invalid_argument,
            "config: line " + std::to_string(lineno) + " has an empty value for '" + key + "'");
    cfg.values_[key].push_back(value);
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), Errc::io, "config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  require(!in.bad(), Errc::io, "config: read error on '" + path + "'");
  return parse_string(buf.str());
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

const std::vector<std::string>& Config::list(const std::string& key) const {
  const auto it = values_.find(key);
  require(it != values_.end(), Errc::not_found, "config: missing required key '" + key + "'");
  return it->second;
}

std::string Config::get(const std::string& key) const {
  const std::vector<std::string>& vals = list(key);
  require(vals.size() == 1, Errc::invalid_argument,
          "config: key '" + key + "' must appear exactly once");
  return vals.front();
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? get(key) : fallback;
}

long long Config::get_int(const std::string& key) const { return parse_int(key, get(key)); }

long long Config::get_int_or(const std::string& key, long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

double Config::get_real(const std::string& key) const { return parse_real(key, get(key)); }

double Config::get_real_or(const std::string& key, double fallback) const {
  return has(key) ? get_real(key) : fallback;
}

std::uint64_t Config::get_u64(const std::string& key) const { return parse_u64(key, get(key)); }

std::uint64_t Config::get_u64_or(const std::string& key, std::uint64_t fallback) const {
  return has(key) ? get_u64(key) : fallback;
}

bool Config::get_bool_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get(key);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  fail(Errc::invalid_argument, "config: key '" + key + "' expects true/false/1/0, got '" + v + "'");
}

std::vector<long long> Config::int_list(const std::string& key) const {
  std::vector<long long> out;
  for (const std::string& v : list(key)) out.push_back(parse_int(key, v));
  return out;
}

std::vector<long long> Config::int_list_or(const std::string& key,
                                           std::vector<long long> fallback) const {
  return has(key) ? int_list(key) : std::move(fallback);
}

std::vector<double> Config::real_list(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& v : list(key)) out.push_back(parse_real(key, v));
  return out;
}

std::vector<double> Config::real_list_or(const std::string& key,
                                         std::vector<double> fallback) const {
  return has(key) ? real_list(key) : std::move(fallback);
}

std::vector<std::string> Config::string_list_or(const std::string& key,
                                                std::vector<std::string> fallback) const {
  return has(key) ? list(key) : std::move(fallback);
}

void Config::require_known(const std::vector<std::string>& allowed) const {
  for (const auto& [key, values] : values_) {
    bool known = false;
    for (const std::string& a : allowed)
      if (key == a) {
        known = true;
        break;
      }
    require(known, Errc::invalid_argument, "config: unknown key '" + key + "'");
  }
}

void Config::set(const std::string& key, const std::string& value) {
  values_[key] = {value};
}

std::string format_double(double v) {
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  require(ec == std::errc{}, Errc::internal, "format_double: conversion failed");
  return std::string(buf, ptr);
}

std::string format_u64(std::uint64_t v) {
  char buf[24];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  require(ec == std::errc{}, Errc::internal, "format_u64: conversion failed");
  return std::string(buf, ptr);
}

}  // namespace nlse
