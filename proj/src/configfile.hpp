#pragma once
// Flat experiment-config files: UTF-8 text, one `key = value` per line,
// '#' starts a comment, blank lines ignored, repeated keys accumulate into
// lists in file order.  Consumers list their known keys and everything else
// is rejected, so typos fail loudly.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nlse {

class Config {
 public:
  static Config parse_file(const std::string& path);    // Errc::io on read failure
  static Config parse_string(const std::string& text);  // Errc::invalid_argument on bad lines

  bool has(const std::string& key) const;

  // All values of a repeated key, in file order (error when absent).
  const std::vector<std::string>& list(const std::string& key) const;

  // Single-valued accessors; error when absent or repeated.
  std::string get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  long long get_int(const std::string& key) const;
  long long get_int_or(const std::string& key, long long fallback) const;
  double get_real(const std::string& key) const;
  double get_real_or(const std::string& key, double fallback) const;
  std::uint64_t get_u64(const std::string& key) const;
  std::uint64_t get_u64_or(const std::string& key, std::uint64_t fallback) const;
  bool get_bool_or(const std::string& key, bool fallback) const;  // true/false/1/0

  // List accessors returning the single value as a 1-element list when the
  // key appears once; error when absent (the *_or forms return fallback).
  std::vector<long long> int_list(const std::string& key) const;
  std::vector<long long> int_list_or(const std::string& key, std::vector<long long> fallback) const;
  std::vector<double> real_list(const std::string& key) const;
  std::vector<double> real_list_or(const std::string& key, std::vector<double> fallback) const;
  std::vector<std::string> string_list_or(const std::string& key,
                                          std::vector<std::string> fallback) const;

  // Errc::invalid_argument when any present key is not in `allowed`.
  void require_known(const std::vector<std::string>& allowed) const;

  // Sorted key -> values view (used for the deterministic config echo).
  const std::map<std::string, std::vector<std::string>>& entries() const { return values_; }

  void set(const std::string& key, const std::string& value);  // override (CLI/env)

 private:
  std::map<std::string, std::vector<std::string>> values_;
};

// Shortest round-trip decimal rendering (std::to_chars); the library's one
// true double-to-text conversion, shared by CSV and JSON emitters so outputs
// are byte-stable.
std::string format_double(double v);
std::string format_u64(std::uint64_t v);

}  // namespace nlse
