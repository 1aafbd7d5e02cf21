#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mbg {

/// Flat key = value settings. Lines starting with '#' are comments;
/// a "[name]" line prefixes following keys with "name.". Values may be
/// quoted strings, numbers, booleans or bracketed lists.
class Config {
 public:
  Config() = default;

  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  std::string get_string(const std::string& key, const std::string& fallback = "") const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// "[a, b, c]" or a single value; commas inside parentheses or quotes
  /// do not split.
  std::vector<std::string> get_list(const std::string& key) const;

  /// Keys under "prefix." with the prefix stripped.
  Config section(const std::string& prefix) const;
  /// Adds every key of `other`, overwriting.
  void merge(const Config& other);

  /// Sorted "key=value" lines; stable input for hashing.
  std::string canonical() const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Evaluates an arithmetic expression over the variables in `vars`.
/// Supports + - * / ^, parentheses, and ln, log, sqrt, floor, ceil, min, max.
double eval_formula(const std::string& expr, const std::map<std::string, double>& vars);

}  // namespace mbg
