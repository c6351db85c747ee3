#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace holderlab {

/// Flat key = value configuration. `[section]` headers prefix the keys that
/// follow with "section."; `#` starts a comment; blank lines are ignored.
/// Later assignments of the same key replace earlier ones.
class Config {
 public:
  static Config parse(const std::string& text, const std::string& origin = "config");
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  void erase(const std::string& key) { values_.erase(key); }
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  /// Raw value; throws InvalidInput naming the key when missing.
  const std::string& require(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;

  /// Typed accessors. A present but malformed value throws InvalidInput
  /// naming the key.
  double real(const std::string& key, double fallback) const;
  double real(const std::string& key) const;
  long long integer(const std::string& key, long long fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<std::string> list(const std::string& key) const;

  /// Keys starting with `prefix`, prefix stripped.
  std::map<std::string, std::string> with_prefix(const std::string& prefix) const;

  /// Canonical text: one "key = value" per line in key order.
  std::string dump() const;

 private:
  std::map<std::string, std::string> values_;
};

double parse_real(const std::string& key, const std::string& text);
long long parse_integer(const std::string& key, const std::string& text);

}  // namespace holderlab
