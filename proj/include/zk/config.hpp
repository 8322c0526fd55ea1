#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace zk {

/*
 * Flat INI-style configuration: "key = value" lines grouped under [section]
 * headers, addressed as "section.key".  Every lookup is recorded so the
 * resolved configuration (defaults included) can be echoed next to the results.
 */
class Config {
 public:
  static Config parse(std::istream& is);
  static Config load(const std::string& path);

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  // required lookups throw ConfigError naming the key
  std::string str(const std::string& key) const;
  double real(const std::string& key) const;
  long integer(const std::string& key) const;
  std::uint64_t u64(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;

  std::string str(const std::string& key, const std::string& fallback) const;
  double real(const std::string& key, double fallback) const;
  long integer(const std::string& key, long fallback) const;
  std::uint64_t u64(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> reals(const std::string& key, const std::vector<double>& fallback) const;

  // resolved values, grouped by section
  void echo(std::ostream& os) const;

 private:
  std::map<std::string, std::string> values_;
  mutable std::map<std::string, std::string> used_;
};

}  // namespace zk
