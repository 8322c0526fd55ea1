#include "zk/config.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "zk/errors.hpp"

namespace zk {

namespace {

void flatten(const boost::property_tree::ptree& t, const std::string& prefix, std::map<std::string, std::string>& out) {
  for (const auto& [k, v] : t) {
    std::string key = prefix.empty() ? k : prefix + "." + k;
    if (v.empty()) out[key] = v.data();
    else flatten(v, key, out);
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

template <class T>
T convert(const std::string& key, const std::string& text) {
  std::istringstream is(text);
  T v{};
  is >> v;
  if (!is || !(is >> std::ws).eof()) throw ConfigError("config: bad value for '" + key + "': " + text);
  return v;
}

std::vector<double> convert_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) out.push_back(convert<double>(key, item));
  if (out.empty()) throw ConfigError("config: empty list for '" + key + "'");
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

}  // namespace

Config Config::parse(std::istream& is) {
  boost::property_tree::ptree t;
  try {
    boost::property_tree::ini_parser::read_ini(is, t);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  Config c;
  flatten(t, "", c.values_);
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config: cannot open " + path);
  return parse(f);
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }
void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

std::string Config::str(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("config: missing key '" + key + "'");
  used_[key] = it->second;
  return it->second;
}
double Config::real(const std::string& key) const { return convert<double>(key, str(key)); }
long Config::integer(const std::string& key) const { return convert<long>(key, str(key)); }
std::uint64_t Config::u64(const std::string& key) const { return convert<std::uint64_t>(key, str(key)); }
std::vector<double> Config::reals(const std::string& key) const { return convert_list(key, str(key)); }

std::string Config::str(const std::string& key, const std::string& fallback) const {
  if (!has(key)) {
    used_[key] = fallback;
    return fallback;
  }
  return str(key);
}
double Config::real(const std::string& key, double fallback) const {
  if (!has(key)) used_[key] = fmt(fallback);
  return has(key) ? real(key) : fallback;
}
long Config::integer(const std::string& key, long fallback) const {
  if (!has(key)) used_[key] = std::to_string(fallback);
  return has(key) ? integer(key) : fallback;
}
std::uint64_t Config::u64(const std::string& key, std::uint64_t fallback) const {
  if (!has(key)) used_[key] = std::to_string(fallback);
  return has(key) ? u64(key) : fallback;
}
std::vector<double> Config::reals(const std::string& key, const std::vector<double>& fallback) const {
  if (!has(key)) used_[key] = join(fallback);
  return has(key) ? reals(key) : fallback;
}

void Config::echo(std::ostream& os) const {
  std::map<std::string, std::map<std::string, std::string>> sections;
  auto all = values_;
  for (const auto& [k, v] : used_) all[k] = v;
  for (const auto& [k, v] : all) {
    auto dot = k.find('.');
    if (dot == std::string::npos) sections[""][k] = v;
    else sections[k.substr(0, dot)][k.substr(dot + 1)] = v;
  }
  for (const auto& [sec, kv] : sections) {
    if (!sec.empty()) os << '[' << sec << "]\n";
    for (const auto& [k, v] : kv) os << k << " = " << v << '\n';
    os << '\n';
  }
}

}  // namespace zk
