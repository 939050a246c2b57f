#ifndef ISSCERT_CONFIG_HPP
#define ISSCERT_CONFIG_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace isscert {

/// Flat `key = value` file with dotted keys; '#' starts a comment.
class Config {
public:
  Config() = default;

  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_str(const std::string& key, const std::string& fallback) const;
  std::string require_str(const std::string& key) const;
  double get_num(const std::string& key, double fallback) const;
  std::optional<double> get_opt_num(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

private:
  std::map<std::string, std::string> kv_;
};

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace isscert

#endif
