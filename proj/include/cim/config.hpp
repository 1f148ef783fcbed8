#ifndef CIM_CONFIG_HPP
#define CIM_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

namespace cim {

// Flat key=value experiment configuration. Precedence, lowest to highest:
// config file, CIM_-prefixed environment variables, CLI flags.
class ExperimentConfig {
  public:
    void load_file(const std::string& path);
    void apply_env();  // CIM_FOO_BAR overrides key foo_bar
    void set(const std::string& key, const std::string& value);

    bool has(const std::string& key) const;
    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_list(const std::string& key) const;  // comma-separated

    const std::map<std::string, std::string>& entries() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

}  // namespace cim

#endif
