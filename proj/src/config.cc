#include "bwk/config.h"

#include <fstream>
#include <istream>

#include "bwk/csv.h"
#include "bwk/errors.h"

namespace bwk {

ConfigMap ParseConfig(std::istream& in) {
  ConfigMap out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = Trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(number) +
                        ": expected `key = value`");
    }
    const std::string key(Trim(view.substr(0, eq)));
    const std::string value(Trim(view.substr(eq + 1)));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(number) + ": empty key");
    }
    if (!out.emplace(key, value).second) {
      throw ConfigError("line " + std::to_string(number) + ": duplicate key '" +
                        key + "'");
    }
  }
  return out;
}

ConfigMap ReadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return ParseConfig(in);
}

std::vector<double> ParseDoubleList(const std::string& text,
                                    const std::string& what) {
  std::vector<double> values;
  if (Trim(text).empty()) return values;
  for (const std::string& field : SplitFields(text, ',')) {
    values.push_back(ParseDouble(Trim(field), what));
  }
  return values;
}

std::vector<std::vector<double>> ParseMatrix(const std::string& text,
                                             const std::string& what) {
  std::vector<std::vector<double>> rows;
  for (const std::string& row : SplitFields(text, ';')) {
    if (Trim(row).empty()) continue;
    rows.push_back(ParseDoubleList(row, what));
  }
  return rows;
}

}  // namespace bwk
