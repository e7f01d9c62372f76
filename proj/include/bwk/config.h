#ifndef BWK_CONFIG_H_
#define BWK_CONFIG_H_

// Flat `key = value` configuration text. One entry per line, `#` starts a
// comment, blank lines are ignored and keys may appear only once.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace bwk {

using ConfigMap = std::map<std::string, std::string>;

ConfigMap ParseConfig(std::istream& in);
ConfigMap ReadConfigFile(const std::string& path);

// Comma-separated numbers.
std::vector<double> ParseDoubleList(const std::string& text,
                                    const std::string& what);

// Rows separated by ';', entries by ','.
std::vector<std::vector<double>> ParseMatrix(const std::string& text,
                                             const std::string& what);

}  // namespace bwk

#endif  // BWK_CONFIG_H_
