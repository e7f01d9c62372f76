#ifndef BWK_CSV_H_
#define BWK_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace bwk {

// Shortest decimal text that parses back to exactly `value`.
std::string FormatDouble(double value);

// Splits on `sep` without trimming; "a,,b" gives three fields.
std::vector<std::string> SplitFields(std::string_view line, char sep = ',');

std::string_view Trim(std::string_view s);

// Strict numeric parsing; throw ValidationError naming `what` on failure.
double ParseDouble(std::string_view text, std::string_view what);
long long ParseInt(std::string_view text, std::string_view what);

}  // namespace bwk

#endif  // BWK_CSV_H_
