#include "oa/date.hpp"

#include <cstdio>

namespace oa {

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

std::optional<Date> parse_date(const std::string& s) {
    Date d;
    int n = std::sscanf(s.c_str(), "%d-%d-%d", &d.year, &d.month, &d.day);
    if (n < 1) return std::nullopt;
    if (n < 2) d.month = 1;
    if (n < 3) d.day = 1;
    if (!d.valid()) return std::nullopt;
    return d;
}

}  // namespace oa
