#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace oa {

/// Calendar date with at least year precision. Missing month/day are
/// padded to January/1st at construction time so day arithmetic is
/// always defined.
struct Date {
    int year = 0;
    int month = 1;
    int day = 1;

    auto operator<=>(const Date&) const = default;

    bool valid() const {
        using namespace std::chrono;
        return year_month_day{std::chrono::year{year} / month / day}.ok();
    }

    std::chrono::sys_days to_days() const {
        using namespace std::chrono;
        return sys_days{year_month_day{std::chrono::year{year} / month / day}};
    }

    std::string to_string() const;
};

/// Whole days from `from` to `to` (negative if `to` precedes `from`).
inline long days_between(const Date& from, const Date& to) {
    return (to.to_days() - from.to_days()).count();
}

/// Parses "YYYY", "YYYY-MM" or "YYYY-MM-DD", padding missing parts.
std::optional<Date> parse_date(const std::string& s);

}  // namespace oa
