#pragma once
// Civil calendar dates at day precision, plus the month-end arithmetic the
// snapshot series is built on.

#include <chrono>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace semimpact {

class Date {
public:
    Date() = default;

    static Date from_ymd(int year, unsigned month, unsigned day) {
        namespace ch = std::chrono;
        ch::year_month_day ymd{ch::year{year}, ch::month{month}, ch::day{day}};
        if (!ymd.ok()) {
            throw std::invalid_argument("invalid calendar date: " + std::to_string(year) + "-" +
                                        std::to_string(month) + "-" + std::to_string(day));
        }
        return Date{ch::sys_days{ymd}.time_since_epoch().count()};
    }

    // Parses strict "YYYY-MM-DD".
    static Date parse(std::string_view s) {
        if (s.size() != 10 || s[4] != '-' || s[7] != '-') {
            throw std::invalid_argument("expected YYYY-MM-DD, got '" + std::string(s) + "'");
        }
        auto digits = [&](size_t pos, size_t len) {
            int v = 0;
            for (size_t i = pos; i < pos + len; ++i) {
                char c = s[i];
                if (c < '0' || c > '9') {
                    throw std::invalid_argument("expected YYYY-MM-DD, got '" + std::string(s) + "'");
                }
                v = v * 10 + (c - '0');
            }
            return v;
        };
        return from_ymd(digits(0, 4), static_cast<unsigned>(digits(5, 2)),
                        static_cast<unsigned>(digits(8, 2)));
    }

    static Date month_end(int year, unsigned month) {
        namespace ch = std::chrono;
        ch::year_month_day_last last{ch::year{year}, ch::month_day_last{ch::month{month}}};
        return Date{ch::sys_days{ch::year_month_day{last}}.time_since_epoch().count()};
    }

    int year() const { return int(ymd().year()); }
    unsigned month() const { return unsigned(ymd().month()); }
    unsigned day() const { return unsigned(ymd().day()); }

    // Last day of this date's month.
    Date end_of_month() const { return month_end(year(), month()); }

    bool is_month_end() const { return *this == end_of_month(); }

    // Month-end of the month `k` months away (k may be negative).
    Date add_months_eom(int k) const {
        int m0 = year() * 12 + static_cast<int>(month()) - 1 + k;
        int y = m0 / 12;
        int m = m0 % 12;
        if (m < 0) {
            m += 12;
            y -= 1;
        }
        return month_end(y, static_cast<unsigned>(m + 1));
    }

    Date add_days(int n) const { return Date{days_ + n}; }

    std::int32_t days_since_epoch() const { return days_; }

    std::string to_string() const {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year(), month(), day());
        return buf;
    }

    auto operator<=>(const Date&) const = default;

private:
    explicit Date(std::int64_t days) : days_(static_cast<std::int32_t>(days)) {}

    std::chrono::year_month_day ymd() const {
        namespace ch = std::chrono;
        return ch::year_month_day{ch::sys_days{ch::days{days_}}};
    }

    std::int32_t days_ = 0;  // days since 1970-01-01
};

// Day difference a - b.
inline int operator-(Date a, Date b) { return a.days_since_epoch() - b.days_since_epoch(); }

// Difference in whole months between two month-ends.
inline int months_between(Date from, Date to) {
    return (to.year() * 12 + static_cast<int>(to.month())) -
           (from.year() * 12 + static_cast<int>(from.month()));
}

}  // namespace semimpact
