#include "comove/calendar.hpp"

#include <cctype>
#include <cstdio>

#include "comove/errors.hpp"

namespace comove {

Date parse_date(const std::string& text) {
    // Expected layout: 4 digits, '-', 2 digits, '-', 2 digits.
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        throw IngestionError("bad date '" + text + "': expected YYYY-MM-DD");
    for (int i : {0, 1, 2, 3, 5, 6, 8, 9})
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw IngestionError("bad date '" + text + "': expected YYYY-MM-DD");

    int y = std::stoi(text.substr(0, 4));
    unsigned m = static_cast<unsigned>(std::stoi(text.substr(5, 2)));
    unsigned d = static_cast<unsigned>(std::stoi(text.substr(8, 2)));

    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                    std::chrono::day{d}};
    if (!ymd.ok())
        throw IngestionError("bad date '" + text + "': not a valid calendar day");
    return std::chrono::sys_days{ymd};
}

std::string format_date(Date d) {
    std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

Date iso_week_monday(Date d) {
    std::chrono::weekday wd{d};
    return d - std::chrono::days{wd.iso_encoding() - 1};
}

bool same_iso_week(Date a, Date b) {
    return iso_week_monday(a) == iso_week_monday(b);
}

}  // namespace comove
