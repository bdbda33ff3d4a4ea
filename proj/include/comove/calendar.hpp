#pragma once

#include <chrono>
#include <string>

namespace comove {

using Date = std::chrono::sys_days;

// Parses strict ISO-8601 "YYYY-MM-DD". Throws IngestionError on anything else,
// including dates that do not exist on the civil calendar.
Date parse_date(const std::string& text);

std::string format_date(Date d);

// Monday of the ISO-8601 (Mon..Sun) week containing d.
Date iso_week_monday(Date d);

// True if both dates fall in the same ISO week.
bool same_iso_week(Date a, Date b);

}  // namespace comove
