#include "geotopics/time.hpp"

#include <array>
#include <cstdio>
#include <cstring>

namespace geotopics {

std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yr + (m <= 2));
}

int weekday_monday0(std::int64_t days) {
  // 1970-01-01 was a Thursday (index 3, Monday-first).
  return static_cast<int>(((days % 7) + 7 + 3) % 7);
}

std::int64_t local_day(std::int64_t epoch_utc, int offset_minutes) {
  const std::int64_t t = epoch_utc + static_cast<std::int64_t>(offset_minutes) * 60;
  return t >= 0 ? t / 86400 : (t - 86399) / 86400;
}

int local_hour(std::int64_t epoch_utc, int offset_minutes) {
  const std::int64_t t = epoch_utc + static_cast<std::int64_t>(offset_minutes) * 60;
  const std::int64_t sec = ((t % 86400) + 86400) % 86400;
  return static_cast<int>(sec / 3600);
}

namespace {
int month_index(const char* name) {
  static constexpr std::array<const char*, 12> names = {
      "Jan", "Feb", "Mar", "Apr", "May", "Jun",
      "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  for (int i = 0; i < 12; ++i)
    if (std::strncmp(name, names[i], 3) == 0) return i + 1;
  return 0;
}
}  // namespace

std::optional<Timestamp> parse_timestamp(const std::string& s) {
  // "Wed Mar 01 12:34:56 +0000 2017"
  char wday[4] = {0};
  char mon[4] = {0};
  char zone[8] = {0};
  int day = 0, hh = 0, mm = 0, ss = 0, year = 0;
  if (std::sscanf(s.c_str(), "%3s %3s %d %d:%d:%d %6s %d", wday, mon, &day,
                  &hh, &mm, &ss, zone, &year) != 8)
    return std::nullopt;
  const int month = month_index(mon);
  if (month == 0 || day < 1 || day > 31 || hh < 0 || hh > 23 || mm < 0 ||
      mm > 59 || ss < 0 || ss > 60 || year < 1970)
    return std::nullopt;
  if ((zone[0] != '+' && zone[0] != '-') || std::strlen(zone) != 5)
    return std::nullopt;
  const int zh = (zone[1] - '0') * 10 + (zone[2] - '0');
  const int zm = (zone[3] - '0') * 10 + (zone[4] - '0');
  int offset = zh * 60 + zm;
  if (zone[0] == '-') offset = -offset;

  Timestamp ts;
  ts.offset_minutes = offset;
  ts.raw = s;
  ts.epoch_utc = days_from_civil(year, month, day) * 86400 +
                 hh * 3600 + mm * 60 + ss -
                 static_cast<std::int64_t>(offset) * 60;
  return ts;
}

}  // namespace geotopics
