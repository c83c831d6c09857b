#ifndef GEOTOPICS_TIME_HPP
#define GEOTOPICS_TIME_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace geotopics {

// A parsed post timestamp. The epoch value is UTC; the offset the author's
// client reported is kept so nothing is lost, but city-local analytics use
// the per-city offset from the pipeline config instead.
struct Timestamp {
  std::int64_t epoch_utc = 0;    // seconds since 1970-01-01T00:00:00Z
  int offset_minutes = 0;        // offset present in the source string
  std::string raw;               // original representation
};

// Parses the platform's "Wed Mar 01 12:34:56 +0000 2017" format.
std::optional<Timestamp> parse_timestamp(const std::string& s);

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(int y, int m, int d);
void civil_from_days(std::int64_t z, int& y, int& m, int& d);

// 0 = Monday .. 6 = Sunday for a days-since-epoch value.
int weekday_monday0(std::int64_t days);

// Local civil day (days since epoch) and local hour for a UTC instant
// shifted by offset_minutes.
std::int64_t local_day(std::int64_t epoch_utc, int offset_minutes);
int local_hour(std::int64_t epoch_utc, int offset_minutes);

}  // namespace geotopics

#endif
