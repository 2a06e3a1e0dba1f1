#pragma once

#include <chrono>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "eomsim/core/types.hpp"

namespace eomsim {

/// Fixed-offset local standard time: every day has 96 intervals, no DST.
struct IntervalTime {
  int year;
  unsigned month;
  unsigned day;
  int minute_of_day;
  unsigned weekday;  // 0 = Sunday

  std::string iso() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d", year, month, day, minute_of_day / 60,
                  minute_of_day % 60);
    return buf;
  }
};

inline IntervalTime interval_time(int year, std::size_t interval_of_year) {
  using namespace std::chrono;
  const auto day_index = static_cast<int>(interval_of_year / kIntervalsPerDay);
  const sys_days day = sys_days{std::chrono::year{year} / January / 1} + days{day_index};
  const year_month_day ymd{day};
  return IntervalTime{static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                      static_cast<unsigned>(ymd.day()),
                      static_cast<int>(interval_of_year % kIntervalsPerDay) * kIntervalMinutes,
                      weekday{day}.c_encoding()};
}

/// Parses "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM" into (year, interval-of-year).
inline std::optional<std::pair<int, std::size_t>> parse_timestamp(std::string_view text) {
  int y = 0;
  unsigned mo = 0, d = 0;
  int hh = 0, mm = 0;
  std::string s(text);
  if (s.size() > 10 && s[10] == ' ') s[10] = 'T';
  int n = std::sscanf(s.c_str(), "%d-%u-%uT%d:%d", &y, &mo, &d, &hh, &mm);
  if (!(n == 3 && s.size() == 10) && n != 5) return std::nullopt;
  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{y}, month{mo}, day{d}};
  if (!ymd.ok() || hh < 0 || hh > 23 || mm < 0 || mm > 59 || mm % kIntervalMinutes != 0) {
    return std::nullopt;
  }
  const auto doy = (sys_days{ymd} - sys_days{std::chrono::year{y} / January / 1}).count();
  return std::pair{y, static_cast<std::size_t>(doy) * kIntervalsPerDay +
                          static_cast<std::size_t>((hh * 60 + mm) / kIntervalMinutes)};
}

/// Workday calendar for peak/off-peak classification: Monday to Friday,
/// minus an optional list of holidays (day-of-year, 0-based).
class TradingCalendar {
public:
  TradingCalendar() = default;
  explicit TradingCalendar(std::set<int> holiday_days) : holidays_(std::move(holiday_days)) {}

  void add_holiday(int day_of_year) { holidays_.insert(day_of_year); }
  const std::set<int>& holidays() const noexcept { return holidays_; }

  bool is_workday(int year, std::size_t interval_of_year) const {
    const auto t = interval_time(year, interval_of_year);
    if (t.weekday == 0 || t.weekday == 6) return false;
    return !holidays_.contains(static_cast<int>(interval_of_year / kIntervalsPerDay));
  }

  /// Peak = workday interval starting in [08:00, 18:00).
  bool is_peak(int year, std::size_t interval_of_year) const {
    const int minute = static_cast<int>(interval_of_year % kIntervalsPerDay) * kIntervalMinutes;
    return minute >= 8 * 60 && minute < 18 * 60 && is_workday(year, interval_of_year);
  }

private:
  std::set<int> holidays_;
};

}  // namespace eomsim
