#pragma once

#include <ostream>
#include <string>

#include "eomsim/calendar.hpp"
#include "eomsim/core/types.hpp"
#include "eomsim/io/csv.hpp"

namespace eomsim::io {

/// Reads a `timestamp,value` series. Rows must be consecutive quarter hours
/// of one calendar year; the first row fixes year and start interval.
inline TimeSeries parse_series(const CsvTable& t, const std::string& source, SeriesUnit unit = SeriesUnit::MW) {
  if (t.header.size() != 2 || t.header[0] != "timestamp") {
    throw InputError(source + ": header must be 'timestamp,<value column>'");
  }
  if (t.rows.empty()) throw InputError(source + ": series has no rows");
  TimeSeries s;
  s.unit = unit;
  s.values.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const std::string at = source + ":" + std::to_string(t.line_numbers[r]);
    const auto stamp = parse_timestamp(t.rows[r][0]);
    if (!stamp) throw InputError(at + ": bad timestamp '" + t.rows[r][0] + "' (want YYYY-MM-DDTHH:MM on a quarter hour)");
    if (r == 0) {
      s.year = stamp->first;
      s.first_interval = stamp->second;
    } else if (stamp->first != s.year || stamp->second != s.first_interval + r) {
      throw InputError(at + ": timestamp '" + t.rows[r][0] + "' is not the next quarter hour");
    }
    s.values.push_back(parse_double(t.rows[r][1], at));
  }
  return s;
}

inline TimeSeries read_series_csv(const std::string& path, SeriesUnit unit = SeriesUnit::MW) {
  return parse_series(read_csv(path), path, unit);
}

inline void write_series_csv(std::ostream& out, const TimeSeries& s, const std::string& column = "value") {
  out << "timestamp," << column << '\n';
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << interval_time(s.year, s.first_interval + i).iso() << ',' << format_number(s[i]) << '\n';
  }
}

}  // namespace eomsim::io
