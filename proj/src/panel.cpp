#include "pdc/panel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace pdc {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct Timestamp {
  std::string date;  // YYYY-MM-DD
  int sec_of_day = 0;
};

Timestamp parse_timestamp(const std::string& raw) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, se = 0;
  char sep = 0;
  const int n = std::sscanf(raw.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d", &y, &mo, &d, &sep, &h, &mi, &se);
  if (n < 6 || (sep != 'T' && sep != ' '))
    throw AlignmentError("unparseable timestamp: " + raw);
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || se > 59)
    throw AlignmentError("timestamp out of range: " + raw);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, mo, d);
  return {buf, h * 3600 + mi * 60 + se};
}

// day -> per-series, per-period value (NaN = missing)
using DayTable = std::map<std::string, std::vector<std::vector<double>>>;

void read_csv(const std::string& path, SeriesKind kind, int periods_per_day, int period_sec,
              const std::string& from_date, const std::string& to_date,
              std::vector<SeriesMeta>& series, DayTable& table) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw SchemaError(path + ": empty file");
  if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line = line.substr(3);
  auto header = split_csv_line(line);
  if (header.empty() || trim(header[0]) != "timestamp")
    throw SchemaError(path + ": first column must be 'timestamp'");
  const std::size_t first_series = series.size();
  for (std::size_t c = 1; c < header.size(); ++c) {
    const std::string id = trim(header[c]);
    if (id.empty()) throw SchemaError(path + ": empty series name");
    for (const auto& s : series) {
      if (s.id == id) throw SchemaError("duplicate series id: " + id);
    }
    series.push_back({id, kind, std::nullopt});
  }
  if (series.size() == first_series) throw SchemaError(path + ": no series columns");

  std::set<std::pair<std::string, int>> seen;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw SchemaError(path + ":" + std::to_string(line_no) + ": wrong field count");
    const Timestamp ts = parse_timestamp(trim(fields[0]));
    if (!from_date.empty() && ts.date < from_date) continue;
    if (!to_date.empty() && ts.date > to_date) continue;
    if (ts.sec_of_day % period_sec != 0)
      throw AlignmentError(path + ":" + std::to_string(line_no) + ": timestamp off the period grid");
    const int t = ts.sec_of_day / period_sec;
    if (!seen.insert({ts.date, t}).second)
      throw AlignmentError(path + ":" + std::to_string(line_no) + ": duplicate timestamp");
    auto& day = table[ts.date];
    // Per-day storage: [series][period], grown on demand.
    for (std::size_t c = 1; c < header.size(); ++c) {
      const std::size_t sidx = first_series + (c - 1);
      if (day.size() <= sidx) day.resize(sidx + 1);
      if (day[sidx].empty())
        day[sidx].assign(static_cast<std::size_t>(periods_per_day),
                         std::numeric_limits<double>::quiet_NaN());
      const std::string cell = trim(fields[c]);
      double v = std::numeric_limits<double>::quiet_NaN();
      if (!cell.empty()) {
        const char* b = cell.data();
        const char* e = b + cell.size();
        auto [p, ec] = std::from_chars(b, e, v);
        if (ec != std::errc() || p != e) v = std::numeric_limits<double>::quiet_NaN();
      }
      if (kind == SeriesKind::pv && std::isfinite(v) && v < 0.0) {
        // Inverter noise floor: clamp tiny negatives, reject anything larger.
        v = (v >= -1e-6) ? 0.0 : std::numeric_limits<double>::quiet_NaN();
      }
      day[sidx][static_cast<std::size_t>(t)] = v;
    }
  }
}

}  // namespace

std::size_t TimePanel::series_index(const std::string& id) const {
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series[i].id == id) return i;
  }
  throw UnknownSeries("unknown series: " + id);
}

const std::vector<double>& TimePanel::slice_period(std::size_t series_idx, int t) const {
  if (series_idx >= series.size()) throw UnknownSeries("series index out of range");
  if (t < 0 || t >= periods_per_day) throw PeriodOutOfRange("period out of range");
  return values[series_idx][static_cast<std::size_t>(t)];
}

const std::vector<double>& TimePanel::slice_period(const std::string& id, int t) const {
  return slice_period(series_index(id), t);
}

std::vector<std::size_t> TimePanel::of_kind(SeriesKind k) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series[i].kind == k) idx.push_back(i);
  }
  return idx;
}

std::vector<double> TimePanel::kind_total(SeriesKind k, int t) const {
  std::vector<double> tot(days.size(), 0.0);
  for (std::size_t s : of_kind(k)) {
    const auto& v = slice_period(s, t);
    for (std::size_t j = 0; j < tot.size(); ++j) tot[j] += v[j];
  }
  return tot;
}

std::vector<double> TimePanel::net_load(int t) const {
  std::vector<double> net = kind_total(SeriesKind::load, t);
  const std::vector<double> pv = kind_total(SeriesKind::pv, t);
  for (std::size_t j = 0; j < net.size(); ++j) net[j] -= pv[j];
  return net;
}

LoadResult load_panel(const std::string& pv_csv_path, const std::string& load_csv_path,
                      int periods_per_day, const std::string& from_date,
                      const std::string& to_date) {
  if (periods_per_day <= 0 || 86400 % periods_per_day != 0)
    throw PeriodOutOfRange("periods_per_day must divide 86400");
  const int period_sec = 86400 / periods_per_day;

  std::vector<SeriesMeta> series;
  DayTable table;
  read_csv(pv_csv_path, SeriesKind::pv, periods_per_day, period_sec, from_date, to_date, series,
           table);
  read_csv(load_csv_path, SeriesKind::load, periods_per_day, period_sec, from_date, to_date,
           series, table);

  TimePanel panel;
  panel.periods_per_day = periods_per_day;
  panel.series = series;
  int dropped = 0;
  for (const auto& [date, day] : table) {
    bool complete = day.size() == series.size();
    if (complete) {
      for (const auto& per_series : day) {
        if (per_series.size() != static_cast<std::size_t>(periods_per_day)) {
          complete = false;
          break;
        }
        for (double v : per_series) {
          if (!std::isfinite(v)) {
            complete = false;
            break;
          }
        }
        if (!complete) break;
      }
    }
    if (!complete) {
      ++dropped;
      continue;
    }
    panel.days.push_back(date);
  }
  if (panel.day_count() < 30)
    throw EmptyPanel("fewer than 30 complete days after ingestion (" +
                     std::to_string(panel.days.size()) + ")");

  panel.values.assign(series.size(),
                      std::vector<std::vector<double>>(
                          static_cast<std::size_t>(periods_per_day),
                          std::vector<double>(panel.days.size(), 0.0)));
  for (std::size_t j = 0; j < panel.days.size(); ++j) {
    const auto& day = table.at(panel.days[j]);
    for (std::size_t s = 0; s < series.size(); ++s) {
      for (int t = 0; t < periods_per_day; ++t) {
        panel.values[s][static_cast<std::size_t>(t)][j] = day[s][static_cast<std::size_t>(t)];
      }
    }
  }
  return {std::move(panel), dropped};
}

namespace {

std::string format_value(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

void write_csv(const TimePanel& panel, SeriesKind kind, const std::string& path) {
  const auto idx = panel.of_kind(kind);
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write " + path);
  out << "timestamp";
  for (std::size_t s : idx) out << "," << panel.series[s].id;
  out << "\n";
  const int period_sec = 86400 / panel.periods_per_day;
  for (std::size_t j = 0; j < panel.days.size(); ++j) {
    for (int t = 0; t < panel.periods_per_day; ++t) {
      const int sec = t * period_sec;
      char ts[32];
      std::snprintf(ts, sizeof(ts), "%sT%02d:%02d:%02d", panel.days[j].c_str(), sec / 3600,
                    (sec / 60) % 60, sec % 60);
      out << ts;
      for (std::size_t s : idx)
        out << "," << format_value(panel.values[s][static_cast<std::size_t>(t)][j]);
      out << "\n";
    }
  }
}

bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static const int d[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && leap(y)) return 29;
  return d[m - 1];
}

}  // namespace

void write_panel(const TimePanel& panel, const std::string& pv_csv_path,
                 const std::string& load_csv_path) {
  write_csv(panel, SeriesKind::pv, pv_csv_path);
  write_csv(panel, SeriesKind::load, load_csv_path);
}

std::string add_days(const std::string& iso_date, int n) {
  int y = 0, m = 0, d = 0;
  if (std::sscanf(iso_date.c_str(), "%4d-%2d-%2d", &y, &m, &d) != 3)
    throw AlignmentError("bad date: " + iso_date);
  for (int i = 0; i < n; ++i) {
    if (++d > days_in_month(y, m)) {
      d = 1;
      if (++m > 12) {
        m = 1;
        ++y;
      }
    }
  }
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
  return buf;
}

}  // namespace pdc
