#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pdc/errors.hpp"

namespace pdc {

enum class SeriesKind { pv, load };

struct SeriesMeta {
  std::string id;
  SeriesKind kind = SeriesKind::load;
  std::optional<double> capacity_mw;  // for reporting only
};

// Rectangular day-aligned panel: for every series and period, one sample per
// complete day. Sample j of any two slices refers to the same calendar day.
struct TimePanel {
  int periods_per_day = 0;
  std::vector<std::string> days;  // ISO dates, ascending
  std::vector<SeriesMeta> series;
  // values[series][period][day], MW
  std::vector<std::vector<std::vector<double>>> values;

  int day_count() const { return static_cast<int>(days.size()); }
  double period_hours() const { return 24.0 / periods_per_day; }

  std::size_t series_index(const std::string& id) const;
  const std::vector<double>& slice_period(std::size_t series_idx, int t) const;
  const std::vector<double>& slice_period(const std::string& id, int t) const;
  std::vector<std::size_t> of_kind(SeriesKind k) const;

  // Per-day sum across all series of a kind at period t.
  std::vector<double> kind_total(SeriesKind k, int t) const;
  // Per-day net load (total load - total PV) at period t.
  std::vector<double> net_load(int t) const;
};

struct LoadResult {
  TimePanel panel;
  int dropped_days = 0;  // days removed for missing or unusable values
};

// Loads one PV and one load CSV (header: timestamp,<id>,...; values in MW) into
// a day-aligned panel. Days missing any period in any series are dropped whole.
// Optional inclusive ISO date bounds filter rows before completeness checks.
// Throws SchemaError, AlignmentError, EmptyPanel (fewer than 30 complete days).
LoadResult load_panel(const std::string& pv_csv_path, const std::string& load_csv_path,
                      int periods_per_day, const std::string& from_date = "",
                      const std::string& to_date = "");

// Writes the panel back out as the two CSV files load_panel reads.
void write_panel(const TimePanel& panel, const std::string& pv_csv_path,
                 const std::string& load_csv_path);

// ISO date plus n calendar days.
std::string add_days(const std::string& iso_date, int n);

}  // namespace pdc
