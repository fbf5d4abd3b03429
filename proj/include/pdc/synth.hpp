#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdc/panel.hpp"

namespace pdc {

// Synthetic fleet generator for demos and end-to-end checks. Plants share a
// latent cloud factor so their outputs are rank-correlated (pairwise Kendall
// tau ~ cloud_tau between the latent cloud states), clouds persist from hour
// to hour, and loads carry a double-peak profile with correlated day levels.
struct SynthConfig {
  int days = 180;
  int periods_per_day = 24;
  std::string start_date = "2021-03-01";
  std::uint64_t seed = 42;
  std::vector<double> pv_caps_mw = {1200.0, 1000.0, 800.0, 600.0};
  std::vector<double> load_bases_mw = {2000.0, 1600.0, 1200.0};
  double cloud_tau = 0.6;          // pairwise rank correlation of plant cloud states
  double cloud_persistence = 0.85; // hour-to-hour AR(1) of the latent cloud
};

TimePanel make_synth_panel(const SynthConfig& cfg);

}  // namespace pdc
