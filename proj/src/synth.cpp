#include "pdc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pdc/errors.hpp"
#include "pdc/normal.hpp"
#include "pdc/rng.hpp"

namespace pdc {

namespace {

constexpr double kPi = 3.14159265358979323846;

enum SynthStream : int {
  kCommonCloud = 0,  // shared hourly cloud factor, one stream per day
  kPlantCloud = 1,   // per-plant idiosyncratic cloud
  kPvNoise = 2,      // per-plant multiplicative measurement noise
  kLoadDay = 3,      // per-meter day-level factor
  kLoadNoise = 4,    // per-meter hourly noise
  kCommonDay = 5,    // day-level factor shared by all meters
};

std::uint64_t synth_stream(int role, int unit, int day) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(role)) << 40) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(unit)) << 20) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(day));
}

// Bell-clipped daylight shape over the period midpoint; zero outside 6h-19h.
double pv_shape(double hour_mid) {
  if (hour_mid < 6.0 || hour_mid > 19.0) return 0.0;
  const double s = std::sin(kPi * (hour_mid - 6.0) / 13.0);
  return std::pow(std::max(s, 0.0), 1.2);
}

// Overnight trough, morning shoulder, dominant evening peak.
double load_shape(double hour_mid) {
  const double morning = std::exp(-std::pow((hour_mid - 8.5) / 2.2, 2.0));
  const double evening = std::exp(-std::pow((hour_mid - 19.5) / 2.5, 2.0));
  return 0.55 + 0.2 * morning + 0.4 * evening;
}

// AR(1) path of standard normals across the day's periods.
std::vector<double> ar1_path(int T, double phi, CounterRng& rng) {
  std::vector<double> z(static_cast<std::size_t>(T));
  z[0] = rng.normal();
  const double w = std::sqrt(1.0 - phi * phi);
  for (int h = 1; h < T; ++h) z[static_cast<std::size_t>(h)] = phi * z[h - 1] + w * rng.normal();
  return z;
}

}  // namespace

TimePanel make_synth_panel(const SynthConfig& cfg) {
  if (cfg.days < 1 || cfg.periods_per_day < 2) throw EmptyPanel("synthetic panel too small");
  const int T = cfg.periods_per_day;
  const int n_pv = static_cast<int>(cfg.pv_caps_mw.size());
  const int n_load = static_cast<int>(cfg.load_bases_mw.size());
  const double hours = 24.0 / T;

  // Shared-factor weight giving pairwise latent correlation sin(pi*tau/2)
  // between plants, hence pairwise Kendall tau = cloud_tau.
  const double rho_pair = std::sin(kPi * cfg.cloud_tau / 2.0);
  const double w = std::sqrt(std::clamp(rho_pair, 0.0, 1.0));
  const double w_res = std::sqrt(1.0 - w * w);
  const double phi = cfg.cloud_persistence;

  TimePanel panel;
  panel.periods_per_day = T;
  panel.days.resize(static_cast<std::size_t>(cfg.days));
  for (int d = 0; d < cfg.days; ++d) panel.days[static_cast<std::size_t>(d)] = add_days(cfg.start_date, d);

  for (int k = 0; k < n_pv; ++k) {
    SeriesMeta m;
    m.id = "pv" + std::to_string(k + 1);
    m.kind = SeriesKind::pv;
    m.capacity_mw = cfg.pv_caps_mw[static_cast<std::size_t>(k)];
    panel.series.push_back(m);
  }
  for (int k = 0; k < n_load; ++k) {
    SeriesMeta m;
    m.id = "load" + std::to_string(k + 1);
    m.kind = SeriesKind::load;
    panel.series.push_back(m);
  }
  panel.values.assign(panel.series.size(),
                      std::vector<std::vector<double>>(
                          static_cast<std::size_t>(T),
                          std::vector<double>(static_cast<std::size_t>(cfg.days), 0.0)));

  for (int d = 0; d < cfg.days; ++d) {
    CounterRng common_rng(cfg.seed, synth_stream(kCommonCloud, 0, d));
    const std::vector<double> g = ar1_path(T, phi, common_rng);

    // Mean daylight brightness, used to tilt that day's load upward on sunny days.
    double bright = 0.0;
    int daylight = 0;
    for (int h = 0; h < T; ++h) {
      if (pv_shape((h + 0.5) * hours) > 0.0) {
        bright += normal_cdf(g[static_cast<std::size_t>(h)]);
        ++daylight;
      }
    }
    bright = daylight > 0 ? bright / daylight : 0.5;

    for (int k = 0; k < n_pv; ++k) {
      CounterRng cloud_rng(cfg.seed, synth_stream(kPlantCloud, k, d));
      CounterRng noise_rng(cfg.seed, synth_stream(kPvNoise, k, d));
      const std::vector<double> e = ar1_path(T, phi, cloud_rng);
      const double cap = cfg.pv_caps_mw[static_cast<std::size_t>(k)];
      for (int h = 0; h < T; ++h) {
        const double shape = pv_shape((h + 0.5) * hours);
        double value = 0.0;
        if (shape > 0.0) {
          const double z = w * g[static_cast<std::size_t>(h)] + w_res * e[static_cast<std::size_t>(h)];
          const double cloud = 0.25 + 0.75 * std::pow(normal_cdf(z), 0.8);
          value = cap * shape * cloud * (1.0 + 0.04 * noise_rng.normal());
          value = std::max(value, 0.0);
        }
        panel.values[static_cast<std::size_t>(k)][static_cast<std::size_t>(h)]
                    [static_cast<std::size_t>(d)] = value;
      }
    }

    CounterRng day_rng(cfg.seed, synth_stream(kCommonDay, 0, d));
    const double a = day_rng.normal();
    const bool weekend = (d % 7) >= 5;  // start_date defaults to a Monday
    for (int k = 0; k < n_load; ++k) {
      CounterRng level_rng(cfg.seed, synth_stream(kLoadDay, k, d));
      CounterRng noise_rng(cfg.seed, synth_stream(kLoadNoise, k, d));
      const double b = level_rng.normal();
      double level = 1.0 + 0.08 * (0.7 * a + 0.714 * b) + 0.06 * (bright - 0.5);
      if (weekend) level *= 0.94;
      const double base = cfg.load_bases_mw[static_cast<std::size_t>(k)];
      for (int h = 0; h < T; ++h) {
        const double value =
            base * load_shape((h + 0.5) * hours) * level * (1.0 + 0.02 * noise_rng.normal());
        panel.values[static_cast<std::size_t>(n_pv + k)][static_cast<std::size_t>(h)]
                    [static_cast<std::size_t>(d)] = std::max(value, 0.0);
      }
    }
  }
  return panel;
}

}  // namespace pdc
