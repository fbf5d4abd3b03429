#pragma once

#include <string>
#include <vector>

#include "pdc/curves.hpp"
#include "pdc/indices.hpp"

namespace pdc {

// A flexibility resource that can lower the fleet's minimum-output level.
struct ResourceSpec {
  std::string name;
  std::string kind;  // "retrofit", "storage", ...
  double capex_per_mw = 0.0;     // USD/MW
  double rarr = 0.0;             // required annual rate of return
  double benefit_per_mwh = 0.0;  // USD per MWh of absorbed energy
  double mw_limit = 0.0;         // capacity available, MW
  double storage_hours = 0.0;    // energy depth for storage-like resources
};

// capex * rarr / 365 (USD per MW-day).
double daily_cost(const ResourceSpec& r);

// Marginal area (MWh per MW-day) at which the resource pays for itself.
// Throws ZeroBenefit when benefit_per_mwh <= 0.
double breakeven_point(const ResourceSpec& r);

// Walks a flat-MOU area sweep downward from mou_start and stops at the first
// grid point whose next downward step is uneconomical (ds below break-even)
// or would exceed the resource's MW limit. Returns the stopping MOU.
// Throws EmptySweep when mou_start is not on the sweep grid.
double optimal_mou(const std::vector<SweepRow>& sweep, const ResourceSpec& r, double mou_start);

struct PlanRow {
  std::string name;
  std::string kind;
  double daily_cost_per_mw = 0.0;
  double breakeven_mwh_per_mw = 0.0;
  double start_mou_mw = 0.0;
  double final_mou_mw = 0.0;
  double allocated_mw = 0.0;
  double gain_mwh_per_day = 0.0;   // S(start) - S(final)
  bool adequacy_warning = false;   // storage energy depth exceeded
};

struct Plan {
  double base_mou_mw = 0.0;
  double base_s_mwh = 0.0;      // expected daily curtailment before any resource
  double residual_s_mwh = 0.0;  // left after the last resource
  double grid_step_mw = 0.0;
  std::vector<PlanRow> rows;
};

// Applies resources in the given order, each continuing from the previous stop.
// Precondition: resources sorted by ascending break-even point (throws Error
// otherwise rather than silently re-sorting). Allocation advances in grid_step
// MW increments while the marginal area stays at or above the resource's
// break-even, with a final partial step when the MW limit binds first.
Plan stack_resources(const ProbCurve& pdc, double base_mou,
                     const std::vector<ResourceSpec>& resources, double grid_step,
                     double period_hours);

}  // namespace pdc
