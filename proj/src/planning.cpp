#include "pdc/planning.hpp"

#include <algorithm>
#include <cmath>

namespace pdc {

namespace {

constexpr double kDaysPerYear = 365.0;

}  // namespace

double daily_cost(const ResourceSpec& r) { return r.capex_per_mw * r.rarr / kDaysPerYear; }

double breakeven_point(const ResourceSpec& r) {
  if (!(r.benefit_per_mwh > 0.0))
    throw ZeroBenefit("breakeven_point: benefit_per_mwh must be positive");
  return daily_cost(r) / r.benefit_per_mwh;
}

double optimal_mou(const std::vector<SweepRow>& sweep, const ResourceSpec& r, double mou_start) {
  if (sweep.empty()) throw EmptySweep("optimal_mou: empty sweep");
  const double be = breakeven_point(r);
  const double g = (sweep.size() > 1) ? sweep[1].mou_mw - sweep[0].mou_mw : 1.0;
  const double tol = 1e-6 * std::max(1.0, std::fabs(g));
  long idx = -1;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    if (std::fabs(sweep[i].mou_mw - mou_start) <= tol) idx = static_cast<long>(i);
  }
  if (idx < 0) throw EmptySweep("optimal_mou: mou_start is not on the sweep grid");

  double allocated = 0.0;
  while (idx > 0) {
    if (sweep[static_cast<std::size_t>(idx)].ds_mwh_per_mw < be) break;
    if (allocated + g > r.mw_limit + tol) break;
    allocated += g;
    --idx;
  }
  return sweep[static_cast<std::size_t>(idx)].mou_mw;
}

Plan stack_resources(const ProbCurve& pdc, double base_mou,
                     const std::vector<ResourceSpec>& resources, double grid_step,
                     double period_hours) {
  if (!(grid_step > 0.0)) throw EmptySweep("stack_resources: grid_step must be positive");
  for (std::size_t i = 0; i + 1 < resources.size(); ++i) {
    if (breakeven_point(resources[i]) > breakeven_point(resources[i + 1]) + 1e-12)
      throw Error("stack_resources: resources must be ordered by ascending break-even point");
  }

  const auto S = [&](double mou) {
    return probabilistic_area(pdc, mou, period_hours, grid_step).s_mwh;
  };

  // Nothing lies below the lowest support; the walk cannot be economical there.
  double support_floor = pdc.periods.empty() ? 0.0 : pdc.periods[0].origin;
  for (const auto& d : pdc.periods) support_floor = std::min(support_floor, d.origin);

  Plan plan;
  plan.base_mou_mw = base_mou;
  plan.grid_step_mw = grid_step;
  plan.base_s_mwh = S(base_mou);

  double m = base_mou;
  for (const auto& r : resources) {
    const double be = breakeven_point(r);
    PlanRow row;
    row.name = r.name;
    row.kind = r.kind;
    row.daily_cost_per_mw = daily_cost(r);
    row.breakeven_mwh_per_mw = be;
    row.start_mou_mw = m;

    double allocated = 0.0;
    double s_here = S(m);
    while (m > support_floor - 10.0 * grid_step) {
      double step = grid_step;
      if (allocated + step > r.mw_limit) step = r.mw_limit - allocated;
      if (step <= 1e-12) break;
      const double s_next = S(m - step);
      const double ds = (s_here - s_next) / step;
      if (ds < be) break;
      m -= step;
      allocated += step;
      s_here = s_next;
      if (step < grid_step) break;  // MW limit bound mid-step
    }

    row.final_mou_mw = m;
    row.allocated_mw = allocated;
    row.gain_mwh_per_day = S(row.start_mou_mw) - s_here;
    if (r.storage_hours > 0.0 && row.gain_mwh_per_day > r.storage_hours * allocated + 1e-9)
      row.adequacy_warning = true;
    plan.rows.push_back(std::move(row));
  }
  plan.residual_s_mwh = S(m);
  return plan;
}

}  // namespace pdc
