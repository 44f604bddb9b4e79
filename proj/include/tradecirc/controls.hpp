#pragma once

#include <span>
#include <vector>

#include "tradecirc/index.hpp"
#include "tradecirc/registry.hpp"

namespace tradecirc {

/// Focal circumvention series plus its selected control series. Every
/// control shares the focal route, differs from the focal product in its
/// HS chapter, is free of anti-dumping activity in the sample, and has a
/// missing fraction within the threshold.
struct ControlPanel {
    CircumventionSeries focal;
    std::vector<CircumventionSeries> controls;  // sorted by product code

    std::size_t control_count() const { return controls.size(); }
};

/// Share of periods with no recorded index value.
double missing_fraction(const CircumventionSeries& series);

/// Applies the three selection rules to the candidate universe. All
/// universe series must share the focal route and period grid. The
/// missing-data rule is inclusive: exactly `missing_threshold` passes.
/// Throws EmptyPanelError when nothing survives.
ControlPanel select_controls(const CircumventionSeries& focal,
                             std::span<const CircumventionSeries> universe,
                             const AdRegistry& registry, double missing_threshold = 0.10);

}  // namespace tradecirc
