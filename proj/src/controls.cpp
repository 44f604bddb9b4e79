#include "tradecirc/controls.hpp"

#include <algorithm>

#include "tradecirc/errors.hpp"

namespace tradecirc {

double missing_fraction(const CircumventionSeries& series) {
    if (series.periods.empty()) {
        throw PreconditionError("series has no periods");
    }
    std::size_t missing = 0;
    for (const auto& v : series.values) {
        if (!v) ++missing;
    }
    return static_cast<double>(missing) / static_cast<double>(series.periods.size());
}

ControlPanel select_controls(const CircumventionSeries& focal,
                             std::span<const CircumventionSeries> universe,
                             const AdRegistry& registry, double missing_threshold) {
    ControlPanel panel;
    panel.focal = focal;
    for (const auto& candidate : universe) {
        if (candidate.exporter != focal.exporter || candidate.importer != focal.importer) {
            throw PreconditionError("candidate " + candidate.product +
                                    " is not on the focal route " + focal.exporter + "->" +
                                    focal.importer);
        }
        if (candidate.periods != focal.periods) {
            throw PreconditionError("candidate " + candidate.product +
                                    " is not on the focal period grid");
        }
        if (hs_chapter(candidate.product) == hs_chapter(focal.product)) continue;
        if (!registry.is_ad_free(candidate.product, candidate.exporter, candidate.importer)) {
            continue;
        }
        if (missing_fraction(candidate) > missing_threshold) continue;
        panel.controls.push_back(candidate);
    }
    std::sort(panel.controls.begin(), panel.controls.end(),
              [](const CircumventionSeries& a, const CircumventionSeries& b) {
                  return a.product < b.product;
              });
    if (panel.controls.empty()) {
        throw EmptyPanelError("no control series survive selection for product " + focal.product);
    }
    return panel;
}

}  // namespace tradecirc
