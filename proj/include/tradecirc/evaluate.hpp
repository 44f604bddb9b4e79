#pragma once

#include <span>
#include <string>

#include "tradecirc/detect.hpp"
#include "tradecirc/registry.hpp"

namespace tradecirc {

/// Detection outcomes against investigation labels at one significance
/// level. Rows: detected / not detected; columns: under / not under
/// investigation.
struct ConfusionMatrix {
    double alpha = 0.0;
    std::size_t tp = 0;  // detected, under investigation
    std::size_t fp = 0;  // detected, not under investigation
    std::size_t fn = 0;  // not detected, under investigation
    std::size_t tn = 0;  // not detected, not under investigation

    std::size_t total() const { return tp + fp + fn + tn; }
};

/// Counts flags with matching alpha against labels keyed by
/// (product, exporter). Every counted flag must have a label.
ConfusionMatrix confusion_matrix(std::span<const DetectionFlag> flags,
                                 std::span<const InvestigationLabel> labels, double alpha);

/// Recall over investigated flows: tp / (tp + fn).
double detection_rate(const ConfusionMatrix& cm);

/// Aligned-text rendering, one block per matrix.
std::string format_confusion(const ConfusionMatrix& cm);

}  // namespace tradecirc
