#include "tradecirc/evaluate.hpp"

#include <cstdio>
#include <map>

#include "tradecirc/errors.hpp"

namespace tradecirc {

ConfusionMatrix confusion_matrix(std::span<const DetectionFlag> flags,
                                 std::span<const InvestigationLabel> labels, double alpha) {
    std::map<std::pair<Hs6, CountryCode>, bool> truth;
    for (const auto& label : labels) {
        truth[{label.product, label.exporter}] = label.under_investigation;
    }

    ConfusionMatrix cm;
    cm.alpha = alpha;
    for (const auto& flag : flags) {
        if (flag.alpha != alpha) continue;
        auto it = truth.find({flag.product, flag.exporter});
        if (it == truth.end()) {
            throw MissingLabelError("no investigation label for flow " + flag.product + " " +
                                    flag.exporter + "->" + flag.importer);
        }
        const bool investigated = it->second;
        if (flag.detected && investigated) ++cm.tp;
        else if (flag.detected && !investigated) ++cm.fp;
        else if (!flag.detected && investigated) ++cm.fn;
        else ++cm.tn;
    }
    return cm;
}

double detection_rate(const ConfusionMatrix& cm) {
    if (cm.tp + cm.fn == 0) {
        throw UndefinedRateError("detection rate undefined: no investigated flows");
    }
    return static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
}

std::string format_confusion(const ConfusionMatrix& cm) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "alpha=%.2f          Investigated  Not investigated\n"
                  "  Detected      %12zu  %16zu\n"
                  "  Not detected  %12zu  %16zu\n",
                  cm.alpha, cm.tp, cm.fp, cm.fn, cm.tn);
    return buf;
}

}  // namespace tradecirc
