#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "tradecirc/controls.hpp"
#include "tradecirc/registry.hpp"
#include "tradecirc/types.hpp"

namespace tradecirc {

/// Response transformation for the panel regression.
///   LogLevel:        log(y)
///   Standardized:    per-entity z-score of log(y)         (default)
///   StandardizedRaw: per-entity z-score of y itself
enum class ResponseSpec { LogLevel, Standardized, StandardizedRaw };

std::optional<ResponseSpec> parse_response_spec(std::string_view text);
std::string_view response_spec_name(ResponseSpec spec);

enum class TestTail { TwoSided, UpperOnly };

/// One stacked panel row. Entity 0 is the focal series; controls follow in
/// product order. The duty dummy is nonzero only on focal rows.
struct PanelObservation {
    int entity = 0;
    YearMonth period;
    double response = 0.0;
    int dummy = 0;
};

struct Panel {
    std::vector<PanelObservation> rows;
    ResponseSpec spec = ResponseSpec::LogLevel;
};

/// Within-estimator fit of the level-shift coefficient.
struct FEFit {
    double beta_hat = 0.0;
    double se = 0.0;
    double t_stat = 0.0;
    double p_value = 1.0;
    long dof = 0;
    std::size_t n_obs = 0;
    std::size_t n_entities = 0;
    ResponseSpec spec = ResponseSpec::LogLevel;
};

struct DetectionFlag {
    Hs6 product;
    CountryCode exporter;
    CountryCode importer;
    double alpha = 0.0;
    bool detected = false;
    FEFit fit;
};

/// Stacks focal and control series into an unbalanced panel. Missing
/// periods are dropped. Under the log-based specs every observed value
/// must be strictly positive (NonpositiveResponseError otherwise). The
/// duty dummy must vary on the focal entity after the missing-drop
/// (UnidentifiedBetaError otherwise).
Panel build_panel(const ControlPanel& panel, const DutyWindow& window, ResponseSpec spec);

/// Demeans response and dummy per entity and regresses the former on the
/// latter. Standard errors are classical homoskedastic within-OLS errors
/// with dof = n_obs - n_entities - 1; the p-value comes from the exact
/// Student-t distribution.
FEFit fit_fixed_effects(const Panel& panel, TestTail tail = TestTail::TwoSided);

/// Flags suspicion when p < alpha.
DetectionFlag detect(const FEFit& fit, double alpha, const Hs6& product,
                     const CountryCode& exporter, const CountryCode& importer);

}  // namespace tradecirc
