#pragma once

#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <tuple>
#include <vector>

#include "tradecirc/ingest.hpp"
#include "tradecirc/types.hpp"

namespace tradecirc {

/// Activity interval of one anti-dumping measure on one directed flow.
struct DutyWindow {
    Hs6 product;
    CountryCode exporter;
    CountryCode importer;
    std::optional<YearMonth> announced;
    YearMonth imposed;
    YearMonth withdrawn;

    auto operator<=>(const DutyWindow&) const = default;
};

/// Ground-truth investigation status of one (product, exporter) pair.
struct InvestigationLabel {
    Hs6 product;
    CountryCode exporter;
    bool under_investigation = false;
    std::optional<YearMonth> published;

    auto operator<=>(const InvestigationLabel&) const = default;
};

using FlowKey = std::tuple<Hs6, CountryCode, CountryCode>;

/// Immutable registry of duty windows and investigation labels. Duty
/// windows are keyed by (product, exporter, importer); investigation
/// labels by (product, exporter). A flow is "AD-touched" when any of its
/// announcement / imposition / withdrawal dates falls inside the sample
/// window the registry was loaded with.
class AdRegistry {
public:
    /// duty_file rows:  hs6,exporter,importer,announced,imposed,withdrawn
    /// label_file rows: hs_code,exporter,published   (hs_code 6 or 8 digits;
    /// 8-digit codes are truncated to their 6-digit head and de-duplicated)
    /// Rows with imposed > withdrawn are rejected with a diagnostic;
    /// conflicting windows for one key are a fatal error.
    static AdRegistry load(std::istream& duty_file, std::istream& label_file,
                           std::optional<PeriodRange> sample = {},
                           std::vector<RowError>* diagnostics = nullptr);

    const std::vector<DutyWindow>& windows() const { return windows_; }
    std::optional<DutyWindow> window_for(const Hs6& product, const CountryCode& exporter,
                                         const CountryCode& importer) const;

    bool is_ad_free(const Hs6& product, const CountryCode& exporter,
                    const CountryCode& importer) const;
    const std::set<FlowKey>& ad_touched() const { return ad_touched_; }

    /// Label lookup; a pair absent from the label file is not under
    /// investigation.
    InvestigationLabel label_for(const Hs6& product, const CountryCode& exporter) const;
    std::vector<InvestigationLabel> labels() const;

private:
    std::vector<DutyWindow> windows_;                                   // sorted by key
    std::map<std::pair<Hs6, CountryCode>, InvestigationLabel> labels_;  // positives only
    std::set<FlowKey> ad_touched_;
};

inline AdRegistry load_registry(std::istream& duty_file, std::istream& label_file,
                                std::optional<PeriodRange> sample = {},
                                std::vector<RowError>* diagnostics = nullptr) {
    return AdRegistry::load(duty_file, label_file, sample, diagnostics);
}

/// Indicator sequence: 1 for every period t with imposed <= t <= withdrawn.
std::vector<int> duty_dummy(const DutyWindow& window, std::span<const YearMonth> periods);

}  // namespace tradecirc
