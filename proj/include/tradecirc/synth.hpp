#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "tradecirc/ingest.hpp"
#include "tradecirc/registry.hpp"
#include "tradecirc/types.hpp"

namespace tradecirc::synth {

/// One injected re-routing episode: inside the window the legs
/// exporter->via and via->importer are scaled up by `magnitude` and the
/// direct edge exporter->importer is scaled by `direct_suppression`.
struct Injection {
    Hs6 product;
    CountryCode exporter;
    CountryCode importer;
    std::vector<CountryCode> via;
    PeriodRange window;
    double magnitude = 1.0;           // >= 1
    double direct_suppression = 1.0;  // in [0, 1]
};

/// A duty window with no behavioural response: the flow is dutied but
/// clean, so it enters the focal set without an investigation label.
struct PlaceboWindow {
    Hs6 product;
    CountryCode exporter;
    CountryCode importer;
    PeriodRange window;
};

/// Scenario parameters. Country codes are "C00".."C99" in index order;
/// product codes are built from a rotating two-digit chapter prefix
/// (10, 11, ..., 10 + n_chapters - 1) followed by the four-digit serial,
/// so chapter-based control selection has material to work with.
struct ScenarioConfig {
    int n_countries = 20;
    int n_products = 50;
    int n_periods = 72;   // >= 12
    int n_chapters = 30;  // chapters 10 .. 10 + n_chapters - 1
    YearMonth start{2010, 1};
    double baseline_location = 8.0;  // log-scale location of flow values
    double baseline_scale = 0.5;     // log-scale dispersion, > 0
    double edge_density = 0.3;       // in (0, 1]
    std::uint64_t seed = 1;
    std::vector<Injection> injections;
    std::vector<PlaceboWindow> placebos;

    void validate() const;  // throws FormatError on an invalid configuration
    PeriodRange sample() const;
    std::vector<CountryCode> country_codes() const;
    std::vector<Hs6> product_codes() const;

    static ScenarioConfig from_json(std::istream& in);
};

struct ScenarioData {
    std::vector<FlowObservation> flows;  // sorted by (product, period, origin, destination)
    std::vector<DutyWindow> windows;     // one per injection and placebo
    std::vector<InvestigationLabel> labels;  // one per injected (product, exporter)
};

/// Draws the scenario. Randomness is keyed per (product, month, ordered
/// country pair), so the output is a pure function of the config and two
/// runs with the same seed are identical element for element; injections
/// touch nothing outside their designated edges.
ScenarioData generate(const ScenarioConfig& config);

/// Serializes flows in the trade-flow input format (each flow written as
/// the origin country's export report).
void write_flows_csv(std::ostream& out, std::span<const FlowObservation> flows);
void write_duties_csv(std::ostream& out, std::span<const DutyWindow> windows);
void write_labels_csv(std::ostream& out, std::span<const InvestigationLabel> labels);

}  // namespace tradecirc::synth
