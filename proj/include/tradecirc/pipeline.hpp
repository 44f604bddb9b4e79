#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tradecirc/detect.hpp"
#include "tradecirc/evaluate.hpp"
#include "tradecirc/index.hpp"
#include "tradecirc/ingest.hpp"
#include "tradecirc/registry.hpp"

namespace tradecirc {

/// Knobs of the detection stage shared by the `detect`, `evaluate` and
/// `run` commands.
struct DetectOptions {
    PathStatistic statistic = PathStatistic::ValueSum;
    ResponseSpec spec = ResponseSpec::Standardized;
    TestTail tail = TestTail::TwoSided;
    double missing_threshold = 0.10;
    std::vector<double> alphas = {0.10, 0.05, 0.01};
    unsigned threads = 1;

    /// Throws PreconditionError on empty/out-of-range alphas, a missing
    /// threshold outside [0, 1], or zero threads.
    void validate() const;

    /// Alphas sorted descending with duplicates removed.
    std::vector<double> sorted_alphas() const;
};

/// Circumvention series of every product observed on the route
/// exporter -> importer, evaluated over the full `grid` (months without
/// data for a product are missing). Sorted by product code; one entry per
/// product that appears anywhere in `flows`.
std::vector<CircumventionSeries> route_series_universe(std::span<const FlowObservation> flows,
                                                       const CountryCode& exporter,
                                                       const CountryCode& importer,
                                                       PathStatistic statistic, PeriodRange grid);

/// Everything the pipeline learned about one focal flow.
struct FocalOutcome {
    DutyWindow window;
    std::size_t control_count = 0;
    FEFit fit;
    std::vector<DetectionFlag> flags;  // one per alpha, descending alpha
};

struct PipelineResult {
    std::vector<FocalOutcome> outcomes;      // ordered by (product, exporter, importer)
    std::vector<ConfusionMatrix> matrices;   // one per alpha, descending alpha
    std::vector<InvestigationLabel> labels;  // ground truth used, one per (product, exporter)
};

/// Detection outcomes for an explicit list of focal duty windows, collected
/// in list order regardless of thread count. A failure on any focal flow
/// propagates with the flow named in the message.
std::vector<FocalOutcome> run_detections(std::span<const FlowObservation> flows,
                                         const AdRegistry& registry,
                                         std::span<const DutyWindow> focal, PeriodRange sample,
                                         const DetectOptions& options);

/// Runs detection for every duty window whose imposition and withdrawal
/// both fall inside `sample`, then scores the flags against the registry's
/// labels. Focal flows are processed independently (in parallel when
/// options.threads > 1) and collected in key order, so the result does not
/// depend on the thread count. A failure on any focal flow propagates with
/// the flow named in the message.
PipelineResult detect_and_evaluate(std::span<const FlowObservation> flows,
                                   const AdRegistry& registry, PeriodRange sample,
                                   const DetectOptions& options);

/// File-based configuration of the full `run` subcommand.
struct RunConfig {
    std::string flows_path;
    std::string duties_path;
    std::string labels_path;
    std::optional<std::string> eu_path;  // default: built-in EU-28 roster
    std::string out_dir;
    PeriodRange sample;
    DetectOptions options;
    char delimiter = ',';

    /// Throws PreconditionError when start > end or options are invalid.
    void validate() const;
};

struct RunReport {
    PipelineResult result;
    std::size_t records_parsed = 0;
    std::size_t flow_count = 0;
    std::vector<RowError> flow_diagnostics;
    std::vector<RowError> registry_diagnostics;
};

/// Full pipeline: ingest + harmonize, load registry, detect, evaluate and
/// write `detections.csv`, `confusion.csv`, `confusion.txt` and
/// `manifest.json` into config.out_dir. Outputs are byte-identical across
/// runs with identical config and inputs.
RunReport run_pipeline(const RunConfig& config);

/// FNV-1a 64-bit digest of a byte string (used for manifest checksums).
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace tradecirc
