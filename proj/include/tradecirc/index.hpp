#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tradecirc/graph.hpp"
#include "tradecirc/types.hpp"

namespace tradecirc {

/// What a two-hop path contributes: the sum of both leg values, the sum of
/// both leg quantities, or the value of the final leg into the importer.
enum class PathStatistic { ValueSum, QuantitySum, LastLegValue };

std::optional<PathStatistic> parse_path_statistic(std::string_view text);
std::string_view path_statistic_name(PathStatistic stat);

/// Monthly circumvention index of one (product, exporter, importer) triple.
/// A missing entry means no network data existed for that month, which is
/// distinct from an observed index of zero.
struct CircumventionSeries {
    Hs6 product;
    CountryCode exporter;  // origin of the suspected re-routing
    CountryCode importer;  // destination imposing the duty
    std::vector<YearMonth> periods;                // strictly increasing, monthly spacing
    std::vector<std::optional<double>> values;     // aligned with periods
    PathStatistic statistic = PathStatistic::ValueSum;

    std::size_t size() const { return periods.size(); }
};

/// Contribution of the single route exporter -> via -> importer. A path
/// counts only when both legs exist in the network; otherwise zero.
double two_hop_value(const TradeNetwork& net, const CountryCode& exporter,
                     const CountryCode& importer, const CountryCode& via, PathStatistic stat);

/// Total two-hop flow from exporter to importer over every third country.
double circumvention_index(const TradeNetwork& net, const CountryCode& exporter,
                           const CountryCode& importer, PathStatistic stat);

/// Evaluates the index per month. All networks must share one product and
/// have strictly increasing periods. The series covers every month of
/// `grid` (default: from the first to the last supplied network); months
/// with no network are recorded as missing.
CircumventionSeries index_series(std::span<const TradeNetwork> networks,
                                 const CountryCode& exporter, const CountryCode& importer,
                                 PathStatistic stat, std::optional<PeriodRange> grid = {});

/// Z-scores the non-missing entries (sample sd, divisor n-1); missing
/// entries stay missing.
std::vector<std::optional<double>> standardize_series(
    const std::vector<std::optional<double>>& values);

}  // namespace tradecirc
