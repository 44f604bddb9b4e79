#include "tradecirc/index.hpp"

#include <cmath>

#include "tradecirc/errors.hpp"

namespace tradecirc {

std::optional<PathStatistic> parse_path_statistic(std::string_view text) {
    if (text == "value") return PathStatistic::ValueSum;
    if (text == "quantity") return PathStatistic::QuantitySum;
    if (text == "last-leg") return PathStatistic::LastLegValue;
    return std::nullopt;
}

std::string_view path_statistic_name(PathStatistic stat) {
    switch (stat) {
        case PathStatistic::ValueSum: return "value";
        case PathStatistic::QuantitySum: return "quantity";
        case PathStatistic::LastLegValue: return "last-leg";
    }
    return "?";
}

double two_hop_value(const TradeNetwork& net, const CountryCode& exporter,
                     const CountryCode& importer, const CountryCode& via, PathStatistic stat) {
    if (exporter == importer) {
        throw PreconditionError("exporter equals importer: " + exporter);
    }
    if (via == exporter || via == importer) {
        throw PreconditionError("via country " + via + " is an endpoint of the route");
    }
    auto first_leg = net.edge(exporter, via);
    auto last_leg = net.edge(via, importer);
    if (!first_leg || !last_leg) return 0.0;  // a dangling leg is not a path
    switch (stat) {
        case PathStatistic::ValueSum:
            return first_leg->value + last_leg->value;
        case PathStatistic::QuantitySum:
            if (!first_leg->quantity || !last_leg->quantity) return 0.0;
            return *first_leg->quantity + *last_leg->quantity;
        case PathStatistic::LastLegValue:
            return last_leg->value;
    }
    return 0.0;
}

double circumvention_index(const TradeNetwork& net, const CountryCode& exporter,
                           const CountryCode& importer, PathStatistic stat) {
    if (exporter == importer) {
        throw PreconditionError("exporter equals importer: " + exporter);
    }
    double total = 0.0;
    // Only first legs leaving the exporter can start a complete path, so the
    // scan over out-edges visits every contributing third country once.
    for (const auto& e : net.out_edges(exporter)) {
        if (e.destination == importer) continue;  // the direct edge is not a path
        total += two_hop_value(net, exporter, importer, e.destination, stat);
    }
    return total;
}

CircumventionSeries index_series(std::span<const TradeNetwork> networks,
                                 const CountryCode& exporter, const CountryCode& importer,
                                 PathStatistic stat, std::optional<PeriodRange> grid) {
    if (networks.empty()) {
        throw PreconditionError("no periods: empty network sequence");
    }
    for (std::size_t i = 0; i < networks.size(); ++i) {
        if (networks[i].product() != networks.front().product()) {
            throw PreconditionError("mixed products: " + networks.front().product() + " vs " +
                                    networks[i].product());
        }
        if (i > 0 && !(networks[i - 1].period() < networks[i].period())) {
            throw PreconditionError("network periods not strictly increasing");
        }
    }

    PeriodRange range = grid ? *grid
                             : PeriodRange{networks.front().period(), networks.back().period()};
    CircumventionSeries series;
    series.product = networks.front().product();
    series.exporter = exporter;
    series.importer = importer;
    series.statistic = stat;
    series.periods = range.months();
    series.values.assign(series.periods.size(), std::nullopt);

    std::size_t net_idx = 0;
    for (std::size_t i = 0; i < series.periods.size(); ++i) {
        while (net_idx < networks.size() && networks[net_idx].period() < series.periods[i]) {
            ++net_idx;
        }
        if (net_idx < networks.size() && networks[net_idx].period() == series.periods[i]) {
            series.values[i] = circumvention_index(networks[net_idx], exporter, importer, stat);
        }
    }
    return series;
}

std::vector<std::optional<double>> standardize_series(
    const std::vector<std::optional<double>>& values) {
    std::size_t n = 0;
    double sum = 0.0;
    for (const auto& v : values) {
        if (v) {
            ++n;
            sum += *v;
        }
    }
    if (n < 2) {
        throw InsufficientDataError("standardization needs at least 2 non-missing values, got " +
                                    std::to_string(n));
    }
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (const auto& v : values) {
        if (v) ss += (*v - mean) * (*v - mean);
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd == 0.0) {
        throw DegenerateSeriesError("constant series has zero standard deviation");
    }
    std::vector<std::optional<double>> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i]) out[i] = (*values[i] - mean) / sd;
    }
    return out;
}

}  // namespace tradecirc
