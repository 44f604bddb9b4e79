#include "oracles.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <set>
#include <tuple>
#include <utility>

#include <Eigen/Dense>

namespace oracles {

using namespace tradecirc;

namespace {

std::optional<EdgeWeight> scan_edge(const TradeNetwork& net, const CountryCode& origin,
                                    const CountryCode& destination) {
    for (const TradeNetwork::Edge& e : net.edges()) {
        if (e.origin == origin && e.destination == destination) return e.weight;
    }
    return std::nullopt;
}

}  // namespace

double brute_force_index(const TradeNetwork& net, const CountryCode& exporter,
                         const CountryCode& importer, PathStatistic stat) {
    double total = 0.0;
    for (const CountryCode& via : net.nodes()) {
        if (via == exporter || via == importer) continue;
        auto first_leg = scan_edge(net, exporter, via);
        auto last_leg = scan_edge(net, via, importer);
        if (!first_leg || !last_leg) continue;
        switch (stat) {
            case PathStatistic::ValueSum:
                total += first_leg->value + last_leg->value;
                break;
            case PathStatistic::QuantitySum:
                if (first_leg->quantity && last_leg->quantity) {
                    total += *first_leg->quantity + *last_leg->quantity;
                }
                break;
            case PathStatistic::LastLegValue:
                total += last_leg->value;
                break;
        }
    }
    return total;
}

std::vector<FlowObservation> naive_mirror(const std::vector<TradeRecord>& records) {
    // Economic flow key: (period, origin, destination, hs6) where an export
    // report names the flow directly and an import report names the reverse.
    using Key = std::tuple<YearMonth, CountryCode, CountryCode, Hs6>;
    std::set<Key> keys;
    for (const TradeRecord& r : records) {
        if (r.flow_type == FlowType::Export) {
            keys.insert({r.period, r.reporter, r.partner, r.hs6});
        } else {
            keys.insert({r.period, r.partner, r.reporter, r.hs6});
        }
    }

    auto accumulate = [](std::optional<double>& slot, const std::optional<double>& x) {
        if (!x) return;
        slot = slot.value_or(0.0) + *x;
    };
    auto mean_present = [](const std::optional<double>& a,
                           const std::optional<double>& b) -> std::optional<double> {
        if (a && b) return (*a + *b) / 2.0;
        if (a) return a;
        return b;
    };

    std::vector<FlowObservation> out;
    for (const auto& [period, origin, destination, hs6] : keys) {
        bool has_export = false, has_import = false;
        std::optional<double> ex_value, ex_quantity, im_value, im_quantity;
        for (const TradeRecord& r : records) {
            if (r.period != period || r.hs6 != hs6) continue;
            if (r.flow_type == FlowType::Export && r.reporter == origin &&
                r.partner == destination) {
                has_export = true;
                accumulate(ex_value, r.value);
                accumulate(ex_quantity, r.quantity);
            } else if (r.flow_type == FlowType::Import && r.reporter == destination &&
                       r.partner == origin) {
                has_import = true;
                accumulate(im_value, r.value);
                accumulate(im_quantity, r.quantity);
            }
        }
        FlowObservation f;
        f.period = period;
        f.origin = origin;
        f.destination = destination;
        f.hs6 = hs6;
        if (has_export && has_import) {
            f.value = mean_present(ex_value, im_value);
            f.quantity = mean_present(ex_quantity, im_quantity);
            f.provenance = Provenance::MirrorAveraged;
        } else if (has_export) {
            f.value = ex_value;
            f.quantity = ex_quantity;
            f.provenance = Provenance::OriginReported;
        } else {
            f.value = im_value;
            f.quantity = im_quantity;
            f.provenance = Provenance::DestinationReported;
        }
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), [](const FlowObservation& a, const FlowObservation& b) {
        return std::tie(a.period, a.origin, a.destination, a.hs6) <
               std::tie(b.period, b.origin, b.destination, b.hs6);
    });
    return out;
}

LsdvFit lsdv_fit(const Panel& panel) {
    std::vector<int> entities;
    for (const PanelObservation& row : panel.rows) entities.push_back(row.entity);
    std::sort(entities.begin(), entities.end());
    entities.erase(std::unique(entities.begin(), entities.end()), entities.end());

    const auto n = static_cast<Eigen::Index>(panel.rows.size());
    const auto k = static_cast<Eigen::Index>(entities.size()) + 1;
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, k);
    Eigen::VectorXd y(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const PanelObservation& row = panel.rows[static_cast<std::size_t>(r)];
        X(r, 0) = row.dummy;
        const auto slot = std::lower_bound(entities.begin(), entities.end(), row.entity) -
                          entities.begin();
        X(r, 1 + slot) = 1.0;
        y(r) = row.response;
    }

    Eigen::VectorXd coef = X.colPivHouseholderQr().solve(y);
    Eigen::VectorXd resid = y - X * coef;
    const double dof = static_cast<double>(n) - static_cast<double>(entities.size()) - 1.0;
    const double sigma2 = resid.squaredNorm() / dof;
    Eigen::MatrixXd xtx_inv = (X.transpose() * X).inverse();
    return {coef(0), std::sqrt(sigma2 * xtx_inv(0, 0))};
}

TradeNetwork random_network(std::mt19937_64& rng, int max_nodes, int max_edges) {
    std::uniform_int_distribution<int> node_count(3, max_nodes);
    const int n = node_count(rng);
    std::vector<CountryCode> nodes;
    for (int i = 0; i < n; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "N%02d", i % 100);
        nodes.emplace_back(buf);
    }

    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a != b) pairs.emplace_back(a, b);
        }
    }
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::uniform_int_distribution<std::size_t> edge_count(1, std::min<std::size_t>(
                                                                 pairs.size(),
                                                                 static_cast<std::size_t>(max_edges)));
    const std::size_t m = edge_count(rng);

    std::lognormal_distribution<double> weight(5.0, 1.0);
    std::bernoulli_distribution has_quantity(0.8);
    std::vector<std::tuple<CountryCode, CountryCode, EdgeWeight>> edges;
    for (std::size_t e = 0; e < m; ++e) {
        EdgeWeight w{weight(rng), std::nullopt};
        if (has_quantity(rng)) w.quantity = weight(rng);
        edges.emplace_back(nodes[static_cast<std::size_t>(pairs[e].first)],
                           nodes[static_cast<std::size_t>(pairs[e].second)], w);
    }
    return TradeNetwork("690710", YearMonth{2012, 6}, std::move(edges));
}

Panel random_panel(std::mt19937_64& rng, int max_entities, int max_periods) {
    std::uniform_int_distribution<int> entity_count(2, max_entities);
    std::uniform_int_distribution<int> period_count(8, max_periods);
    const int n_entities = entity_count(rng);
    const int n_periods = period_count(rng);

    std::normal_distribution<double> noise(0.0, 1.0);
    std::uniform_real_distribution<double> level(-5.0, 5.0);
    std::uniform_real_distribution<double> shift(-3.0, 3.0);
    std::bernoulli_distribution keep(0.85);

    // Focal dummy: a contiguous run strictly inside the grid so both
    // regimes exist even before the missing-drop.
    std::uniform_int_distribution<int> run_start(1, n_periods / 2);
    std::uniform_int_distribution<int> run_len(1, n_periods / 2 - 1 > 0 ? n_periods / 2 - 1 : 1);
    const int d_first = run_start(rng);
    const int d_last = d_first + run_len(rng);
    const double beta = shift(rng);

    Panel panel;
    panel.spec = ResponseSpec::LogLevel;
    for (int entity = 0; entity < n_entities; ++entity) {
        while (true) {
            std::vector<PanelObservation> rows;
            const double mu = level(rng);
            int inside = 0, outside = 0;
            for (int t = 0; t < n_periods; ++t) {
                if (!keep(rng)) continue;
                const bool dutied = entity == 0 && t >= d_first && t <= d_last;
                PanelObservation row;
                row.entity = entity;
                row.period = YearMonth::from_index(YearMonth{2010, 1}.index() + t);
                row.dummy = dutied ? 1 : 0;
                row.response = mu + (dutied ? beta : 0.0) + noise(rng);
                rows.push_back(row);
                (dutied ? inside : outside) += 1;
            }
            const bool identified = entity != 0 || (inside > 0 && outside > 0);
            if (rows.size() >= 2 && identified) {
                panel.rows.insert(panel.rows.end(), rows.begin(), rows.end());
                break;
            }
        }
    }
    return panel;
}

}  // namespace oracles
