#include "tradecirc/graph.hpp"

#include <algorithm>

#include "tradecirc/errors.hpp"

namespace tradecirc {

TradeNetwork::TradeNetwork(Hs6 product, YearMonth period,
                           std::vector<std::tuple<CountryCode, CountryCode, EdgeWeight>> edge_list)
    : product_(std::move(product)), period_(period) {
    edges_.reserve(edge_list.size());
    for (auto& [origin, destination, weight] : edge_list) {
        if (origin == destination) {
            throw PreconditionError("self-loop edge at node " + origin);
        }
        if (weight.value < 0.0 || (weight.quantity && *weight.quantity < 0.0)) {
            throw PreconditionError("negative edge weight on " + origin + "->" + destination);
        }
        edges_.push_back({std::move(origin), std::move(destination), weight});
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.origin, a.destination) < std::tie(b.origin, b.destination);
    });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i - 1].origin == edges_[i].origin &&
            edges_[i - 1].destination == edges_[i].destination) {
            throw PreconditionError("duplicate edge " + edges_[i].origin + "->" +
                                    edges_[i].destination);
        }
    }
    for (const auto& e : edges_) {
        nodes_.push_back(e.origin);
        nodes_.push_back(e.destination);
    }
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
}

bool TradeNetwork::has_node(const CountryCode& code) const {
    return std::binary_search(nodes_.begin(), nodes_.end(), code);
}

std::optional<EdgeWeight> TradeNetwork::edge(const CountryCode& origin,
                                             const CountryCode& destination) const {
    auto key = std::tie(origin, destination);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key,
                               [](const Edge& e, const decltype(key)& k) {
                                   return std::tie(e.origin, e.destination) < k;
                               });
    if (it != edges_.end() && it->origin == origin && it->destination == destination) {
        return it->weight;
    }
    return std::nullopt;
}

std::span<const TradeNetwork::Edge> TradeNetwork::out_edges(const CountryCode& origin) const {
    auto lo = std::lower_bound(edges_.begin(), edges_.end(), origin,
                               [](const Edge& e, const CountryCode& o) { return e.origin < o; });
    auto hi = std::upper_bound(lo, edges_.end(), origin,
                               [](const CountryCode& o, const Edge& e) { return o < e.origin; });
    return {lo, hi};
}

TradeNetwork build_network(std::span<const FlowObservation> flows, const Hs6& product,
                           YearMonth period) {
    std::vector<std::tuple<CountryCode, CountryCode, EdgeWeight>> edges;
    for (const auto& f : flows) {
        if (f.hs6 != product || f.period != period) continue;
        edges.emplace_back(f.origin, f.destination, EdgeWeight{f.value.value_or(0.0), f.quantity});
    }
    return TradeNetwork(product, period, std::move(edges));
}

std::vector<std::pair<CountryCode, EdgeWeight>> out_neighbors(const TradeNetwork& net,
                                                              const CountryCode& origin) {
    std::vector<std::pair<CountryCode, EdgeWeight>> out;
    for (const auto& e : net.out_edges(origin)) {
        out.emplace_back(e.destination, e.weight);
    }
    return out;
}

NetworkStats network_stats(const TradeNetwork& net) {
    NetworkStats stats;
    stats.node_count = net.node_count();
    stats.edge_count = net.edge_count();
    for (const auto& e : net.edges()) {
        stats.total_value += e.weight.value;
    }
    return stats;
}

}  // namespace tradecirc
