#pragma once

#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "tradecirc/ingest.hpp"
#include "tradecirc/types.hpp"

namespace tradecirc {

struct EdgeWeight {
    double value = 0.0;              // USD
    std::optional<double> quantity;  // kg

    auto operator<=>(const EdgeWeight&) const = default;
};

/// Directed weighted trade network of one product in one month. Simple
/// (no self-loops, at most one edge per ordered pair) and immutable after
/// construction; edges are kept sorted by (origin, destination) so every
/// traversal and summation order is deterministic.
class TradeNetwork {
public:
    struct Edge {
        CountryCode origin;
        CountryCode destination;
        EdgeWeight weight;
    };

    TradeNetwork() = default;
    TradeNetwork(Hs6 product, YearMonth period,
                 std::vector<std::tuple<CountryCode, CountryCode, EdgeWeight>> edge_list);

    const Hs6& product() const { return product_; }
    YearMonth period() const { return period_; }

    const std::vector<CountryCode>& nodes() const { return nodes_; }  // sorted unique
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool has_node(const CountryCode& code) const;

    const std::vector<Edge>& edges() const { return edges_; }
    std::optional<EdgeWeight> edge(const CountryCode& origin, const CountryCode& destination) const;

    /// Edges leaving `origin`, sorted by destination; empty if absent.
    std::span<const Edge> out_edges(const CountryCode& origin) const;

private:
    Hs6 product_;
    YearMonth period_;
    std::vector<CountryCode> nodes_;
    std::vector<Edge> edges_;  // sorted by (origin, destination)
};

/// Materializes the network of all flows matching (product, period).
/// A flow with a missing value becomes a zero-value edge.
TradeNetwork build_network(std::span<const FlowObservation> flows, const Hs6& product,
                           YearMonth period);

/// Destinations reachable in one hop from `origin` with the edge weights.
std::vector<std::pair<CountryCode, EdgeWeight>> out_neighbors(const TradeNetwork& net,
                                                              const CountryCode& origin);

struct NetworkStats {
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    double total_value = 0.0;

    auto operator<=>(const NetworkStats&) const = default;
};

NetworkStats network_stats(const TradeNetwork& net);

}  // namespace tradecirc
