#pragma once

#include <istream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tradecirc/types.hpp"

namespace tradecirc {

enum class FlowType { Import, Export, ReImport, ReExport };

/// One raw reported row from a trade statistics file.
struct TradeRecord {
    YearMonth period;
    CountryCode reporter;
    CountryCode partner;
    FlowType flow_type = FlowType::Import;
    Hs6 hs6;
    std::optional<double> value;     // USD
    std::optional<double> quantity;  // kg

    auto operator<=>(const TradeRecord&) const = default;
};

/// Who reported the harmonized flow.
enum class Provenance { OriginReported, DestinationReported, MirrorAveraged };

/// One harmonized directed flow, unique per (period, origin, destination, hs6).
struct FlowObservation {
    YearMonth period;
    CountryCode origin;
    CountryCode destination;
    Hs6 hs6;
    std::optional<double> value;     // USD
    std::optional<double> quantity;  // kg
    Provenance provenance = Provenance::OriginReported;

    auto operator<=>(const FlowObservation&) const = default;
};

struct RowError {
    std::size_t line = 0;
    std::string message;
};

struct ParseOptions {
    char delimiter = ',';
};

struct ParseResult {
    std::vector<TradeRecord> records;
    std::vector<RowError> errors;
};

/// Parses the trade-flow file format:
///   period,reporter,partner,flow_type,hs6,value_usd,quantity_kg
/// Malformed rows are collected in `errors` and parsing continues; the
/// whole parse fails with FormatError once more than half the data rows
/// are malformed, and with IoError if the stream cannot be read at all.
ParseResult parse_trade_records(std::istream& in, const ParseOptions& options = {});

/// Folds re-imports into imports and re-exports into exports; records that
/// share a key afterwards are summed field-wise.
std::vector<TradeRecord> harmonize_flow_types(std::vector<TradeRecord> records);

/// A point-in-time membership snapshot.
struct EuMembership {
    std::set<CountryCode> members;
    CountryCode label = "EU";
};

/// Dated membership table; a country is a member in every month of
/// [from, to], with either end open.
struct EuRoster {
    struct Term {
        CountryCode country;
        std::optional<YearMonth> from;
        std::optional<YearMonth> to;
    };

    std::vector<Term> terms;
    CountryCode label = "EU";

    bool is_member(const CountryCode& country, YearMonth t) const;
    EuMembership at(YearMonth t) const;

    /// The 28-member roster, undated (valid as a 2010-2015 approximation).
    static EuRoster static_eu28();

    /// Loads `country,member_from,member_to` rows; blank date = open end.
    static EuRoster load(std::istream& in, std::vector<RowError>* diagnostics = nullptr);
};

/// Drops intra-EU flows and folds member codes into the aggregate label,
/// summing any records that collide after relabeling.
std::vector<TradeRecord> aggregate_eu(std::vector<TradeRecord> records, const EuRoster& eu);
std::vector<TradeRecord> aggregate_eu(std::vector<TradeRecord> records, const EuMembership& eu);

/// Reconciles mirror statistics: if both sides of a flow reported it, the
/// result is the field-wise arithmetic mean of the present values; a flow
/// reported by one side only passes through. Output is sorted by
/// (period, origin, destination, hs6) and unique per that key.
std::vector<FlowObservation> mirror_average(const std::vector<TradeRecord>& records);

/// Full harmonization chain: flow types, then EU aggregation, then mirrors.
std::vector<FlowObservation> harmonize_all(std::vector<TradeRecord> records, const EuRoster& eu);

std::optional<FlowType> parse_flow_type(std::string_view text);
std::string_view flow_type_name(FlowType type);
std::string_view provenance_name(Provenance p);

}  // namespace tradecirc
