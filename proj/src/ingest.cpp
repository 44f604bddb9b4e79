#include "tradecirc/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <tuple>

#include "tradecirc/csv.hpp"
#include "tradecirc/errors.hpp"

namespace tradecirc {

namespace {

// Sum treating a missing operand as the identity; missing + missing = missing.
std::optional<double> opt_sum(std::optional<double> a, std::optional<double> b) {
    if (!a) return b;
    if (!b) return a;
    return *a + *b;
}

// Field-wise mean over present operands.
std::optional<double> opt_mean(std::optional<double> a, std::optional<double> b) {
    if (!a) return b;
    if (!b) return a;
    return (*a + *b) / 2.0;
}

std::optional<double> parse_amount(const std::string& field, std::string& err) {
    if (field.empty()) return std::nullopt;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        err = "not a number: \"" + field + "\"";
        return std::nullopt;
    }
    if (v < 0.0) {
        err = "negative amount: " + field;
        return std::nullopt;
    }
    return v;
}

using RecordKey = std::tuple<YearMonth, CountryCode, CountryCode, FlowType, Hs6>;

RecordKey record_key(const TradeRecord& r) {
    return {r.period, r.reporter, r.partner, r.flow_type, r.hs6};
}

// Merges records sharing a key by field-wise summation; output sorted by key.
std::vector<TradeRecord> merge_duplicates(std::vector<TradeRecord> records) {
    std::sort(records.begin(), records.end(), [](const TradeRecord& a, const TradeRecord& b) {
        return record_key(a) < record_key(b);
    });
    std::vector<TradeRecord> out;
    out.reserve(records.size());
    for (auto& r : records) {
        if (!out.empty() && record_key(out.back()) == record_key(r)) {
            out.back().value = opt_sum(out.back().value, r.value);
            out.back().quantity = opt_sum(out.back().quantity, r.quantity);
        } else {
            out.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace

std::optional<FlowType> parse_flow_type(std::string_view text) {
    if (text == "import") return FlowType::Import;
    if (text == "export") return FlowType::Export;
    if (text == "re_import") return FlowType::ReImport;
    if (text == "re_export") return FlowType::ReExport;
    return std::nullopt;
}

std::string_view flow_type_name(FlowType type) {
    switch (type) {
        case FlowType::Import: return "import";
        case FlowType::Export: return "export";
        case FlowType::ReImport: return "re_import";
        case FlowType::ReExport: return "re_export";
    }
    return "?";
}

std::string_view provenance_name(Provenance p) {
    switch (p) {
        case Provenance::OriginReported: return "origin_reported";
        case Provenance::DestinationReported: return "destination_reported";
        case Provenance::MirrorAveraged: return "mirror_averaged";
    }
    return "?";
}

ParseResult parse_trade_records(std::istream& in, const ParseOptions& options) {
    CsvReader reader(in, options.delimiter);
    reader.expect_header(
        {"period", "reporter", "partner", "flow_type", "hs6", "value_usd", "quantity_kg"});

    ParseResult result;
    std::size_t total_rows = 0;
    while (auto row = reader.next_row()) {
        ++total_rows;
        const std::size_t line = reader.line_number();
        auto reject = [&](std::string msg) { result.errors.push_back({line, std::move(msg)}); };

        if (row->size() != 7) {
            reject("expected 7 fields, got " + std::to_string(row->size()));
            continue;
        }
        const auto& f = *row;
        auto period = YearMonth::parse(f[0]);
        if (!period) {
            reject("bad period: \"" + f[0] + "\"");
            continue;
        }
        if (!is_valid_country_code(f[1])) {
            reject("bad reporter code: \"" + f[1] + "\"");
            continue;
        }
        if (!is_valid_country_code(f[2])) {
            reject("bad partner code: \"" + f[2] + "\"");
            continue;
        }
        if (f[1] == f[2]) {
            reject("reporter equals partner: \"" + f[1] + "\"");
            continue;
        }
        auto flow = parse_flow_type(f[3]);
        if (!flow) {
            reject("bad flow_type: \"" + f[3] + "\"");
            continue;
        }
        if (!is_valid_hs6(f[4])) {
            reject("bad hs6 code: \"" + f[4] + "\"");
            continue;
        }
        std::string err;
        auto value = parse_amount(f[5], err);
        if (!err.empty()) {
            reject("value_usd: " + err);
            continue;
        }
        auto quantity = parse_amount(f[6], err);
        if (!err.empty()) {
            reject("quantity_kg: " + err);
            continue;
        }
        result.records.push_back({*period, f[1], f[2], *flow, f[4], value, quantity});
    }

    if (total_rows > 0 && result.errors.size() * 2 > total_rows) {
        throw FormatError("more than 50% malformed rows (" + std::to_string(result.errors.size()) +
                          " of " + std::to_string(total_rows) + ")");
    }
    return result;
}

std::vector<TradeRecord> harmonize_flow_types(std::vector<TradeRecord> records) {
    for (auto& r : records) {
        if (r.flow_type == FlowType::ReImport) r.flow_type = FlowType::Import;
        if (r.flow_type == FlowType::ReExport) r.flow_type = FlowType::Export;
    }
    return merge_duplicates(std::move(records));
}

bool EuRoster::is_member(const CountryCode& country, YearMonth t) const {
    for (const auto& term : terms) {
        if (term.country != country) continue;
        if (term.from && t < *term.from) continue;
        if (term.to && *term.to < t) continue;
        return true;
    }
    return false;
}

EuMembership EuRoster::at(YearMonth t) const {
    EuMembership snapshot;
    snapshot.label = label;
    for (const auto& term : terms) {
        if (is_member(term.country, t)) snapshot.members.insert(term.country);
    }
    return snapshot;
}

EuRoster EuRoster::static_eu28() {
    EuRoster roster;
    for (const char* code :
         {"AUT", "BEL", "BGR", "HRV", "CYP", "CZE", "DNK", "EST", "FIN", "FRA",
          "DEU", "GRC", "HUN", "IRL", "ITA", "LVA", "LTU", "LUX", "MLT", "NLD",
          "POL", "PRT", "ROU", "SVK", "SVN", "ESP", "SWE", "GBR"}) {
        roster.terms.push_back({code, std::nullopt, std::nullopt});
    }
    return roster;
}

EuRoster EuRoster::load(std::istream& in, std::vector<RowError>* diagnostics) {
    CsvReader reader(in, ',');
    reader.expect_header({"country", "member_from", "member_to"});
    EuRoster roster;
    while (auto row = reader.next_row()) {
        auto reject = [&](std::string msg) {
            if (diagnostics) diagnostics->push_back({reader.line_number(), std::move(msg)});
        };
        if (row->size() != 3) {
            reject("expected 3 fields");
            continue;
        }
        const auto& f = *row;
        if (!is_valid_country_code(f[0])) {
            reject("bad country code: \"" + f[0] + "\"");
            continue;
        }
        Term term{f[0], std::nullopt, std::nullopt};
        if (!f[1].empty()) {
            term.from = YearMonth::parse(f[1]);
            if (!term.from) {
                reject("bad member_from: \"" + f[1] + "\"");
                continue;
            }
        }
        if (!f[2].empty()) {
            term.to = YearMonth::parse(f[2]);
            if (!term.to) {
                reject("bad member_to: \"" + f[2] + "\"");
                continue;
            }
        }
        roster.terms.push_back(std::move(term));
    }
    return roster;
}

std::vector<TradeRecord> aggregate_eu(std::vector<TradeRecord> records, const EuRoster& eu) {
    std::vector<TradeRecord> kept;
    kept.reserve(records.size());
    for (auto& r : records) {
        bool reporter_in = eu.is_member(r.reporter, r.period);
        bool partner_in = eu.is_member(r.partner, r.period);
        if (reporter_in && partner_in) continue;  // intra-EU flow
        if (reporter_in) r.reporter = eu.label;
        if (partner_in) r.partner = eu.label;
        kept.push_back(std::move(r));
    }
    return merge_duplicates(std::move(kept));
}

std::vector<TradeRecord> aggregate_eu(std::vector<TradeRecord> records, const EuMembership& eu) {
    EuRoster roster;
    roster.label = eu.label;
    for (const auto& member : eu.members) {
        roster.terms.push_back({member, std::nullopt, std::nullopt});
    }
    return aggregate_eu(std::move(records), roster);
}

std::vector<FlowObservation> mirror_average(const std::vector<TradeRecord>& records) {
    // One economic flow origin->destination is reported twice: as an export
    // by the origin and as an import by the destination.
    struct Sides {
        std::optional<TradeRecord> from_origin;
        std::optional<TradeRecord> from_destination;
    };
    using FlowKeyT = std::tuple<YearMonth, CountryCode, CountryCode, Hs6>;
    std::map<FlowKeyT, Sides> flows;

    for (const auto& r : records) {
        const bool is_export = r.flow_type == FlowType::Export || r.flow_type == FlowType::ReExport;
        CountryCode origin = is_export ? r.reporter : r.partner;
        CountryCode destination = is_export ? r.partner : r.reporter;
        auto& sides = flows[{r.period, origin, destination, r.hs6}];
        auto& slot = is_export ? sides.from_origin : sides.from_destination;
        if (!slot) {
            slot = r;
        } else {
            // Same-side duplicates are additive aggregates.
            slot->value = opt_sum(slot->value, r.value);
            slot->quantity = opt_sum(slot->quantity, r.quantity);
        }
    }

    std::vector<FlowObservation> out;
    out.reserve(flows.size());
    for (const auto& [key, sides] : flows) {
        const auto& [period, origin, destination, hs6] = key;
        FlowObservation obs;
        obs.period = period;
        obs.origin = origin;
        obs.destination = destination;
        obs.hs6 = hs6;
        if (sides.from_origin && sides.from_destination) {
            obs.value = opt_mean(sides.from_origin->value, sides.from_destination->value);
            obs.quantity = opt_mean(sides.from_origin->quantity, sides.from_destination->quantity);
            obs.provenance = Provenance::MirrorAveraged;
        } else if (sides.from_origin) {
            obs.value = sides.from_origin->value;
            obs.quantity = sides.from_origin->quantity;
            obs.provenance = Provenance::OriginReported;
        } else {
            obs.value = sides.from_destination->value;
            obs.quantity = sides.from_destination->quantity;
            obs.provenance = Provenance::DestinationReported;
        }
        out.push_back(std::move(obs));
    }
    return out;  // map iteration order is already the canonical key order
}

std::vector<FlowObservation> harmonize_all(std::vector<TradeRecord> records, const EuRoster& eu) {
    return mirror_average(aggregate_eu(harmonize_flow_types(std::move(records)), eu));
}

}  // namespace tradecirc
