#include "tradecirc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "tradecirc/csv.hpp"
#include "tradecirc/errors.hpp"

namespace tradecirc::synth {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Splitmix64 stream keyed by (seed, product, month, origin, destination).
/// Each cell of the scenario grid owns an independent stream, so the draw
/// for one edge never depends on how many other edges were generated.
class KeyedRng {
public:
    KeyedRng(std::uint64_t seed, std::uint64_t product, std::uint64_t month, std::uint64_t origin,
             std::uint64_t destination) {
        state_ = seed;
        for (std::uint64_t part : {product, month, origin, destination}) {
            state_ = mix64((state_ + kGamma) ^ mix64(part + kGamma));
        }
    }

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix64(state_);
    }

    /// Uniform draw in (0, 1].
    double uniform() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (two uniforms per draw).
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_ = 0;
};

struct EdgeScale {
    PeriodRange window;
    double factor = 1.0;
};

using ScaleMap = std::map<std::tuple<Hs6, CountryCode, CountryCode>, std::vector<EdgeScale>>;

double scale_for(const ScaleMap& scales, const Hs6& product, const CountryCode& origin,
                 const CountryCode& destination, YearMonth t) {
    auto it = scales.find({product, origin, destination});
    if (it == scales.end()) return 1.0;
    double factor = 1.0;
    for (const EdgeScale& s : it->second) {
        if (s.window.contains(t)) factor *= s.factor;
    }
    return factor;
}

void check_member(const std::set<CountryCode>& countries, const CountryCode& code,
                  const std::string& role, const std::string& what, std::size_t slot) {
    if (!countries.contains(code)) {
        throw FormatError(what + " " + std::to_string(slot) + ": " + role + " \"" + code +
                          "\" is not a scenario country");
    }
}

YearMonth parse_period_field(const nlohmann::json& value, const std::string& key) {
    if (!value.is_string()) throw FormatError("scenario config: " + key + " must be \"YYYY-MM\"");
    auto parsed = YearMonth::parse(value.get<std::string>());
    if (!parsed) throw FormatError("scenario config: bad period in " + key + ": " + value.dump());
    return *parsed;
}

}  // namespace

void ScenarioConfig::validate() const {
    if (n_countries < 3 || n_countries > 100) {
        throw FormatError("scenario config: n_countries must be in [3, 100]");
    }
    if (n_products < 1 || n_products > 10000) {
        throw FormatError("scenario config: n_products must be in [1, 10000]");
    }
    if (n_periods < 12) {
        throw FormatError("scenario config: n_periods must be at least 12");
    }
    if (n_chapters < 1 || n_chapters > 90) {
        throw FormatError("scenario config: n_chapters must be in [1, 90]");
    }
    if (!(baseline_scale > 0.0)) {
        throw FormatError("scenario config: baseline_scale must be positive");
    }
    if (!(edge_density > 0.0) || edge_density > 1.0) {
        throw FormatError("scenario config: edge_density must be in (0, 1]");
    }

    const auto country_vec = country_codes();
    const std::set<CountryCode> countries(country_vec.begin(), country_vec.end());
    const auto product_vec = product_codes();
    const std::set<Hs6> products(product_vec.begin(), product_vec.end());
    const PeriodRange span = sample();

    for (std::size_t i = 0; i < injections.size(); ++i) {
        const Injection& inj = injections[i];
        if (!products.contains(inj.product)) {
            throw FormatError("injection " + std::to_string(i) + ": product \"" + inj.product +
                              "\" is not a scenario product");
        }
        check_member(countries, inj.exporter, "exporter", "injection", i);
        check_member(countries, inj.importer, "importer", "injection", i);
        if (inj.exporter == inj.importer) {
            throw FormatError("injection " + std::to_string(i) +
                              ": exporter and importer must differ");
        }
        if (inj.via.empty()) {
            throw FormatError("injection " + std::to_string(i) + ": needs at least one via country");
        }
        std::set<CountryCode> seen;
        for (const CountryCode& k : inj.via) {
            check_member(countries, k, "via country", "injection", i);
            if (k == inj.exporter || k == inj.importer) {
                throw FormatError("injection " + std::to_string(i) + ": via country \"" + k +
                                  "\" coincides with an endpoint");
            }
            if (!seen.insert(k).second) {
                throw FormatError("injection " + std::to_string(i) + ": duplicate via country \"" +
                                  k + "\"");
            }
        }
        if (inj.window.first > inj.window.last) {
            throw FormatError("injection " + std::to_string(i) + ": window start exceeds end");
        }
        if (inj.window.first < span.first || inj.window.last > span.last) {
            throw FormatError("injection " + std::to_string(i) +
                              ": window lies outside the scenario periods");
        }
        if (!(inj.magnitude >= 1.0)) {
            throw FormatError("injection " + std::to_string(i) + ": magnitude must be >= 1");
        }
        if (inj.direct_suppression < 0.0 || inj.direct_suppression > 1.0) {
            throw FormatError("injection " + std::to_string(i) +
                              ": direct_suppression must be in [0, 1]");
        }
    }

    std::set<std::tuple<Hs6, CountryCode, CountryCode>> window_keys;
    for (const Injection& inj : injections) {
        window_keys.insert({inj.product, inj.exporter, inj.importer});
    }
    for (std::size_t i = 0; i < placebos.size(); ++i) {
        const PlaceboWindow& p = placebos[i];
        if (!products.contains(p.product)) {
            throw FormatError("placebo " + std::to_string(i) + ": product \"" + p.product +
                              "\" is not a scenario product");
        }
        check_member(countries, p.exporter, "exporter", "placebo", i);
        check_member(countries, p.importer, "importer", "placebo", i);
        if (p.exporter == p.importer) {
            throw FormatError("placebo " + std::to_string(i) +
                              ": exporter and importer must differ");
        }
        if (p.window.first > p.window.last) {
            throw FormatError("placebo " + std::to_string(i) + ": window start exceeds end");
        }
        if (p.window.first < span.first || p.window.last > span.last) {
            throw FormatError("placebo " + std::to_string(i) +
                              ": window lies outside the scenario periods");
        }
        if (!window_keys.insert({p.product, p.exporter, p.importer}).second) {
            throw FormatError("placebo " + std::to_string(i) +
                              ": duplicates another duty window's flow");
        }
    }
}

PeriodRange ScenarioConfig::sample() const {
    return {start, YearMonth::from_index(start.index() + n_periods - 1)};
}

std::vector<CountryCode> ScenarioConfig::country_codes() const {
    std::vector<CountryCode> codes;
    codes.reserve(static_cast<std::size_t>(n_countries));
    for (int i = 0; i < n_countries; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "C%02d", i);
        codes.emplace_back(buf);
    }
    return codes;
}

std::vector<Hs6> ScenarioConfig::product_codes() const {
    std::vector<Hs6> codes;
    codes.reserve(static_cast<std::size_t>(n_products));
    for (int g = 0; g < n_products; ++g) {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "%02d%04d", 10 + g % n_chapters, g % 10000);
        codes.emplace_back(buf);
    }
    return codes;
}

ScenarioConfig ScenarioConfig::from_json(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("scenario config: invalid JSON: ") + e.what());
    }

    ScenarioConfig config;
    try {
        if (doc.contains("n_countries")) config.n_countries = doc.at("n_countries").get<int>();
        if (doc.contains("n_products")) config.n_products = doc.at("n_products").get<int>();
        if (doc.contains("n_periods")) config.n_periods = doc.at("n_periods").get<int>();
        if (doc.contains("n_chapters")) config.n_chapters = doc.at("n_chapters").get<int>();
        if (doc.contains("start")) config.start = parse_period_field(doc.at("start"), "start");
        if (doc.contains("baseline_location")) {
            config.baseline_location = doc.at("baseline_location").get<double>();
        }
        if (doc.contains("baseline_scale")) {
            config.baseline_scale = doc.at("baseline_scale").get<double>();
        }
        if (doc.contains("edge_density")) config.edge_density = doc.at("edge_density").get<double>();
        if (doc.contains("seed")) config.seed = doc.at("seed").get<std::uint64_t>();

        for (const auto& j : doc.value("injections", nlohmann::json::array())) {
            Injection inj;
            inj.product = j.at("product").get<std::string>();
            inj.exporter = j.at("exporter").get<std::string>();
            inj.importer = j.at("importer").get<std::string>();
            inj.via = j.at("via").get<std::vector<std::string>>();
            inj.window.first = parse_period_field(j.at("window_from"), "window_from");
            inj.window.last = parse_period_field(j.at("window_to"), "window_to");
            if (j.contains("magnitude")) inj.magnitude = j.at("magnitude").get<double>();
            if (j.contains("direct_suppression")) {
                inj.direct_suppression = j.at("direct_suppression").get<double>();
            }
            config.injections.push_back(std::move(inj));
        }
        for (const auto& j : doc.value("placebos", nlohmann::json::array())) {
            PlaceboWindow p;
            p.product = j.at("product").get<std::string>();
            p.exporter = j.at("exporter").get<std::string>();
            p.importer = j.at("importer").get<std::string>();
            p.window.first = parse_period_field(j.at("window_from"), "window_from");
            p.window.last = parse_period_field(j.at("window_to"), "window_to");
            config.placebos.push_back(std::move(p));
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("scenario config: ") + e.what());
    }

    config.validate();
    return config;
}

ScenarioData generate(const ScenarioConfig& config) {
    config.validate();

    const auto countries = config.country_codes();
    const auto products = config.product_codes();

    // Iterate products in code order so the output is already canonically
    // sorted, but key the RNG by the product's generation index so the same
    // product draws the same baseline regardless of what else is configured.
    std::vector<std::pair<Hs6, std::size_t>> ordered;
    ordered.reserve(products.size());
    for (std::size_t g = 0; g < products.size(); ++g) ordered.emplace_back(products[g], g);
    std::sort(ordered.begin(), ordered.end());

    ScaleMap scales;
    for (const Injection& inj : config.injections) {
        for (const CountryCode& k : inj.via) {
            scales[{inj.product, inj.exporter, k}].push_back({inj.window, inj.magnitude});
            scales[{inj.product, k, inj.importer}].push_back({inj.window, inj.magnitude});
        }
        scales[{inj.product, inj.exporter, inj.importer}].push_back(
            {inj.window, inj.direct_suppression});
    }

    ScenarioData data;
    const double cells = static_cast<double>(config.n_products) * config.n_periods *
                         config.n_countries * (config.n_countries - 1);
    data.flows.reserve(static_cast<std::size_t>(cells * config.edge_density * 1.02));

    for (const auto& [product, g] : ordered) {
        for (int t = 0; t < config.n_periods; ++t) {
            const YearMonth period = YearMonth::from_index(config.start.index() + t);
            for (std::size_t o = 0; o < countries.size(); ++o) {
                for (std::size_t d = 0; d < countries.size(); ++d) {
                    if (o == d) continue;
                    KeyedRng rng(config.seed, g, static_cast<std::uint64_t>(t), o, d);
                    if (rng.uniform() > config.edge_density) continue;
                    double value =
                        std::exp(config.baseline_location + config.baseline_scale * rng.normal());
                    double quantity =
                        std::exp(config.baseline_location + config.baseline_scale * rng.normal());
                    const double factor =
                        scale_for(scales, product, countries[o], countries[d], period);
                    value *= factor;
                    quantity *= factor;
                    data.flows.push_back({period, countries[o], countries[d], product, value,
                                          quantity, Provenance::OriginReported});
                }
            }
        }
    }

    for (const Injection& inj : config.injections) {
        data.windows.push_back(
            {inj.product, inj.exporter, inj.importer, std::nullopt, inj.window.first,
             inj.window.last});
    }
    for (const PlaceboWindow& p : config.placebos) {
        data.windows.push_back(
            {p.product, p.exporter, p.importer, std::nullopt, p.window.first, p.window.last});
    }
    std::sort(data.windows.begin(), data.windows.end());

    std::set<std::pair<Hs6, CountryCode>> labelled;
    for (const Injection& inj : config.injections) {
        if (labelled.insert({inj.product, inj.exporter}).second) {
            data.labels.push_back({inj.product, inj.exporter, true, inj.window.first});
        }
    }
    std::sort(data.labels.begin(), data.labels.end());

    return data;
}

void write_flows_csv(std::ostream& out, std::span<const FlowObservation> flows) {
    out << "period,reporter,partner,flow_type,hs6,value_usd,quantity_kg\n";
    for (const FlowObservation& f : flows) {
        out << f.period.str() << ',' << f.origin << ',' << f.destination << ",export," << f.hs6
            << ',' << (f.value ? format_double(*f.value) : std::string()) << ','
            << (f.quantity ? format_double(*f.quantity) : std::string()) << '\n';
    }
}

void write_duties_csv(std::ostream& out, std::span<const DutyWindow> windows) {
    out << "hs6,exporter,importer,announced,imposed,withdrawn\n";
    for (const DutyWindow& w : windows) {
        out << w.product << ',' << w.exporter << ',' << w.importer << ','
            << (w.announced ? w.announced->str() : std::string()) << ',' << w.imposed.str() << ','
            << w.withdrawn.str() << '\n';
    }
}

void write_labels_csv(std::ostream& out, std::span<const InvestigationLabel> labels) {
    out << "hs_code,exporter,published\n";
    for (const InvestigationLabel& l : labels) {
        if (!l.under_investigation) continue;
        out << l.product << ',' << l.exporter << ','
            << (l.published ? l.published->str() : std::string()) << '\n';
    }
}

}  // namespace tradecirc::synth
