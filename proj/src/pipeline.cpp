#include "tradecirc/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include <nlohmann/json.hpp>

#include "tradecirc/controls.hpp"
#include "tradecirc/csv.hpp"
#include "tradecirc/errors.hpp"
#include "tradecirc/graph.hpp"

namespace tradecirc {

namespace {

std::string flow_id(const DutyWindow& w) {
    return w.product + " " + w.exporter + "->" + w.importer;
}

std::string_view tail_name(TestTail tail) {
    return tail == TestTail::TwoSided ? "two-sided" : "upper";
}

std::string hex_digest(std::uint64_t value) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::uint64_t file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw IoError("cannot open input file for checksum: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return fnv1a64(buffer.str());
}

}  // namespace

std::vector<FocalOutcome> run_detections(std::span<const FlowObservation> flows,
                                         const AdRegistry& registry,
                                         std::span<const DutyWindow> focal, PeriodRange sample,
                                         const DetectOptions& options) {
    options.validate();
    if (focal.empty()) throw PreconditionError("no focal duty windows to test");
    const std::vector<double> alphas = options.sorted_alphas();

    // One candidate universe per distinct route; focal flows sharing a
    // route share the (expensive) network construction.
    std::map<std::pair<CountryCode, CountryCode>, std::vector<CircumventionSeries>> universes;
    for (const DutyWindow& w : focal) universes[{w.exporter, w.importer}];
    for (auto& [route, universe] : universes) {
        universe =
            route_series_universe(flows, route.first, route.second, options.statistic, sample);
    }

    auto process = [&](const DutyWindow& w) -> FocalOutcome {
        const auto& universe = universes.at({w.exporter, w.importer});
        auto it = std::lower_bound(
            universe.begin(), universe.end(), w.product,
            [](const CircumventionSeries& s, const Hs6& p) { return s.product < p; });
        if (it == universe.end() || it->product != w.product) {
            throw PreconditionError("no trade data for the focal product in the sample");
        }
        ControlPanel controls =
            select_controls(*it, universe, registry, options.missing_threshold);
        Panel panel = build_panel(controls, w, options.spec);
        FocalOutcome outcome{w, controls.control_count(), fit_fixed_effects(panel, options.tail),
                             {}};
        outcome.flags.reserve(alphas.size());
        for (double alpha : alphas) {
            outcome.flags.push_back(detect(outcome.fit, alpha, w.product, w.exporter, w.importer));
        }
        return outcome;
    };

    std::vector<FocalOutcome> outcomes(focal.size());
    std::vector<std::exception_ptr> failures(focal.size());
    const std::size_t n_workers =
        std::max<std::size_t>(1, std::min<std::size_t>(options.threads, focal.size()));
    if (n_workers == 1) {
        for (std::size_t i = 0; i < focal.size(); ++i) {
            try {
                outcomes[i] = process(focal[i]);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> cursor{0};
        auto worker = [&] {
            for (std::size_t i = cursor.fetch_add(1); i < focal.size(); i = cursor.fetch_add(1)) {
                try {
                    outcomes[i] = process(focal[i]);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        };
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    }

    // Report the first failure in focal-flow order so the error is the same
    // no matter how the work was scheduled.
    for (std::size_t i = 0; i < focal.size(); ++i) {
        if (!failures[i]) continue;
        try {
            std::rethrow_exception(failures[i]);
        } catch (const Error& e) {
            throw Error("focal flow " + flow_id(focal[i]) + ": " + e.what());
        }
    }
    return outcomes;
}

void DetectOptions::validate() const {
    if (alphas.empty()) throw PreconditionError("at least one significance level is required");
    for (double alpha : alphas) {
        if (!(alpha > 0.0) || !(alpha < 0.5)) {
            throw PreconditionError("significance level must lie in (0, 0.5), got " +
                                    format_double(alpha));
        }
    }
    if (missing_threshold < 0.0 || missing_threshold > 1.0) {
        throw PreconditionError("missing threshold must lie in [0, 1], got " +
                                format_double(missing_threshold));
    }
    if (threads == 0) throw PreconditionError("thread count must be positive");
}

std::vector<double> DetectOptions::sorted_alphas() const {
    std::vector<double> sorted = alphas;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    return sorted;
}

std::vector<CircumventionSeries> route_series_universe(std::span<const FlowObservation> flows,
                                                       const CountryCode& exporter,
                                                       const CountryCode& importer,
                                                       PathStatistic statistic, PeriodRange grid) {
    if (exporter == importer) {
        throw PreconditionError("exporter equals importer: " + exporter);
    }
    if (grid.first > grid.last) {
        throw PreconditionError("period grid start exceeds end");
    }

    // Group flows by (product, period) without copying them. Harmonized
    // input is usually sorted by period first, so an explicit index sort is
    // needed; already product-major input passes through untouched.
    std::vector<std::uint32_t> order(flows.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    auto key_less = [&](std::uint32_t a, std::uint32_t b) {
        const FlowObservation& fa = flows[a];
        const FlowObservation& fb = flows[b];
        if (int c = fa.hs6.compare(fb.hs6); c != 0) return c < 0;
        return fa.period < fb.period;
    };
    if (!std::is_sorted(order.begin(), order.end(), key_less)) {
        std::stable_sort(order.begin(), order.end(), key_less);
    }

    std::vector<CircumventionSeries> universe;
    std::vector<TradeNetwork> nets;
    std::vector<std::tuple<CountryCode, CountryCode, EdgeWeight>> edges;

    std::size_t i = 0;
    while (i < order.size()) {
        const Hs6& product = flows[order[i]].hs6;
        nets.clear();
        std::size_t j = i;
        while (j < order.size() && flows[order[j]].hs6 == product) {
            const YearMonth period = flows[order[j]].period;
            edges.clear();
            while (j < order.size() && flows[order[j]].hs6 == product &&
                   flows[order[j]].period == period) {
                const FlowObservation& f = flows[order[j]];
                edges.emplace_back(f.origin, f.destination,
                                   EdgeWeight{f.value.value_or(0.0), f.quantity});
                ++j;
            }
            if (grid.contains(period)) nets.emplace_back(product, period, edges);
        }
        if (!nets.empty()) {
            universe.push_back(index_series(nets, exporter, importer, statistic, grid));
        }
        i = j;
    }
    return universe;
}

PipelineResult detect_and_evaluate(std::span<const FlowObservation> flows,
                                   const AdRegistry& registry, PeriodRange sample,
                                   const DetectOptions& options) {
    options.validate();
    if (sample.first > sample.last) {
        throw PreconditionError("sample start exceeds sample end");
    }

    std::vector<DutyWindow> focal;
    for (const DutyWindow& w : registry.windows()) {
        if (sample.contains(w.imposed) && sample.contains(w.withdrawn)) focal.push_back(w);
    }
    if (focal.empty()) {
        throw PreconditionError("no duty window lies fully inside the sample period " +
                                sample.first.str() + ".." + sample.last.str());
    }

    PipelineResult result;
    result.outcomes = run_detections(flows, registry, focal, sample, options);

    std::set<std::pair<Hs6, CountryCode>> seen;
    for (const DutyWindow& w : focal) {
        if (seen.insert({w.product, w.exporter}).second) {
            result.labels.push_back(registry.label_for(w.product, w.exporter));
        }
    }

    const std::vector<double> alphas = options.sorted_alphas();
    std::vector<DetectionFlag> level;
    level.reserve(result.outcomes.size());
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
        level.clear();
        for (const FocalOutcome& outcome : result.outcomes) level.push_back(outcome.flags[ai]);
        result.matrices.push_back(confusion_matrix(level, result.labels, alphas[ai]));
    }
    return result;
}

void RunConfig::validate() const {
    if (flows_path.empty() || duties_path.empty() || labels_path.empty()) {
        throw PreconditionError("flows, duties and labels file paths are all required");
    }
    if (out_dir.empty()) throw PreconditionError("output directory is required");
    if (sample.first > sample.last) {
        throw PreconditionError("sample start " + sample.first.str() + " exceeds sample end " +
                                sample.last.str());
    }
    options.validate();
}

RunReport run_pipeline(const RunConfig& config) {
    config.validate();
    RunReport report;

    std::ifstream flows_in(config.flows_path);
    if (!flows_in.is_open()) throw IoError("cannot open trade-flow file: " + config.flows_path);
    ParseResult parsed = parse_trade_records(flows_in, {config.delimiter});
    flows_in.close();
    report.records_parsed = parsed.records.size();
    report.flow_diagnostics = std::move(parsed.errors);

    EuRoster roster = EuRoster::static_eu28();
    if (config.eu_path) {
        std::ifstream eu_in(*config.eu_path);
        if (!eu_in.is_open()) {
            throw IoError("cannot open EU membership file: " + *config.eu_path);
        }
        roster = EuRoster::load(eu_in, &report.registry_diagnostics);
    }
    const std::vector<FlowObservation> flows = harmonize_all(std::move(parsed.records), roster);
    report.flow_count = flows.size();

    std::ifstream duties_in(config.duties_path);
    if (!duties_in.is_open()) throw IoError("cannot open duty file: " + config.duties_path);
    std::ifstream labels_in(config.labels_path);
    if (!labels_in.is_open()) throw IoError("cannot open label file: " + config.labels_path);
    const AdRegistry registry =
        AdRegistry::load(duties_in, labels_in, config.sample, &report.registry_diagnostics);
    duties_in.close();
    labels_in.close();

    report.result = detect_and_evaluate(flows, registry, config.sample, config.options);

    namespace fs = std::filesystem;
    const fs::path out_dir(config.out_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + config.out_dir + ": " + ec.message());

    auto open_out = [&](const char* name) {
        std::ofstream out(out_dir / name, std::ios::binary);
        if (!out.is_open()) {
            throw IoError("cannot write output file: " + (out_dir / name).string());
        }
        return out;
    };

    {
        std::ofstream det = open_out("detections.csv");
        det << "product,exporter,importer,alpha,beta,se,t,p,detected\n";
        for (const FocalOutcome& o : report.result.outcomes) {
            for (const DetectionFlag& f : o.flags) {
                det << f.product << ',' << f.exporter << ',' << f.importer << ','
                    << format_double(f.alpha) << ',' << format_double(f.fit.beta_hat) << ','
                    << format_double(f.fit.se) << ',' << format_double(f.fit.t_stat) << ','
                    << format_double(f.fit.p_value) << ',' << (f.detected ? '1' : '0') << '\n';
            }
        }
    }

    {
        std::ofstream conf = open_out("confusion.csv");
        conf << "alpha,tp,fp,fn,tn,recall\n";
        for (const ConfusionMatrix& cm : report.result.matrices) {
            conf << format_double(cm.alpha) << ',' << cm.tp << ',' << cm.fp << ',' << cm.fn << ','
                 << cm.tn << ',' << (cm.tp + cm.fn > 0 ? format_double(detection_rate(cm)) : "")
                 << '\n';
        }
    }

    {
        std::ofstream text = open_out("confusion.txt");
        for (std::size_t i = 0; i < report.result.matrices.size(); ++i) {
            if (i > 0) text << '\n';
            text << format_confusion(report.result.matrices[i]);
        }
    }

    {
        nlohmann::ordered_json manifest;
        manifest["tool"] = "tradecirc";
        manifest["version"] = "0.1.0";
        nlohmann::ordered_json cfg;
        cfg["sample_from"] = config.sample.first.str();
        cfg["sample_to"] = config.sample.last.str();
        cfg["statistic"] = std::string(path_statistic_name(config.options.statistic));
        cfg["spec"] = std::string(response_spec_name(config.options.spec));
        cfg["tail"] = std::string(tail_name(config.options.tail));
        cfg["missing_threshold"] = config.options.missing_threshold;
        cfg["alphas"] = config.options.sorted_alphas();
        cfg["threads"] = config.options.threads;
        cfg["delimiter"] = std::string(1, config.delimiter);
        manifest["config"] = std::move(cfg);

        nlohmann::ordered_json inputs;
        auto describe = [&](const std::string& path) {
            nlohmann::ordered_json entry;
            entry["path"] = path;
            entry["fnv1a64"] = hex_digest(file_digest(path));
            return entry;
        };
        inputs["flows"] = describe(config.flows_path);
        inputs["duties"] = describe(config.duties_path);
        inputs["labels"] = describe(config.labels_path);
        if (config.eu_path) inputs["eu"] = describe(*config.eu_path);
        manifest["inputs"] = std::move(inputs);

        nlohmann::ordered_json counts;
        counts["records_parsed"] = report.records_parsed;
        counts["rows_rejected"] = report.flow_diagnostics.size();
        counts["flows"] = report.flow_count;
        counts["focal_flows"] = report.result.outcomes.size();
        manifest["counts"] = std::move(counts);

        manifest["outputs"] = {"detections.csv", "confusion.csv", "confusion.txt"};

        std::ofstream out = open_out("manifest.json");
        out << manifest.dump(2) << '\n';
    }

    return report;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char byte : bytes) {
        hash ^= byte;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

}  // namespace tradecirc
