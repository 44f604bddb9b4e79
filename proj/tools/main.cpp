#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "tradecirc/controls.hpp"
#include "tradecirc/csv.hpp"
#include "tradecirc/detect.hpp"
#include "tradecirc/errors.hpp"
#include "tradecirc/evaluate.hpp"
#include "tradecirc/graph.hpp"
#include "tradecirc/index.hpp"
#include "tradecirc/ingest.hpp"
#include "tradecirc/pipeline.hpp"
#include "tradecirc/registry.hpp"
#include "tradecirc/synth.hpp"
#include "tradecirc/types.hpp"

namespace tc = tradecirc;

namespace {

tc::YearMonth parse_period_arg(const std::string& text, const std::string& flag) {
    auto parsed = tc::YearMonth::parse(text);
    if (!parsed) {
        throw tc::FormatError(flag + ": expected a YYYY-MM period, got \"" + text + "\"");
    }
    return *parsed;
}

/// Options shared by every subcommand that reads the trade-flow file.
struct FlowArgs {
    std::string flows_path;
    std::optional<std::string> eu_path;
    std::string delimiter = ",";
    std::optional<std::string> from;
    std::optional<std::string> to;
};

void add_flow_options(CLI::App* cmd, FlowArgs& args, bool with_range = true) {
    cmd->add_option("--flows", args.flows_path, "Trade-flow file (CSV)")->required();
    cmd->add_option("--eu", args.eu_path,
                    "EU membership file; defaults to the built-in EU-28 roster");
    cmd->add_option("--delimiter", args.delimiter, "Flow-file field delimiter (default ',')");
    if (with_range) {
        cmd->add_option("--from", args.from, "Sample start period YYYY-MM (default: inferred)");
        cmd->add_option("--to", args.to, "Sample end period YYYY-MM (default: inferred)");
    }
}

char delimiter_of(const FlowArgs& args) {
    if (args.delimiter.size() != 1) {
        throw tc::FormatError("--delimiter must be a single character");
    }
    return args.delimiter[0];
}

struct LoadedFlows {
    std::vector<tc::FlowObservation> flows;
    std::size_t records = 0;
    std::vector<tc::RowError> diagnostics;
};

void print_diagnostics(const std::string& path, const std::vector<tc::RowError>& diagnostics) {
    for (const tc::RowError& e : diagnostics) {
        std::cerr << path << ":" << e.line << ": " << e.message << '\n';
    }
}

LoadedFlows load_flows(const FlowArgs& args) {
    std::ifstream in(args.flows_path);
    if (!in.is_open()) throw tc::IoError("cannot open trade-flow file: " + args.flows_path);
    tc::ParseResult parsed = tc::parse_trade_records(in, {delimiter_of(args)});
    print_diagnostics(args.flows_path, parsed.errors);

    tc::EuRoster roster = tc::EuRoster::static_eu28();
    if (args.eu_path) {
        std::ifstream eu_in(*args.eu_path);
        if (!eu_in.is_open()) {
            throw tc::IoError("cannot open EU membership file: " + *args.eu_path);
        }
        std::vector<tc::RowError> eu_errors;
        roster = tc::EuRoster::load(eu_in, &eu_errors);
        print_diagnostics(*args.eu_path, eu_errors);
    }

    LoadedFlows out;
    out.records = parsed.records.size();
    out.diagnostics = std::move(parsed.errors);
    out.flows = tc::harmonize_all(std::move(parsed.records), roster);
    return out;
}

tc::PeriodRange resolve_range(const FlowArgs& args, const std::vector<tc::FlowObservation>& flows) {
    std::optional<tc::YearMonth> from, to;
    if (args.from) from = parse_period_arg(*args.from, "--from");
    if (args.to) to = parse_period_arg(*args.to, "--to");
    if (!from || !to) {
        if (flows.empty()) {
            throw tc::PreconditionError("cannot infer the sample period from an empty flow set; "
                                        "pass --from and --to");
        }
        tc::YearMonth lo = flows.front().period;
        tc::YearMonth hi = flows.front().period;
        for (const tc::FlowObservation& f : flows) {
            lo = std::min(lo, f.period);
            hi = std::max(hi, f.period);
        }
        if (!from) from = lo;
        if (!to) to = hi;
    }
    if (*from > *to) throw tc::PreconditionError("--from exceeds --to");
    return {*from, *to};
}

tc::AdRegistry load_registry_files(const std::string& duties_path,
                                   const std::optional<std::string>& labels_path,
                                   std::optional<tc::PeriodRange> sample) {
    std::ifstream duties(duties_path);
    if (!duties.is_open()) throw tc::IoError("cannot open duty file: " + duties_path);
    std::vector<tc::RowError> diagnostics;
    tc::AdRegistry registry = [&] {
        if (labels_path) {
            std::ifstream labels(*labels_path);
            if (!labels.is_open()) throw tc::IoError("cannot open label file: " + *labels_path);
            return tc::load_registry(duties, labels, sample, &diagnostics);
        }
        std::istringstream no_labels("hs_code,exporter,published\n");
        return tc::load_registry(duties, no_labels, sample, &diagnostics);
    }();
    print_diagnostics(duties_path, diagnostics);
    return registry;
}

void with_output(const std::optional<std::string>& path, auto&& writer) {
    if (!path) {
        writer(std::cout);
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out.is_open()) throw tc::IoError("cannot write output file: " + *path);
    writer(out);
}

/// Detection options shared by `detect`, `evaluate` and `run`.
struct EstimatorArgs {
    std::string spec = "standardized";
    std::string statistic = "value";
    bool one_sided = false;
    double missing_threshold = 0.10;
    unsigned threads = 1;
};

void add_estimator_options(CLI::App* cmd, EstimatorArgs& args) {
    cmd->add_option("--spec", args.spec, "Response spec: log|standardized|standardized-raw");
    cmd->add_option("--statistic", args.statistic, "Path statistic: value|quantity|last-leg");
    cmd->add_flag("--one-sided", args.one_sided,
                  "Upper-tail test of beta > 0 instead of the two-sided default");
    cmd->add_option("--missing-threshold", args.missing_threshold,
                    "Max missing fraction of a control series (default 0.10)");
    cmd->add_option("--threads", args.threads, "Worker threads for per-flow fits (default 1)");
}

tc::DetectOptions make_options(const EstimatorArgs& args, std::vector<double> alphas) {
    tc::DetectOptions options;
    auto spec = tc::parse_response_spec(args.spec);
    if (!spec) throw tc::FormatError("unknown --spec \"" + args.spec + "\"");
    auto statistic = tc::parse_path_statistic(args.statistic);
    if (!statistic) throw tc::FormatError("unknown --statistic \"" + args.statistic + "\"");
    options.spec = *spec;
    options.statistic = *statistic;
    options.tail = args.one_sided ? tc::TestTail::UpperOnly : tc::TestTail::TwoSided;
    options.missing_threshold = args.missing_threshold;
    options.threads = args.threads;
    options.alphas = std::move(alphas);
    options.validate();
    return options;
}

tc::CircumventionSeries single_series(const std::vector<tc::FlowObservation>& flows,
                                      const tc::Hs6& product, const tc::CountryCode& exporter,
                                      const tc::CountryCode& importer, tc::PathStatistic statistic,
                                      tc::PeriodRange grid) {
    std::vector<tc::FlowObservation> subset;
    std::copy_if(flows.begin(), flows.end(), std::back_inserter(subset),
                 [&](const tc::FlowObservation& f) { return f.hs6 == product; });
    auto universe = tc::route_series_universe(subset, exporter, importer, statistic, grid);
    if (universe.empty()) {
        throw tc::PreconditionError("no trade data for product " + product + " in the sample");
    }
    return std::move(universe.front());
}

void write_detection_rows(std::ostream& out, std::span<const tc::DetectionFlag> flags) {
    out << "product,exporter,importer,beta,se,t,p,detected\n";
    for (const tc::DetectionFlag& f : flags) {
        out << f.product << ',' << f.exporter << ',' << f.importer << ','
            << tc::format_double(f.fit.beta_hat) << ',' << tc::format_double(f.fit.se) << ','
            << tc::format_double(f.fit.t_stat) << ',' << tc::format_double(f.fit.p_value) << ','
            << (f.detected ? '1' : '0') << '\n';
    }
}

void write_confusion_rows(std::ostream& out, std::span<const tc::ConfusionMatrix> matrices) {
    out << "alpha,tp,fp,fn,tn,recall\n";
    for (const tc::ConfusionMatrix& cm : matrices) {
        out << tc::format_double(cm.alpha) << ',' << cm.tp << ',' << cm.fp << ',' << cm.fn << ','
            << cm.tn << ','
            << (cm.tp + cm.fn > 0 ? tc::format_double(tc::detection_rate(cm)) : "") << '\n';
    }
}

std::vector<tc::DutyWindow> focal_windows(const tc::AdRegistry& registry,
                                          const std::vector<std::string>& triples,
                                          tc::PeriodRange sample) {
    std::vector<tc::DutyWindow> focal;
    if (triples.empty()) {
        for (const tc::DutyWindow& w : registry.windows()) {
            if (sample.contains(w.imposed) && sample.contains(w.withdrawn)) focal.push_back(w);
        }
        if (focal.empty()) {
            throw tc::PreconditionError("no duty window lies fully inside the sample period " +
                                        sample.first.str() + ".." + sample.last.str());
        }
        return focal;
    }
    for (const std::string& triple : triples) {
        auto parts = tc::split_fields(triple, ':');
        if (parts.size() != 3) {
            throw tc::FormatError("--focal expects PRODUCT:EXPORTER:IMPORTER, got \"" + triple +
                                  "\"");
        }
        auto window = registry.window_for(parts[0], parts[1], parts[2]);
        if (!window) {
            throw tc::PreconditionError("no duty window registered for focal flow " + parts[0] +
                                        " " + parts[1] + "->" + parts[2]);
        }
        focal.push_back(*window);
    }
    return focal;
}

void setup_ingest(CLI::App& app) {
    auto cmd = app.add_subcommand("ingest",
                                  "Parse and harmonize a trade-flow file into canonical flows");
    auto flow_args = std::make_shared<FlowArgs>();
    auto out_path = std::make_shared<std::optional<std::string>>();
    add_flow_options(cmd, *flow_args, /*with_range=*/false);
    cmd->add_option("--out", *out_path, "Output file (default: stdout)");
    cmd->callback([flow_args, out_path] {
        LoadedFlows loaded = load_flows(*flow_args);
        with_output(*out_path, [&](std::ostream& out) {
            out << "period,origin,destination,hs6,value_usd,quantity_kg,provenance\n";
            for (const tc::FlowObservation& f : loaded.flows) {
                out << f.period.str() << ',' << f.origin << ',' << f.destination << ',' << f.hs6
                    << ',' << (f.value ? tc::format_double(*f.value) : "") << ','
                    << (f.quantity ? tc::format_double(*f.quantity) : "") << ','
                    << tc::provenance_name(f.provenance) << '\n';
            }
        });
        std::cerr << "parsed " << loaded.records << " records (" << loaded.diagnostics.size()
                  << " rejected), " << loaded.flows.size() << " harmonized flows\n";
    });
}

void setup_export_network(CLI::App& app) {
    auto cmd = app.add_subcommand("export-network",
                                  "Export one (product, month) trade network as edge rows");
    auto flow_args = std::make_shared<FlowArgs>();
    auto product = std::make_shared<std::string>();
    auto period = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::optional<std::string>>();
    add_flow_options(cmd, *flow_args, /*with_range=*/false);
    cmd->add_option("--product", *product, "HS6 product code")->required();
    cmd->add_option("--period", *period, "Month YYYY-MM")->required();
    cmd->add_option("--out", *out_path, "Output file (default: stdout)");
    cmd->callback([flow_args, product, period, out_path] {
        LoadedFlows loaded = load_flows(*flow_args);
        tc::TradeNetwork net =
            tc::build_network(loaded.flows, *product, parse_period_arg(*period, "--period"));
        with_output(*out_path, [&](std::ostream& out) {
            out << "origin,destination,value_usd,quantity_kg\n";
            for (const tc::TradeNetwork::Edge& e : net.edges()) {
                out << e.origin << ',' << e.destination << ','
                    << tc::format_double(e.weight.value) << ','
                    << (e.weight.quantity ? tc::format_double(*e.weight.quantity) : "") << '\n';
            }
        });
    });
}

void setup_index(CLI::App& app) {
    auto cmd = app.add_subcommand("index",
                                  "Monthly circumvention index of one (product, route) triple");
    auto flow_args = std::make_shared<FlowArgs>();
    auto product = std::make_shared<std::string>();
    auto exporter = std::make_shared<std::string>();
    auto importer = std::make_shared<std::string>();
    auto statistic = std::make_shared<std::string>("value");
    auto standardize = std::make_shared<bool>(false);
    auto out_path = std::make_shared<std::optional<std::string>>();
    add_flow_options(cmd, *flow_args);
    cmd->add_option("--product", *product, "HS6 product code")->required();
    cmd->add_option("--exporter", *exporter, "Suspected origin country")->required();
    cmd->add_option("--importer", *importer, "Duty-imposing destination country")->required();
    cmd->add_option("--statistic", *statistic, "Path statistic: value|quantity|last-leg");
    cmd->add_flag("--standardize", *standardize, "Z-score the series before printing");
    cmd->add_option("--out", *out_path, "Output file (default: stdout)");
    cmd->callback([flow_args, product, exporter, importer, statistic, standardize, out_path] {
        auto stat = tc::parse_path_statistic(*statistic);
        if (!stat) throw tc::FormatError("unknown --statistic \"" + *statistic + "\"");
        LoadedFlows loaded = load_flows(*flow_args);
        tc::PeriodRange grid = resolve_range(*flow_args, loaded.flows);
        tc::CircumventionSeries series =
            single_series(loaded.flows, *product, *exporter, *importer, *stat, grid);
        if (*standardize) series.values = tc::standardize_series(series.values);
        with_output(*out_path, [&](std::ostream& out) {
            out << "period,index_value\n";
            for (std::size_t i = 0; i < series.size(); ++i) {
                out << series.periods[i].str() << ','
                    << (series.values[i] ? tc::format_double(*series.values[i]) : "") << '\n';
            }
        });
    });
}

void setup_controls(CLI::App& app) {
    auto cmd = app.add_subcommand("controls",
                                  "Select the control products for one focal (product, route)");
    auto flow_args = std::make_shared<FlowArgs>();
    auto duties = std::make_shared<std::string>();
    auto labels = std::make_shared<std::optional<std::string>>();
    auto product = std::make_shared<std::string>();
    auto exporter = std::make_shared<std::string>();
    auto importer = std::make_shared<std::string>();
    auto statistic = std::make_shared<std::string>("value");
    auto threshold = std::make_shared<double>(0.10);
    add_flow_options(cmd, *flow_args);
    cmd->add_option("--duties", *duties, "Anti-dumping duty file")->required();
    cmd->add_option("--labels", *labels, "Investigation label file (optional here)");
    cmd->add_option("--product", *product, "Focal HS6 product code")->required();
    cmd->add_option("--exporter", *exporter, "Suspected origin country")->required();
    cmd->add_option("--importer", *importer, "Duty-imposing destination country")->required();
    cmd->add_option("--statistic", *statistic, "Path statistic: value|quantity|last-leg");
    cmd->add_option("--missing-threshold", *threshold,
                    "Max missing fraction of a control series (default 0.10)");
    cmd->callback([flow_args, duties, labels, product, exporter, importer, statistic, threshold] {
        auto stat = tc::parse_path_statistic(*statistic);
        if (!stat) throw tc::FormatError("unknown --statistic \"" + *statistic + "\"");
        LoadedFlows loaded = load_flows(*flow_args);
        tc::PeriodRange grid = resolve_range(*flow_args, loaded.flows);
        tc::AdRegistry registry = load_registry_files(*duties, *labels, grid);
        auto universe =
            tc::route_series_universe(loaded.flows, *exporter, *importer, *stat, grid);
        auto focal_it = std::find_if(universe.begin(), universe.end(),
                                     [&](const auto& s) { return s.product == *product; });
        if (focal_it == universe.end()) {
            throw tc::PreconditionError("no trade data for product " + *product +
                                        " in the sample");
        }
        tc::ControlPanel panel = tc::select_controls(*focal_it, universe, registry, *threshold);
        for (const tc::CircumventionSeries& s : panel.controls) std::cout << s.product << '\n';
        std::cout << "C_p = " << panel.control_count() << '\n';
    });
}

void setup_detect(CLI::App& app) {
    auto cmd = app.add_subcommand("detect", "Fit the duty-window regression per focal flow");
    auto flow_args = std::make_shared<FlowArgs>();
    auto est_args = std::make_shared<EstimatorArgs>();
    auto duties = std::make_shared<std::string>();
    auto labels = std::make_shared<std::optional<std::string>>();
    auto focal = std::make_shared<std::vector<std::string>>();
    auto alpha = std::make_shared<double>(0.05);
    auto out_path = std::make_shared<std::optional<std::string>>();
    add_flow_options(cmd, *flow_args);
    add_estimator_options(cmd, *est_args);
    cmd->add_option("--duties", *duties, "Anti-dumping duty file")->required();
    cmd->add_option("--labels", *labels, "Investigation label file (unused by detection)");
    cmd->add_option("--focal", *focal,
                    "Focal flow PRODUCT:EXPORTER:IMPORTER (repeatable; default: every duty "
                    "window inside the sample)");
    cmd->add_option("--alpha", *alpha, "Significance level (default 0.05)");
    cmd->add_option("--out", *out_path, "Output file (default: stdout)");
    cmd->callback([flow_args, est_args, duties, labels, focal, alpha, out_path] {
        tc::DetectOptions options = make_options(*est_args, {*alpha});
        LoadedFlows loaded = load_flows(*flow_args);
        tc::PeriodRange sample = resolve_range(*flow_args, loaded.flows);
        tc::AdRegistry registry = load_registry_files(*duties, *labels, sample);
        std::vector<tc::DutyWindow> windows = focal_windows(registry, *focal, sample);
        std::vector<tc::FocalOutcome> outcomes =
            tc::run_detections(loaded.flows, registry, windows, sample, options);
        std::vector<tc::DetectionFlag> flags;
        flags.reserve(outcomes.size());
        for (const tc::FocalOutcome& o : outcomes) flags.push_back(o.flags.front());
        with_output(*out_path, [&](std::ostream& out) { write_detection_rows(out, flags); });
    });
}

void setup_evaluate(CLI::App& app) {
    auto cmd = app.add_subcommand("evaluate",
                                  "Score detections against investigation labels per alpha");
    auto flow_args = std::make_shared<FlowArgs>();
    auto est_args = std::make_shared<EstimatorArgs>();
    auto duties = std::make_shared<std::string>();
    auto labels = std::make_shared<std::string>();
    auto alphas = std::make_shared<std::vector<double>>();
    auto csv_path = std::make_shared<std::optional<std::string>>();
    add_flow_options(cmd, *flow_args);
    add_estimator_options(cmd, *est_args);
    cmd->add_option("--duties", *duties, "Anti-dumping duty file")->required();
    cmd->add_option("--labels", *labels, "Investigation label file")->required();
    cmd->add_option("--alpha", *alphas, "Significance levels (default 0.1 0.05 0.01)");
    cmd->add_option("--csv", *csv_path, "Also write the delimited rows to this file");
    cmd->callback([flow_args, est_args, duties, labels, alphas, csv_path] {
        std::vector<double> levels =
            alphas->empty() ? std::vector<double>{0.10, 0.05, 0.01} : *alphas;
        tc::DetectOptions options = make_options(*est_args, std::move(levels));
        LoadedFlows loaded = load_flows(*flow_args);
        tc::PeriodRange sample = resolve_range(*flow_args, loaded.flows);
        tc::AdRegistry registry = load_registry_files(*duties, *labels, sample);
        tc::PipelineResult result =
            tc::detect_and_evaluate(loaded.flows, registry, sample, options);
        for (std::size_t i = 0; i < result.matrices.size(); ++i) {
            if (i > 0) std::cout << '\n';
            std::cout << tc::format_confusion(result.matrices[i]);
        }
        std::cout << '\n';
        write_confusion_rows(std::cout, result.matrices);
        if (*csv_path) {
            with_output(*csv_path,
                        [&](std::ostream& out) { write_confusion_rows(out, result.matrices); });
        }
    });
}

void setup_simulate(CLI::App& app) {
    auto cmd = app.add_subcommand("simulate",
                                  "Generate a synthetic scenario's flows, duties and labels");
    auto config_path = std::make_shared<std::string>();
    auto out_dir = std::make_shared<std::string>();
    cmd->add_option("--config", *config_path, "Scenario configuration (JSON)")->required();
    cmd->add_option("--out-dir", *out_dir, "Directory for flows.csv, duties.csv, labels.csv")
        ->required();
    cmd->callback([config_path, out_dir] {
        std::ifstream config_in(*config_path);
        if (!config_in.is_open()) {
            throw tc::IoError("cannot open scenario config: " + *config_path);
        }
        tc::synth::ScenarioConfig config = tc::synth::ScenarioConfig::from_json(config_in);
        tc::synth::ScenarioData data = tc::synth::generate(config);

        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(*out_dir, ec);
        if (ec) {
            throw tc::IoError("cannot create output directory " + *out_dir + ": " + ec.message());
        }
        auto write_file = [&](const char* name, auto&& writer) {
            fs::path path = fs::path(*out_dir) / name;
            std::ofstream out(path, std::ios::binary);
            if (!out.is_open()) throw tc::IoError("cannot write output file: " + path.string());
            writer(out);
        };
        write_file("flows.csv",
                   [&](std::ostream& out) { tc::synth::write_flows_csv(out, data.flows); });
        write_file("duties.csv",
                   [&](std::ostream& out) { tc::synth::write_duties_csv(out, data.windows); });
        write_file("labels.csv",
                   [&](std::ostream& out) { tc::synth::write_labels_csv(out, data.labels); });
        std::cout << "wrote " << data.flows.size() << " flows, " << data.windows.size()
                  << " duty windows, " << data.labels.size() << " labels to " << *out_dir << '\n';
    });
}

void setup_run(CLI::App& app) {
    auto cmd = app.add_subcommand("run", "Full pipeline: ingest, detect, evaluate, write outputs");
    auto flow_args = std::make_shared<FlowArgs>();
    auto est_args = std::make_shared<EstimatorArgs>();
    auto duties = std::make_shared<std::string>();
    auto labels = std::make_shared<std::string>();
    auto alphas = std::make_shared<std::vector<double>>();
    auto out_dir = std::make_shared<std::string>();
    add_flow_options(cmd, *flow_args, /*with_range=*/false);
    cmd->add_option("--from", flow_args->from, "Sample start period YYYY-MM")->required();
    cmd->add_option("--to", flow_args->to, "Sample end period YYYY-MM")->required();
    add_estimator_options(cmd, *est_args);
    cmd->add_option("--duties", *duties, "Anti-dumping duty file")->required();
    cmd->add_option("--labels", *labels, "Investigation label file")->required();
    cmd->add_option("--alpha", *alphas, "Significance levels (default 0.1 0.05 0.01)");
    cmd->add_option("--out-dir", *out_dir, "Output directory")->required();
    cmd->callback([flow_args, est_args, duties, labels, alphas, out_dir] {
        std::vector<double> levels =
            alphas->empty() ? std::vector<double>{0.10, 0.05, 0.01} : *alphas;
        tc::RunConfig config;
        config.flows_path = flow_args->flows_path;
        config.duties_path = *duties;
        config.labels_path = *labels;
        config.eu_path = flow_args->eu_path;
        config.out_dir = *out_dir;
        config.sample = {parse_period_arg(*flow_args->from, "--from"),
                         parse_period_arg(*flow_args->to, "--to")};
        config.options = make_options(*est_args, std::move(levels));
        config.delimiter = delimiter_of(*flow_args);

        tc::RunReport report = tc::run_pipeline(config);
        print_diagnostics(config.flows_path, report.flow_diagnostics);
        print_diagnostics(config.duties_path, report.registry_diagnostics);
        std::cout << "parsed " << report.records_parsed << " records ("
                  << report.flow_diagnostics.size() << " rejected), " << report.flow_count
                  << " harmonized flows, " << report.result.outcomes.size() << " focal flows\n\n";
        for (std::size_t i = 0; i < report.result.matrices.size(); ++i) {
            if (i > 0) std::cout << '\n';
            std::cout << tc::format_confusion(report.result.matrices[i]);
        }
        std::cout << "\noutputs written to " << *out_dir << '\n';
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detects suspected anti-dumping circumvention via third-country re-routing"};
    app.require_subcommand(1);

    setup_ingest(app);
    setup_export_network(app);
    setup_index(app);
    setup_controls(app);
    setup_detect(app);
    setup_evaluate(app);
    setup_simulate(app);
    setup_run(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const tc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
