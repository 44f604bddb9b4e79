// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned in the checks themselves.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tradecirc/controls.hpp"
#include "tradecirc/errors.hpp"
#include "tradecirc/pipeline.hpp"
#include "tradecirc/synth.hpp"

using namespace tradecirc;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, args);
    va_end(args);
    return buf;
}

// --- criterion 1: index vs. brute-force oracle ----------------------------

void criterion_1() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(101);
    int networks = 0;
    int mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        TradeNetwork net = oracles::random_network(rng, 15, 60);
        ++networks;
        const auto& nodes = net.nodes();
        std::uniform_int_distribution<std::size_t> pick(0, nodes.size() - 1);
        std::size_t j = pick(rng), i = pick(rng);
        while (i == j) i = pick(rng);
        for (PathStatistic stat :
             {PathStatistic::ValueSum, PathStatistic::QuantitySum, PathStatistic::LastLegValue}) {
            const double fast = circumvention_index(net, nodes[j], nodes[i], stat);
            const double slow = oracles::brute_force_index(net, nodes[j], nodes[i], stat);
            if (fast != slow) ++mismatches;  // exact equality required
        }
    }
    const double elapsed = seconds_since(t0);
    report(1, mismatches == 0 && elapsed < 5.0,
           fmt("circumvention index equals the brute-force oracle exactly on %d random networks "
               "(<=15 nodes, <=60 edges, all 3 statistics); %d mismatches, %.2fs (limit 5s)",
               networks, mismatches, elapsed));
}

// --- criterion 2: within estimator vs. LSDV oracle -------------------------

void criterion_2() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(202);
    int panels = 0;
    double worst_beta = 0.0;
    double worst_se = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        Panel panel = oracles::random_panel(rng, 20, 72);
        ++panels;
        FEFit fit = fit_fixed_effects(panel);
        oracles::LsdvFit oracle = oracles::lsdv_fit(panel);
        worst_beta = std::max(worst_beta, std::fabs(fit.beta_hat - oracle.beta));
        worst_se = std::max(worst_se, std::fabs(fit.se - oracle.se));
    }
    const double elapsed = seconds_since(t0);
    report(2, worst_beta <= 1e-10 && worst_se <= 1e-10 && elapsed < 10.0,
           fmt("within estimator matches LSDV on %d random unbalanced panels (<=20 entities, "
               "<=72 periods); max |dbeta| %.2e, max |dse| %.2e (tol 1e-10), %.2fs (limit 10s)",
               panels, worst_beta, worst_se, elapsed));
}

// --- criterion 3: exact-shift recovery -------------------------------------

void criterion_3() {
    // (a) focal entity shifted by exactly delta inside the window, two
    //     constant controls: beta must equal delta to 1e-12.
    const double delta = 0.75;
    Panel shifted;
    shifted.spec = ResponseSpec::LogLevel;
    for (int t = 0; t < 24; ++t) {
        const int dummy = (t >= 8 && t <= 15) ? 1 : 0;
        shifted.rows.push_back(
            {0, YearMonth::from_index(YearMonth{2012, 1}.index() + t), 2.0 + delta * dummy, dummy});
        shifted.rows.push_back({1, YearMonth::from_index(YearMonth{2012, 1}.index() + t), 1.0, 0});
        shifted.rows.push_back({2, YearMonth::from_index(YearMonth{2012, 1}.index() + t), 3.5, 0});
    }
    const FEFit fit_shift = fit_fixed_effects(shifted);
    const double err_shift = std::fabs(fit_shift.beta_hat - delta);

    // (b) noisy focal-only panel: beta must equal the inside/outside mean
    //     difference to 1e-12.
    std::mt19937_64 rng(303);
    std::normal_distribution<double> noise(5.0, 1.3);
    double worst_focal = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
        Panel focal_only;
        focal_only.spec = ResponseSpec::LogLevel;
        double in_sum = 0.0, out_sum = 0.0;
        int in_n = 0, out_n = 0;
        for (int t = 0; t < 36; ++t) {
            const int dummy = (t >= 10 && t <= 21) ? 1 : 0;
            const double y = noise(rng);
            focal_only.rows.push_back(
                {0, YearMonth::from_index(YearMonth{2010, 1}.index() + t), y, dummy});
            (dummy ? in_sum : out_sum) += y;
            (dummy ? in_n : out_n) += 1;
        }
        const FEFit fit = fit_fixed_effects(focal_only);
        const double mean_diff = in_sum / in_n - out_sum / out_n;
        worst_focal = std::max(worst_focal, std::fabs(fit.beta_hat - mean_diff));
    }

    report(3, err_shift <= 1e-12 && worst_focal <= 1e-12,
           fmt("exact level shift recovered: |beta - delta| = %.2e with constant controls, and "
               "focal-only beta equals the in/out mean difference to %.2e (tol 1e-12, 25 panels)",
               err_shift, worst_focal));
}

// --- criterion 4: synthetic end-to-end recovery -----------------------------

synth::ScenarioConfig scenario_recovery() {
    synth::ScenarioConfig c;
    c.n_countries = 20;
    c.n_products = 150;
    c.n_periods = 72;
    c.n_chapters = 30;
    c.start = {2010, 1};
    c.baseline_location = 8.0;
    c.baseline_scale = 0.5;
    c.edge_density = 0.8;
    c.seed = 7;
    auto inj = [&](const char* p, const char* j, const char* i, const char* k1, const char* k2,
                   int y0, int m0) {
        synth::Injection x;
        x.product = p;
        x.exporter = j;
        x.importer = i;
        x.via = {k1, k2};
        x.window.first = {y0, m0};
        x.window.last = YearMonth::from_index(x.window.first.index() + 17);
        x.magnitude = 4.0;
        x.direct_suppression = 0.25;
        c.injections.push_back(std::move(x));
    };
    inj("110001", "C01", "C02", "C05", "C07", 2011, 3);
    inj("120002", "C03", "C02", "C06", "C08", 2011, 6);
    inj("130003", "C04", "C02", "C09", "C11", 2012, 1);
    inj("140004", "C01", "C02", "C10", "C12", 2012, 6);
    inj("150005", "C03", "C02", "C13", "C15", 2013, 1);
    inj("160036", "C04", "C02", "C14", "C16", 2013, 3);
    inj("170037", "C05", "C02", "C17", "C19", 2011, 9);
    inj("180038", "C06", "C02", "C03", "C18", 2012, 3);
    inj("190039", "C01", "C10", "C02", "C04", 2012, 9);
    inj("200040", "C03", "C10", "C05", "C06", 2013, 6);
    inj("210071", "C04", "C10", "C07", "C08", 2011, 1);
    inj("220072", "C05", "C10", "C09", "C12", 2013, 9);
    inj("230073", "C06", "C10", "C11", "C13", 2014, 1);
    inj("240074", "C01", "C15", "C14", "C16", 2012, 12);
    auto pla = [&](const char* p, const char* j, const char* i, int y0, int m0) {
        synth::PlaceboWindow x;
        x.product = p;
        x.exporter = j;
        x.importer = i;
        x.window.first = {y0, m0};
        x.window.last = YearMonth::from_index(x.window.first.index() + 17);
        c.placebos.push_back(std::move(x));
    };
    pla("250105", "C03", "C02", 2012, 1);
    pla("260106", "C01", "C10", 2013, 1);
    pla("270107", "C04", "C02", 2011, 9);
    pla("280108", "C05", "C10", 2014, 3);
    return c;
}

AdRegistry registry_from(const synth::ScenarioData& data, PeriodRange sample) {
    std::stringstream duties, labels;
    synth::write_duties_csv(duties, data.windows);
    synth::write_labels_csv(labels, data.labels);
    return AdRegistry::load(duties, labels, sample);
}

PipelineResult criterion_4() {
    const auto t0 = Clock::now();
    const synth::ScenarioConfig config = scenario_recovery();
    const synth::ScenarioData data = synth::generate(config);
    const AdRegistry registry = registry_from(data, config.sample());

    DetectOptions options;  // standardized spec, two-sided, alphas 0.10/0.05/0.01
    PipelineResult result = detect_and_evaluate(data.flows, registry, config.sample(), options);
    const double elapsed = seconds_since(t0);

    std::size_t min_controls = SIZE_MAX;
    for (const FocalOutcome& o : result.outcomes) {
        min_controls = std::min(min_controls, o.control_count);
    }

    const ConfusionMatrix* at05 = nullptr;
    for (const ConfusionMatrix& cm : result.matrices) {
        if (cm.alpha == 0.05) at05 = &cm;
    }

    const bool pass = at05 != nullptr && result.outcomes.size() == 18 &&
                      at05->tp + at05->fn == 14 && at05->fp + at05->tn == 4 && at05->tp >= 12 &&
                      at05->fp <= 1 && min_controls >= 120 && elapsed < 60.0;
    report(4, pass,
           fmt("synthetic end-to-end (18 focal flows: 14 injected + 4 clean, 20 countries, "
               "72 months, standardized spec): recall %zu/14 at alpha=0.05 (need >=12), "
               "%zu of 4 clean flagged (allow <=1), min controls per flow %zu (need >=120), "
               "%.1fs (limit 60s)",
               at05 ? at05->tp : 0, at05 ? at05->fp : 0, min_controls, elapsed));
    return result;
}

// --- criterion 5: false-positive calibration --------------------------------

synth::ScenarioConfig scenario_calibration() {
    synth::ScenarioConfig c;
    c.n_countries = 16;
    c.n_products = 240;
    c.n_periods = 48;
    c.n_chapters = 24;
    c.start = {2010, 1};
    c.baseline_location = 8.0;
    c.baseline_scale = 0.5;
    c.edge_density = 0.85;
    c.seed = 11;
    const auto products = c.product_codes();
    for (int i = 0; i < 200; ++i) {
        synth::PlaceboWindow p;
        p.product = products[static_cast<std::size_t>(i)];
        p.exporter = "C01";
        p.importer = "C02";
        const int start_offset = 4 + i % 22;
        const int len = 12 + i % 7;  // 12..18 months
        p.window.first = YearMonth::from_index(c.start.index() + start_offset);
        p.window.last = YearMonth::from_index(c.start.index() + start_offset + len - 1);
        c.placebos.push_back(std::move(p));
    }
    return c;
}

PipelineResult criterion_5() {
    const synth::ScenarioConfig config = scenario_calibration();
    const synth::ScenarioData data = synth::generate(config);
    const AdRegistry registry = registry_from(data, config.sample());

    DetectOptions options;  // keep all three alphas so nestedness is checkable
    PipelineResult result = detect_and_evaluate(data.flows, registry, config.sample(), options);

    std::size_t detected = 0;
    for (const FocalOutcome& o : result.outcomes) {
        for (const DetectionFlag& flag : o.flags) {
            if (flag.alpha == 0.05 && flag.detected) ++detected;
        }
    }
    const double rate =
        static_cast<double>(detected) / static_cast<double>(result.outcomes.size());

    const bool pass = result.outcomes.size() == 200 && rate >= 0.01 && rate <= 0.12;
    report(5, pass,
           fmt("false-positive calibration on %zu clean focal flows: %zu flagged at alpha=0.05, "
               "rate %.3f (required within [0.01, 0.12])",
               result.outcomes.size(), detected, rate));
    return result;
}

// --- criterion 6: selection-rule conformance --------------------------------

void criterion_6() {
    // 100-month grid so an 11% missing fraction is exactly representable.
    const PeriodRange grid{{2010, 1}, YearMonth::from_index(YearMonth{2010, 1}.index() + 99)};
    const auto months = grid.months();

    auto series_of = [&](const Hs6& product, int missing) {
        CircumventionSeries s;
        s.product = product;
        s.exporter = "CHN";
        s.importer = "EU";
        s.periods = months;
        s.values.assign(months.size(), 100.0);
        for (int k = 0; k < missing; ++k) s.values[static_cast<std::size_t>(3 + 7 * k)] = {};
        return s;
    };

    const CircumventionSeries focal = series_of("690710", 0);

    std::istringstream duties(
        "hs6,exporter,importer,announced,imposed,withdrawn\n"
        "730411,CHN,EU,,2012-06,2013-06\n");
    std::istringstream labels("hs_code,exporter,published\n");
    const AdRegistry registry = AdRegistry::load(duties, labels, grid);

    std::vector<CircumventionSeries> universe = {
        series_of("691190", 0),   // violates only the chapter rule (same chapter 69)
        series_of("730411", 0),   // violates only the AD-free rule (duty inside the sample)
        series_of("720810", 11),  // violates only the missing rule (11% > 10%)
        series_of("550320", 0),   // survivor
        series_of("560311", 10),  // survivor at exactly the 10% threshold
        series_of("020230", 0),   // survivor
    };

    bool pass = false;
    std::string detail;
    try {
        ControlPanel panel = select_controls(focal, universe, registry, 0.10);
        std::vector<std::string> got;
        for (const auto& c : panel.controls) got.push_back(c.product);
        const std::vector<std::string> want = {"020230", "550320", "560311"};
        pass = got == want;
        std::string got_list;
        for (const auto& p : got) got_list += (got_list.empty() ? "" : ",") + p;
        detail = fmt("selection rules exclude exactly the three single-rule violators "
                     "(same-chapter 691190, AD-touched 730411, 11%%-missing 720810) and keep "
                     "{%s}; 10%%-missing candidate retained (inclusive threshold)",
                     got_list.c_str());
    } catch (const Error& e) {
        detail = fmt("selection raised unexpectedly: %s", e.what());
    }
    report(6, pass, detail);
}

// --- criterion 7: duty dummy vs. direct interval predicate ------------------

void criterion_7() {
    std::mt19937_64 rng(707);
    std::uniform_int_distribution<int> grid_start(0, 80);  // month offset from 2010-01
    std::uniform_int_distribution<int> grid_len(12, 90);
    std::uniform_int_distribution<int> win_off(-24, 96);
    std::uniform_int_distribution<int> win_len(0, 48);

    int windows = 0;
    int mismatches = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const YearMonth start = YearMonth::from_index(YearMonth{2010, 1}.index() + grid_start(rng));
        const PeriodRange grid{start, YearMonth::from_index(start.index() + grid_len(rng))};
        const auto months = grid.months();

        DutyWindow w;
        w.product = "690710";
        w.exporter = "CHN";
        w.importer = "EU";
        w.imposed = YearMonth::from_index(start.index() + win_off(rng));
        w.withdrawn = YearMonth::from_index(w.imposed.index() + win_len(rng));
        ++windows;

        const std::vector<int> dummy = duty_dummy(w, months);
        for (std::size_t i = 0; i < months.size(); ++i) {
            const int direct = (w.imposed <= months[i] && months[i] <= w.withdrawn) ? 1 : 0;
            if (dummy[i] != direct) ++mismatches;
        }
    }
    report(7, mismatches == 0,
           fmt("duty dummy equals the inclusive interval predicate imposed<=t<=withdrawn on %d "
               "randomized windows (%d cell mismatches)",
               windows, mismatches));
}

// --- criterion 8: nestedness and cell conservation ---------------------------

void criterion_8(const PipelineResult* runs[], std::size_t n_runs, bool inputs_ok) {
    if (!inputs_ok) {
        report(8, false, "nestedness not evaluated: an upstream pipeline run failed");
        return;
    }
    std::size_t violations = 0;
    std::size_t conservation_errors = 0;
    std::size_t flows_checked = 0;
    for (std::size_t r = 0; r < n_runs; ++r) {
        const PipelineResult& result = *runs[r];
        for (const FocalOutcome& o : result.outcomes) {
            ++flows_checked;
            // flags are ordered by descending alpha: 0.10, 0.05, 0.01
            for (std::size_t k = 1; k < o.flags.size(); ++k) {
                if (o.flags[k].detected && !o.flags[k - 1].detected) ++violations;
            }
        }
        for (const ConfusionMatrix& cm : result.matrices) {
            if (cm.total() != result.outcomes.size()) ++conservation_errors;
        }
    }
    report(8, violations == 0 && conservation_errors == 0,
           fmt("detections nest across alpha in {0.01} <= {0.05} <= {0.10} on %zu focal flows "
               "across %zu pipeline runs (%zu violations) and every confusion matrix conserves "
               "its cells (%zu errors)",
               flows_checked, n_runs, violations, conservation_errors));
}

// --- criterion 9: conditional replication on a real dataset ------------------

void criterion_9() {
    const char* dir = std::getenv("TRADECIRC_REAL_DATA_DIR");
    if (dir == nullptr || *dir == '\0') {
        std::printf("SKIP criterion 9: no real dataset supplied; set TRADECIRC_REAL_DATA_DIR to "
                    "a directory holding flows.csv, duties.csv and labels.csv to produce the "
                    "replication report\n");
        return;
    }
    const std::string base = dir;
    try {
        std::ifstream flows_in(base + "/flows.csv");
        if (!flows_in.is_open()) throw IoError("cannot open " + base + "/flows.csv");
        ParseResult parsed = parse_trade_records(flows_in);
        const auto flows = harmonize_all(std::move(parsed.records), EuRoster::static_eu28());
        if (flows.empty()) throw PreconditionError("real dataset contains no usable flows");

        PeriodRange sample{flows.front().period, flows.front().period};
        for (const auto& f : flows) {
            sample.first = std::min(sample.first, f.period);
            sample.last = std::max(sample.last, f.period);
        }

        std::ifstream duties_in(base + "/duties.csv");
        if (!duties_in.is_open()) throw IoError("cannot open " + base + "/duties.csv");
        std::ifstream labels_in(base + "/labels.csv");
        if (!labels_in.is_open()) throw IoError("cannot open " + base + "/labels.csv");
        const AdRegistry registry = AdRegistry::load(duties_in, labels_in, sample);

        DetectOptions options;
        const PipelineResult result = detect_and_evaluate(flows, registry, sample, options);
        std::string cells;
        for (const ConfusionMatrix& cm : result.matrices) {
            cells += fmt(" [alpha=%.2f tp=%zu fp=%zu fn=%zu tn=%zu]", cm.alpha, cm.tp, cm.fp,
                         cm.fn, cm.tn);
        }
        std::printf("REPORT criterion 9: replication on %s over %s..%s, %zu focal flows:%s "
                    "(reported, not asserted)\n",
                    base.c_str(), sample.first.str().c_str(), sample.last.str().c_str(),
                    result.outcomes.size(), cells.c_str());
    } catch (const std::exception& e) {
        std::printf("REPORT criterion 9: replication attempted on %s but not completed: %s "
                    "(reported, not asserted)\n",
                    base.c_str(), e.what());
    }
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();

    PipelineResult recovery;
    PipelineResult calibration;
    bool pipeline_ran = true;
    try {
        recovery = criterion_4();
    } catch (const std::exception& e) {
        report(4, false, fmt("pipeline raised: %s", e.what()));
        pipeline_ran = false;
    }
    try {
        calibration = criterion_5();
    } catch (const std::exception& e) {
        report(5, false, fmt("pipeline raised: %s", e.what()));
        pipeline_ran = false;
    }

    criterion_6();
    criterion_7();

    const PipelineResult* runs[] = {&recovery, &calibration};
    criterion_8(runs, 2, pipeline_ran);

    criterion_9();

    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return 1;
}
