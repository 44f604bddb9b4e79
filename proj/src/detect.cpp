#include "tradecirc/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "tradecirc/errors.hpp"

namespace tradecirc {

namespace {

double upper_tail_p(double t, double dof) {
    if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
    boost::math::students_t_distribution<double> dist(dof);
    return boost::math::cdf(boost::math::complement(dist, t));
}

double p_value_for(double t, double dof, TestTail tail) {
    if (tail == TestTail::UpperOnly) return upper_tail_p(t, dof);
    return 2.0 * upper_tail_p(std::fabs(t), dof);
}

}  // namespace

std::optional<ResponseSpec> parse_response_spec(std::string_view text) {
    if (text == "log") return ResponseSpec::LogLevel;
    if (text == "standardized") return ResponseSpec::Standardized;
    if (text == "standardized-raw") return ResponseSpec::StandardizedRaw;
    return std::nullopt;
}

std::string_view response_spec_name(ResponseSpec spec) {
    switch (spec) {
        case ResponseSpec::LogLevel: return "log";
        case ResponseSpec::Standardized: return "standardized";
        case ResponseSpec::StandardizedRaw: return "standardized-raw";
    }
    return "?";
}

Panel build_panel(const ControlPanel& panel, const DutyWindow& window, ResponseSpec spec) {
    const auto& focal = panel.focal;
    if (window.product != focal.product) {
        throw PreconditionError("duty window is for product " + window.product +
                                ", focal series is " + focal.product);
    }

    Panel out;
    out.spec = spec;
    const bool log_based = spec == ResponseSpec::LogLevel || spec == ResponseSpec::Standardized;
    const bool entity_zscore =
        spec == ResponseSpec::Standardized || spec == ResponseSpec::StandardizedRaw;

    auto entity_responses = [&](const CircumventionSeries& series, int entity) {
        std::vector<std::optional<double>> transformed(series.values.size());
        for (std::size_t t = 0; t < series.values.size(); ++t) {
            if (!series.values[t]) continue;
            double y = *series.values[t];
            if (log_based) {
                if (y <= 0.0) {
                    throw NonpositiveResponseError(
                        "nonpositive response for entity " + series.product + " (index " +
                        std::to_string(entity) + ") in " + series.periods[t].str() + ": " +
                        std::to_string(y));
                }
                transformed[t] = std::log(y);
            } else {
                transformed[t] = y;
            }
        }
        if (entity_zscore) {
            try {
                transformed = standardize_series(transformed);
            } catch (const DegenerateSeriesError& e) {
                throw DegenerateSeriesError("entity " + series.product + " (index " +
                                            std::to_string(entity) + "): " + e.what());
            } catch (const InsufficientDataError& e) {
                throw InsufficientDataError("entity " + series.product + " (index " +
                                            std::to_string(entity) + "): " + e.what());
            }
        }
        return transformed;
    };

    auto append_entity = [&](const CircumventionSeries& series, int entity,
                             const std::vector<int>* dummy) {
        auto responses = entity_responses(series, entity);
        for (std::size_t t = 0; t < series.periods.size(); ++t) {
            if (!responses[t]) continue;
            out.rows.push_back(
                {entity, series.periods[t], *responses[t], dummy ? (*dummy)[t] : 0});
        }
    };

    const auto focal_dummy = duty_dummy(window, focal.periods);
    append_entity(focal, 0, &focal_dummy);

    std::size_t focal_rows = out.rows.size();
    std::size_t focal_treated = 0;
    for (std::size_t i = 0; i < focal_rows; ++i) {
        if (out.rows[i].dummy == 1) ++focal_treated;
    }
    if (focal_treated == 0 || focal_treated == focal_rows) {
        throw UnidentifiedBetaError("duty dummy is constant on focal product " + focal.product +
                                    " after dropping missing periods");
    }

    int entity = 1;
    for (const auto& control : panel.controls) {
        append_entity(control, entity++, nullptr);
    }
    return out;
}

FEFit fit_fixed_effects(const Panel& panel, TestTail tail) {
    std::vector<PanelObservation> rows(panel.rows.begin(), panel.rows.end());
    std::sort(rows.begin(), rows.end(), [](const PanelObservation& a, const PanelObservation& b) {
        return std::tie(a.entity, a.period) < std::tie(b.entity, b.period);
    });
    if (rows.empty()) throw InsufficientDataError("empty panel");

    // Per-entity means, then pooled within sums.
    double sxy = 0.0;
    double sxx = 0.0;
    std::size_t n_entities = 0;
    std::size_t begin = 0;
    std::vector<std::pair<double, double>> means;  // (response mean, dummy mean) per run
    std::vector<std::size_t> starts;
    while (begin < rows.size()) {
        std::size_t end = begin;
        double rsum = 0.0;
        double dsum = 0.0;
        while (end < rows.size() && rows[end].entity == rows[begin].entity) {
            rsum += rows[end].response;
            dsum += rows[end].dummy;
            ++end;
        }
        const double n = static_cast<double>(end - begin);
        means.emplace_back(rsum / n, dsum / n);
        starts.push_back(begin);
        ++n_entities;
        begin = end;
    }
    starts.push_back(rows.size());

    for (std::size_t g = 0; g < n_entities; ++g) {
        for (std::size_t i = starts[g]; i < starts[g + 1]; ++i) {
            const double rd = rows[i].response - means[g].first;
            const double dd = rows[i].dummy - means[g].second;
            sxy += dd * rd;
            sxx += dd * dd;
        }
    }
    if (sxx <= 0.0) {
        throw UnidentifiedBetaError("duty dummy has no within-entity variation");
    }

    FEFit fit;
    fit.spec = panel.spec;
    fit.n_obs = rows.size();
    fit.n_entities = n_entities;
    fit.dof = static_cast<long>(fit.n_obs) - static_cast<long>(fit.n_entities) - 1;
    if (fit.dof < 1) {
        throw InsufficientDataError("not enough observations: dof = " + std::to_string(fit.dof));
    }
    fit.beta_hat = sxy / sxx;

    double rss = 0.0;
    for (std::size_t g = 0; g < n_entities; ++g) {
        for (std::size_t i = starts[g]; i < starts[g + 1]; ++i) {
            const double rd = rows[i].response - means[g].first;
            const double dd = rows[i].dummy - means[g].second;
            const double resid = rd - fit.beta_hat * dd;
            rss += resid * resid;
        }
    }
    const double sigma2 = rss / static_cast<double>(fit.dof);
    fit.se = std::sqrt(sigma2 / sxx);
    if (fit.se > 0.0) {
        fit.t_stat = fit.beta_hat / fit.se;
    } else {
        // Perfect fit: the shift is exact, infinitely significant.
        fit.t_stat = fit.beta_hat == 0.0
                         ? 0.0
                         : std::copysign(std::numeric_limits<double>::infinity(), fit.beta_hat);
    }
    fit.p_value = p_value_for(fit.t_stat, static_cast<double>(fit.dof), tail);
    return fit;
}

DetectionFlag detect(const FEFit& fit, double alpha, const Hs6& product,
                     const CountryCode& exporter, const CountryCode& importer) {
    DetectionFlag flag;
    flag.product = product;
    flag.exporter = exporter;
    flag.importer = importer;
    flag.alpha = alpha;
    flag.detected = fit.p_value < alpha;
    flag.fit = fit;
    return flag;
}

}  // namespace tradecirc
