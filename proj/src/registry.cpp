#include "tradecirc/registry.hpp"

#include <algorithm>

#include "tradecirc/csv.hpp"
#include "tradecirc/errors.hpp"

namespace tradecirc {

namespace {

bool valid_hs_code(std::string_view code) {
    if (code.size() != 6 && code.size() != 8) return false;
    for (char c : code) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

bool touches_sample(const DutyWindow& w, const std::optional<PeriodRange>& sample) {
    if (!sample) return true;
    if (w.announced && sample->contains(*w.announced)) return true;
    return sample->contains(w.imposed) || sample->contains(w.withdrawn);
}

}  // namespace

AdRegistry AdRegistry::load(std::istream& duty_file, std::istream& label_file,
                            std::optional<PeriodRange> sample,
                            std::vector<RowError>* diagnostics) {
    AdRegistry registry;
    auto reject = [&](std::size_t line, std::string msg) {
        if (diagnostics) diagnostics->push_back({line, std::move(msg)});
    };

    {
        CsvReader reader(duty_file, ',');
        reader.expect_header({"hs6", "exporter", "importer", "announced", "imposed", "withdrawn"});
        while (auto row = reader.next_row()) {
            const std::size_t line = reader.line_number();
            if (row->size() != 6) {
                reject(line, "expected 6 fields");
                continue;
            }
            const auto& f = *row;
            if (!is_valid_hs6(f[0]) || !is_valid_country_code(f[1]) ||
                !is_valid_country_code(f[2])) {
                reject(line, "bad duty key: \"" + f[0] + "," + f[1] + "," + f[2] + "\"");
                continue;
            }
            DutyWindow w;
            w.product = f[0];
            w.exporter = f[1];
            w.importer = f[2];
            if (!f[3].empty()) {
                w.announced = YearMonth::parse(f[3]);
                if (!w.announced) {
                    reject(line, "bad announced date: \"" + f[3] + "\"");
                    continue;
                }
            }
            auto imposed = YearMonth::parse(f[4]);
            auto withdrawn = YearMonth::parse(f[5]);
            if (!imposed || !withdrawn) {
                reject(line, "bad imposed/withdrawn date");
                continue;
            }
            w.imposed = *imposed;
            w.withdrawn = *withdrawn;
            if (w.withdrawn < w.imposed) {
                reject(line, "imposed " + w.imposed.str() + " after withdrawn " +
                                 w.withdrawn.str());
                continue;
            }
            if (w.announced && w.imposed < *w.announced) {
                reject(line, "announced " + w.announced->str() + " after imposed " +
                                 w.imposed.str());
                continue;
            }
            registry.windows_.push_back(std::move(w));
        }
    }

    std::sort(registry.windows_.begin(), registry.windows_.end());
    registry.windows_.erase(std::unique(registry.windows_.begin(), registry.windows_.end()),
                            registry.windows_.end());
    for (std::size_t i = 1; i < registry.windows_.size(); ++i) {
        const auto& a = registry.windows_[i - 1];
        const auto& b = registry.windows_[i];
        if (a.product == b.product && a.exporter == b.exporter && a.importer == b.importer) {
            throw FormatError("conflicting duty windows for " + a.product + " " + a.exporter +
                              "->" + a.importer);
        }
    }
    for (const auto& w : registry.windows_) {
        if (touches_sample(w, sample)) {
            registry.ad_touched_.insert({w.product, w.exporter, w.importer});
        }
    }

    {
        CsvReader reader(label_file, ',');
        reader.expect_header({"hs_code", "exporter", "published"});
        while (auto row = reader.next_row()) {
            const std::size_t line = reader.line_number();
            if (row->size() != 3) {
                reject(line, "expected 3 fields");
                continue;
            }
            const auto& f = *row;
            if (!valid_hs_code(f[0]) || !is_valid_country_code(f[1])) {
                reject(line, "bad label key: \"" + f[0] + "," + f[1] + "\"");
                continue;
            }
            std::optional<YearMonth> published;
            if (!f[2].empty()) {
                published = YearMonth::parse(f[2]);
                if (!published) {
                    reject(line, "bad published date: \"" + f[2] + "\"");
                    continue;
                }
            }
            Hs6 hs6 = f[0].substr(0, 6);  // group 8-digit investigation codes
            auto key = std::make_pair(hs6, f[1]);
            auto [it, inserted] = registry.labels_.try_emplace(
                key, InvestigationLabel{hs6, f[1], true, published});
            if (!inserted && published) {
                // De-duplicated codes keep the earliest publication date.
                if (!it->second.published || *published < *it->second.published) {
                    it->second.published = published;
                }
            }
        }
    }

    return registry;
}

std::optional<DutyWindow> AdRegistry::window_for(const Hs6& product, const CountryCode& exporter,
                                                 const CountryCode& importer) const {
    for (const auto& w : windows_) {
        if (w.product == product && w.exporter == exporter && w.importer == importer) return w;
    }
    return std::nullopt;
}

bool AdRegistry::is_ad_free(const Hs6& product, const CountryCode& exporter,
                            const CountryCode& importer) const {
    return !ad_touched_.contains({product, exporter, importer});
}

InvestigationLabel AdRegistry::label_for(const Hs6& product, const CountryCode& exporter) const {
    auto it = labels_.find({product, exporter});
    if (it != labels_.end()) return it->second;
    return InvestigationLabel{product, exporter, false, std::nullopt};
}

std::vector<InvestigationLabel> AdRegistry::labels() const {
    std::vector<InvestigationLabel> out;
    out.reserve(labels_.size());
    for (const auto& [key, label] : labels_) out.push_back(label);
    return out;
}

std::vector<int> duty_dummy(const DutyWindow& window, std::span<const YearMonth> periods) {
    std::vector<int> out(periods.size(), 0);
    for (std::size_t i = 0; i < periods.size(); ++i) {
        if (window.imposed <= periods[i] && periods[i] <= window.withdrawn) out[i] = 1;
    }
    return out;
}

}  // namespace tradecirc
