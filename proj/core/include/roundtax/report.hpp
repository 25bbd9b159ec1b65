#ifndef ROUNDTAX_REPORT_HPP
#define ROUNDTAX_REPORT_HPP

#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "roundtax/aggregate.hpp"

namespace roundtax {

// Economy-wide constants the derived metrics are measured against.
// Defaults are the 2013 Israel figures the shipped dataset refers to.
struct ReportContext {
    double total_revenue = 40.8e9;  // NIS/year, FMCG
    double population = 8.1e6;
    double exchange_rate = 3.6097;  // NIS per USD
};

struct DerivedMetrics {
    double per_capita_nis = 0.0;
    double per_capita_cents = 0.0;   // US cents
    double share_of_revenue = 0.0;   // fraction, not percent
};

// All context fields must be strictly positive.
DerivedMetrics derived_metrics(double total_tax, const ReportContext& ctx);

struct ReportOptions {
    double overall_cash_share = 0.25;
    ShareWeighting weighting = ShareWeighting::kRevenue;
    bool per_capita = false;
    bool share_of_revenue = false;
};

// One full what-if run: the equal-shares baseline plus both extremal
// scenarios, with derived metrics for each total. Human and machine
// renderings read from this one struct so they cannot diverge.
struct Report {
    std::vector<TaxedProfile> stores;
    ReportContext context;
    ReportOptions options;
    std::string rule_label;
    AggregateResult equal_case;
    ExtremalResult max_case;
    ExtremalResult min_case;
    DerivedMetrics equal_metrics;
    DerivedMetrics max_metrics;
    DerivedMetrics min_metrics;
};

Report build_report(std::vector<TaxedProfile> stores,
                    std::string rule_label,
                    const ReportOptions& options,
                    const ReportContext& context);

std::string render_report_text(const Report& report);

// Flat `key=value` document, one entry per line, full precision. Keys are
// namespaced per store (`small_grocery.max_tax`) with totals under
// `total.` and derived metrics under `derived.<case>.`.
std::string render_report_key_values(const Report& report);

// Reads `store,tax_nis` rows: externally supplied per-transaction taxes
// that substitute for the exact engine's values.
std::vector<std::pair<std::string, double>>
load_taxes_csv(std::istream& in, std::string_view source_name);

// Whole NIS with thousands separators, rounded half away from zero.
std::string format_money(double nis);

std::string format_fixed(double value, int decimals);

// Shortest decimal string that parses back to the same double; the
// machine-readable outputs use this so no precision is lost in transit.
std::string format_full(double value);

}  // namespace roundtax

#endif
