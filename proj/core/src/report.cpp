#include "roundtax/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "csv_util.hpp"
#include "number_format.hpp"
#include "roundtax/errors.hpp"

namespace roundtax {

using detail::shortest_double;

DerivedMetrics derived_metrics(double total_tax, const ReportContext& ctx) {
    if (!(ctx.total_revenue > 0.0)) {
        throw std::invalid_argument("total revenue must be positive");
    }
    if (!(ctx.population > 0.0)) {
        throw std::invalid_argument("population must be positive");
    }
    if (!(ctx.exchange_rate > 0.0)) {
        throw std::invalid_argument("exchange rate must be positive");
    }
    DerivedMetrics m;
    m.per_capita_nis = total_tax / ctx.population;
    m.per_capita_cents = m.per_capita_nis / ctx.exchange_rate * 100.0;
    m.share_of_revenue = total_tax / ctx.total_revenue;
    return m;
}

Report build_report(std::vector<TaxedProfile> stores,
                    std::string rule_label,
                    const ReportOptions& options,
                    const ReportContext& context) {
    Report report;
    report.context = context;
    report.options = options;
    report.rule_label = std::move(rule_label);

    CashShareScenario equal;
    equal.label = "equal_shares";
    for (const auto& store : stores) {
        equal.shares.emplace(store.profile.name, options.overall_cash_share);
    }
    report.equal_case = aggregate(stores, equal, context.total_revenue);
    report.max_case = extremize_cash_shares(stores, options.overall_cash_share,
                                            ExtremizeSense::kMaximize, options.weighting,
                                            context.total_revenue);
    report.min_case = extremize_cash_shares(stores, options.overall_cash_share,
                                            ExtremizeSense::kMinimize, options.weighting,
                                            context.total_revenue);
    report.equal_metrics = derived_metrics(report.equal_case.total_tax, context);
    report.max_metrics = derived_metrics(report.max_case.aggregate.total_tax, context);
    report.min_metrics = derived_metrics(report.min_case.aggregate.total_tax, context);
    report.stores = std::move(stores);
    return report;
}

std::string format_money(double nis) {
    long long whole = std::llround(nis);
    bool negative = whole < 0;
    unsigned long long magnitude = negative
        ? ~static_cast<unsigned long long>(whole) + 1
        : static_cast<unsigned long long>(whole);
    std::string digits = std::to_string(magnitude);
    std::string grouped;
    int emitted = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (emitted && emitted % 3 == 0) grouped += ',';
        grouped += *it;
        ++emitted;
    }
    if (negative) grouped += '-';
    std::reverse(grouped.begin(), grouped.end());
    return grouped;
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

std::string format_full(double value) {
    return shortest_double(value);
}

namespace {

std::string percent(double fraction, int decimals) {
    return format_fixed(fraction * 100.0, decimals) + "%";
}

// Right-pads with spaces to `width`; cells never exceed their column.
void append_cell(std::string& out, const std::string& cell, std::size_t width,
                 bool right_align) {
    std::string padding(width - cell.size(), ' ');
    if (right_align) {
        out += padding + cell;
    } else {
        out += cell + padding;
    }
}

std::string scenario_share_line(const Report& report, const CashShareScenario& scenario) {
    std::string line;
    // Walk stores in report order so the line matches the table above it.
    for (const auto& store : report.stores) {
        if (!line.empty()) line += ", ";
        line += store.profile.name + "=" +
                percent(scenario.shares.at(store.profile.name), 2);
    }
    return line;
}

}  // namespace

std::string render_report_text(const Report& report) {
    std::string weighting_label =
        report.options.weighting == ShareWeighting::kRevenue ? "revenue" : "transaction";

    std::string out;
    out += "Annual cash rounding charge (NIS)\n";
    out += "Rule: " + report.rule_label + "\n";
    out += "Overall cash share: " + percent(report.options.overall_cash_share, 2) +
           ", " + weighting_label + " weights\n\n";

    const std::array<std::string, 7> header = {
        "Store", "Tax/txn", "Txns (k)", "Rev share", "Equal shares", "Max", "Min"};
    std::vector<std::array<std::string, 7>> rows;
    for (const auto& store : report.stores) {
        const std::string& name = store.profile.name;
        rows.push_back({
            name,
            format_fixed(store.tax_per_transaction, 4),
            format_money(store.profile.annual_transactions_thousands),
            percent(store.profile.revenue_share, 2),
            format_money(report.equal_case.per_store_tax.at(name)),
            format_money(report.max_case.aggregate.per_store_tax.at(name)),
            format_money(report.min_case.aggregate.per_store_tax.at(name)),
        });
    }
    rows.push_back({
        "Total", "", "", "",
        format_money(report.equal_case.total_tax),
        format_money(report.max_case.aggregate.total_tax),
        format_money(report.min_case.aggregate.total_tax),
    });

    std::array<std::size_t, 7> widths;
    for (std::size_t c = 0; c < widths.size(); ++c) {
        widths[c] = header[c].size();
        for (const auto& row : rows) widths[c] = std::max(widths[c], row[c].size());
    }
    auto emit_row = [&](const std::array<std::string, 7>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += "  ";
            append_cell(out, row[c], widths[c], c != 0);
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += '\n';
    };
    emit_row(header);
    for (const auto& row : rows) emit_row(row);

    out += "\nCash shares, max case: " +
           scenario_share_line(report, report.max_case.scenario) + "\n";
    out += "Cash shares, min case: " +
           scenario_share_line(report, report.min_case.scenario) + "\n";

    if (report.options.per_capita) {
        out += "\nPer person (population " + format_money(report.context.population) +
               ", " + format_fixed(report.context.exchange_rate, 4) + " NIS/USD):\n";
        auto line = [&](const char* label, const DerivedMetrics& m) {
            out += std::string("  ") + label +
                   format_fixed(m.per_capita_nis, 4) + " NIS = " +
                   format_fixed(m.per_capita_cents, 2) + " US cents\n";
        };
        line("equal shares: ", report.equal_metrics);
        line("max:          ", report.max_metrics);
        line("min:          ", report.min_metrics);
    }
    if (report.options.share_of_revenue) {
        out += "\nShare of annual revenue (NIS " +
               format_money(report.context.total_revenue) + "):\n";
        auto line = [&](const char* label, const DerivedMetrics& m) {
            out += std::string("  ") + label + percent(m.share_of_revenue, 6) + "\n";
        };
        line("equal shares: ", report.equal_metrics);
        line("max:          ", report.max_metrics);
        line("min:          ", report.min_metrics);
    }
    return out;
}

std::string render_report_key_values(const Report& report) {
    std::string out;
    auto kv = [&](const std::string& key, const std::string& value) {
        out += key + "=" + value + "\n";
    };
    auto kvd = [&](const std::string& key, double value) {
        kv(key, shortest_double(value));
    };

    kv("rule", report.rule_label);
    kv("weighting", report.options.weighting == ShareWeighting::kRevenue
                        ? "revenue" : "transactions");
    kvd("overall_cash_share", report.options.overall_cash_share);
    kvd("context.total_revenue", report.context.total_revenue);
    kvd("context.population", report.context.population);
    kvd("context.exchange_rate", report.context.exchange_rate);

    for (const auto& store : report.stores) {
        const std::string& name = store.profile.name;
        kvd(name + ".tax_per_txn", store.tax_per_transaction);
        kvd(name + ".revenue_share", store.profile.revenue_share);
        kvd(name + ".annual_transactions_thousands",
            store.profile.annual_transactions_thousands);
        kvd(name + ".equal_share", report.options.overall_cash_share);
        kvd(name + ".equal_tax", report.equal_case.per_store_tax.at(name));
        kvd(name + ".max_share", report.max_case.scenario.shares.at(name));
        kvd(name + ".max_tax", report.max_case.aggregate.per_store_tax.at(name));
        kvd(name + ".min_share", report.min_case.scenario.shares.at(name));
        kvd(name + ".min_tax", report.min_case.aggregate.per_store_tax.at(name));
    }
    kvd("total.equal_tax", report.equal_case.total_tax);
    kvd("total.max_tax", report.max_case.aggregate.total_tax);
    kvd("total.min_tax", report.min_case.aggregate.total_tax);

    if (report.options.per_capita) {
        kvd("derived.equal.per_capita_nis", report.equal_metrics.per_capita_nis);
        kvd("derived.equal.per_capita_cents", report.equal_metrics.per_capita_cents);
        kvd("derived.max.per_capita_nis", report.max_metrics.per_capita_nis);
        kvd("derived.max.per_capita_cents", report.max_metrics.per_capita_cents);
        kvd("derived.min.per_capita_nis", report.min_metrics.per_capita_nis);
        kvd("derived.min.per_capita_cents", report.min_metrics.per_capita_cents);
    }
    if (report.options.share_of_revenue) {
        kvd("derived.equal.share_of_revenue", report.equal_metrics.share_of_revenue);
        kvd("derived.max.share_of_revenue", report.max_metrics.share_of_revenue);
        kvd("derived.min.share_of_revenue", report.min_metrics.share_of_revenue);
    }
    return out;
}

std::vector<std::pair<std::string, double>>
load_taxes_csv(std::istream& in, std::string_view source_name) {
    detail::expect_csv_header(in, "store,tax_nis", source_name);
    std::vector<std::pair<std::string, double>> rows;
    std::set<std::string> seen;
    std::string line;
    for (std::size_t line_no = 2; detail::next_csv_line(in, line); ++line_no) {
        if (line.empty()) continue;
        auto fields = detail::split_csv_row(line);
        if (fields.size() != 2) {
            detail::row_error(source_name, line_no,
                              "expected 2 fields, got " + std::to_string(fields.size()));
        }
        std::string store = detail::checked_store_name(fields[0], source_name, line_no);
        if (!seen.insert(store).second) {
            detail::row_error(source_name, line_no, "duplicate store \"" + store + "\"");
        }
        double tax = detail::parse_double_field(fields[1], source_name, line_no);
        if (!std::isfinite(tax)) {
            detail::row_error(source_name, line_no, "tax is not finite: " + fields[1]);
        }
        rows.emplace_back(std::move(store), tax);
    }
    if (rows.empty()) {
        throw ValidationError(std::string(source_name) + ": no data rows");
    }
    return rows;
}

}  // namespace roundtax
