#ifndef ROUNDTAX_AGGREGATE_HPP
#define ROUNDTAX_AGGREGATE_HPP

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "roundtax/distributions.hpp"

namespace roundtax {

// Fraction of transactions paid in cash, per store category.
struct CashShareScenario {
    std::string label;
    std::map<std::string, double> shares;
};

// A store profile together with its expected rounding charge per cash
// transaction, however that number was obtained (exact engine, Monte
// Carlo, or an external estimate).
struct TaxedProfile {
    StoreProfile profile;
    double tax_per_transaction = 0.0;  // NIS
};

struct AggregateResult {
    std::map<std::string, double> per_store_tax;  // NIS per year
    double total_tax = 0.0;                       // NIS per year
    // Only present when the caller supplies total revenue, as a fraction.
    std::optional<double> share_of_revenue;
};

enum class ShareWeighting { kRevenue, kTransactions };
enum class ExtremizeSense { kMaximize, kMinimize };

// Annual economy-wide rounding charge under a given cash share per store:
// per-store tax = tax/txn * annual transactions * cash share. The
// scenario must name exactly the given stores.
AggregateResult aggregate(const std::vector<TaxedProfile>& stores,
                          const CashShareScenario& scenario,
                          double total_revenue = 0.0);

struct ExtremalResult {
    CashShareScenario scenario;  // the extremizing cash shares
    AggregateResult aggregate;
};

// Extremize total tax over per-store cash shares c_s in [0,1] subject to
// the weighted mean sum(w_s c_s) equalling `overall`. Weights are revenue
// shares or transaction shares. The optimum is bang-bang: shares are 0 or
// 1 except at most one store, greedily by tax yield per unit of weight.
// An overall share no weighting can reach throws InfeasibleError.
ExtremalResult extremize_cash_shares(const std::vector<TaxedProfile>& stores,
                                     double overall,
                                     ExtremizeSense sense,
                                     ShareWeighting weighting = ShareWeighting::kRevenue,
                                     double total_revenue = 0.0);

// A scenario file is `store=share` lines, optionally one `overall=` line,
// with #-comments and blank lines ignored.
struct ScenarioFileContents {
    std::map<std::string, double> shares;
    std::optional<double> overall;
};

ScenarioFileContents parse_scenario_text(std::istream& in, std::string_view source_name);

std::string format_scenario(const CashShareScenario& scenario);

}  // namespace roundtax

#endif
