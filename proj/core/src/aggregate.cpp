#include "roundtax/aggregate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "number_format.hpp"
#include "roundtax/errors.hpp"

namespace roundtax {

namespace {

double annual_tax(const TaxedProfile& store, double cash_share) {
    return store.tax_per_transaction *
           store.profile.annual_transactions_thousands * 1000.0 * cash_share;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

AggregateResult aggregate(const std::vector<TaxedProfile>& stores,
                          const CashShareScenario& scenario,
                          double total_revenue) {
    AggregateResult result;
    std::map<std::string, double> shares = scenario.shares;
    for (const auto& store : stores) {
        auto it = shares.find(store.profile.name);
        if (it == shares.end()) {
            throw std::invalid_argument("scenario has no cash share for store \"" +
                                        store.profile.name + "\"");
        }
        double share = it->second;
        if (!(share >= 0.0 && share <= 1.0)) {
            throw std::invalid_argument("cash share for store \"" + store.profile.name +
                                        "\" outside [0,1]: " + std::to_string(share));
        }
        double tax = annual_tax(store, share);
        result.per_store_tax.emplace(store.profile.name, tax);
        result.total_tax += tax;
        shares.erase(it);
    }
    if (!shares.empty()) {
        throw std::invalid_argument("scenario names unknown store \"" +
                                    shares.begin()->first + "\"");
    }
    if (total_revenue > 0.0) {
        result.share_of_revenue = result.total_tax / total_revenue;
    }
    return result;
}

ExtremalResult extremize_cash_shares(const std::vector<TaxedProfile>& stores,
                                     double overall,
                                     ExtremizeSense sense,
                                     ShareWeighting weighting,
                                     double total_revenue) {
    if (stores.empty()) {
        throw std::invalid_argument("no stores to extremize over");
    }
    if (!(overall >= 0.0 && overall <= 1.0)) {
        throw InfeasibleError("overall cash share outside [0,1]: " +
                              std::to_string(overall));
    }

    // w_s: each store's weight in the overall cash share. Revenue shares
    // already sum to 1; transaction weights need normalizing.
    std::vector<double> weights(stores.size());
    if (weighting == ShareWeighting::kRevenue) {
        for (std::size_t i = 0; i < stores.size(); ++i) {
            weights[i] = stores[i].profile.revenue_share;
        }
    } else {
        double total_txns = 0.0;
        for (const auto& store : stores) {
            total_txns += store.profile.annual_transactions_thousands;
        }
        if (total_txns <= 0.0) {
            throw std::invalid_argument("transaction weights are all zero");
        }
        for (std::size_t i = 0; i < stores.size(); ++i) {
            weights[i] = stores[i].profile.annual_transactions_thousands / total_txns;
        }
    }

    double weight_sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (overall > weight_sum + 1e-12) {
        throw InfeasibleError("overall cash share " + std::to_string(overall) +
                              " exceeds reachable maximum " + std::to_string(weight_sum));
    }

    // T_s: tax yield at full cash share. Objective sum(T_s c_s) under
    // sum(w_s c_s) = overall is a fractional knapsack: take stores in
    // yield-per-weight order, so the optimum has at most one interior c_s.
    std::vector<double> yields(stores.size());
    for (std::size_t i = 0; i < stores.size(); ++i) {
        yields[i] = annual_tax(stores[i], 1.0);
    }

    std::vector<double> shares(stores.size(), 0.0);

    // A weightless store does not consume budget, so its share is free:
    // pick whichever bound helps the objective.
    for (std::size_t i = 0; i < stores.size(); ++i) {
        if (weights[i] > 0.0) continue;
        bool take = sense == ExtremizeSense::kMaximize ? yields[i] > 0.0 : yields[i] < 0.0;
        shares[i] = take ? 1.0 : 0.0;
    }

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < stores.size(); ++i) {
        if (weights[i] > 0.0) order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        double ra = yields[a] / weights[a];
        double rb = yields[b] / weights[b];
        if (ra != rb) {
            return sense == ExtremizeSense::kMaximize ? ra > rb : ra < rb;
        }
        return stores[a].profile.name < stores[b].profile.name;
    });

    double budget = overall;
    for (std::size_t i : order) {
        if (budget <= 0.0) break;
        double take = std::min(weights[i], budget);
        shares[i] = take / weights[i];
        budget -= take;
    }

    double achieved = 0.0;
    for (std::size_t i = 0; i < stores.size(); ++i) {
        achieved += weights[i] * shares[i];
    }
    if (std::fabs(achieved - overall) > 1e-9) {
        throw std::logic_error("extremization missed the overall share constraint: " +
                               std::to_string(achieved) + " vs " + std::to_string(overall));
    }

    ExtremalResult result;
    result.scenario.label =
        sense == ExtremizeSense::kMaximize ? "max_total_tax" : "min_total_tax";
    for (std::size_t i = 0; i < stores.size(); ++i) {
        result.scenario.shares.emplace(stores[i].profile.name, shares[i]);
    }
    result.aggregate = aggregate(stores, result.scenario, total_revenue);
    return result;
}

ScenarioFileContents parse_scenario_text(std::istream& in, std::string_view source_name) {
    ScenarioFileContents contents;
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError(std::string(source_name) + ":" + std::to_string(line_no) +
                                  ": expected store=share, got \"" + std::string(s) + "\"");
        }
        std::string key(trim(s.substr(0, eq)));
        std::string_view value = trim(s.substr(eq + 1));
        double share = 0.0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), share);
        if (ec != std::errc() || ptr != value.data() + value.size()) {
            throw ValidationError(std::string(source_name) + ":" + std::to_string(line_no) +
                                  ": bad share: \"" + std::string(value) + "\"");
        }
        if (key == "overall") {
            if (contents.overall) {
                throw ValidationError(std::string(source_name) + ":" +
                                      std::to_string(line_no) + ": overall= listed twice");
            }
            contents.overall = share;
        } else {
            if (key.empty()) {
                throw ValidationError(std::string(source_name) + ":" +
                                      std::to_string(line_no) + ": empty store name");
            }
            if (!contents.shares.emplace(key, share).second) {
                throw ValidationError(std::string(source_name) + ":" +
                                      std::to_string(line_no) + ": store \"" + key +
                                      "\" listed twice");
            }
        }
    }
    return contents;
}

std::string format_scenario(const CashShareScenario& scenario) {
    std::string out;
    if (!scenario.label.empty()) {
        out += "# " + scenario.label + "\n";
    }
    for (const auto& [store, share] : scenario.shares) {
        out += store + "=" + detail::shortest_double(share) + "\n";
    }
    return out;
}

}  // namespace roundtax
