#include "roundtax/aggregate.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "roundtax/errors.hpp"

using namespace roundtax;

namespace {

TaxedProfile store(const std::string& name, double tax_per_txn, double txns_thousands,
                   double revenue_share) {
    StoreProfile profile{name,
                         EndingDistribution::point_mass(9),
                         BasketSizeDistribution::point_mass(1),
                         revenue_share,
                         txns_thousands,
                         1.0};
    return TaxedProfile{std::move(profile), tax_per_txn};
}

// The shipped 2013 dataset's headline inputs.
std::vector<TaxedProfile> israel_stores() {
    return {
        store("supermarkets_drugstores", 0.0075, 188856.0, 0.838),
        store("small_grocery", 0.0058, 98822.0, 0.153),
        store("convenience", 0.0048, 7856.0, 0.008),
    };
}

CashShareScenario equal_shares(const std::vector<TaxedProfile>& stores, double share) {
    CashShareScenario scenario;
    scenario.label = "equal";
    for (const auto& s : stores) scenario.shares.emplace(s.profile.name, share);
    return scenario;
}

}  // namespace

TEST_CASE("aggregation is tax times volume times cash share") {
    auto stores = israel_stores();
    auto result = aggregate(stores, equal_shares(stores, 0.25));
    CHECK(result.per_store_tax.at("supermarkets_drugstores") ==
          doctest::Approx(0.0075 * 188856000.0 * 0.25).epsilon(1e-12));
    CHECK(result.per_store_tax.at("small_grocery") ==
          doctest::Approx(0.0058 * 98822000.0 * 0.25).epsilon(1e-12));
    CHECK(result.per_store_tax.at("convenience") ==
          doctest::Approx(0.0048 * 7856000.0 * 0.25).epsilon(1e-12));

    // Summed in store order, matching the accumulation inside aggregate,
    // so exact equality is the right check.
    double sum = 0.0;
    for (const auto& s : stores) sum += result.per_store_tax.at(s.profile.name);
    CHECK(result.total_tax == sum);
    CHECK_FALSE(result.share_of_revenue.has_value());
}

TEST_CASE("zero cash share means zero charge") {
    auto stores = israel_stores();
    auto result = aggregate(stores, equal_shares(stores, 0.0));
    CHECK(result.total_tax == 0.0);
}

TEST_CASE("share of revenue appears only when revenue is supplied") {
    auto stores = israel_stores();
    auto result = aggregate(stores, equal_shares(stores, 0.25), 40.8e9);
    REQUIRE(result.share_of_revenue.has_value());
    CHECK(*result.share_of_revenue ==
          doctest::Approx(result.total_tax / 40.8e9).epsilon(1e-12));
}

TEST_CASE("scenarios must name every store exactly once") {
    auto stores = israel_stores();

    auto missing = equal_shares(stores, 0.25);
    missing.shares.erase("convenience");
    CHECK_THROWS_AS(aggregate(stores, missing), std::invalid_argument);

    auto extra = equal_shares(stores, 0.25);
    extra.shares.emplace("kiosk", 0.5);
    CHECK_THROWS_AS(aggregate(stores, extra), std::invalid_argument);

    auto out_of_range = equal_shares(stores, 0.25);
    out_of_range.shares["convenience"] = 1.5;
    CHECK_THROWS_AS(aggregate(stores, out_of_range), std::invalid_argument);
}

TEST_CASE("maximizing shifts cash toward the highest yield per revenue point") {
    auto stores = israel_stores();
    auto result = extremize_cash_shares(stores, 0.25, ExtremizeSense::kMaximize);

    // Yield per revenue point orders convenience > small grocery >
    // supermarkets, so the small categories saturate first.
    CHECK(result.scenario.shares.at("convenience") == 1.0);
    CHECK(result.scenario.shares.at("small_grocery") == 1.0);
    CHECK(result.scenario.shares.at("supermarkets_drugstores") ==
          doctest::Approx((0.25 - 0.153 - 0.008) / 0.838).epsilon(1e-12));
    CHECK(result.aggregate.total_tax == doctest::Approx(761307.641).epsilon(1e-8));
}

TEST_CASE("minimizing parks all cash at the lowest yield per revenue point") {
    auto stores = israel_stores();
    auto result = extremize_cash_shares(stores, 0.25, ExtremizeSense::kMinimize);
    CHECK(result.scenario.shares.at("convenience") == 0.0);
    CHECK(result.scenario.shares.at("small_grocery") == 0.0);
    CHECK(result.scenario.shares.at("supermarkets_drugstores") ==
          doctest::Approx(0.25 / 0.838).epsilon(1e-12));
    CHECK(result.aggregate.total_tax == doctest::Approx(422559.666).epsilon(1e-8));
}

TEST_CASE("extremal scenarios satisfy the overall constraint") {
    auto stores = israel_stores();
    for (auto sense : {ExtremizeSense::kMaximize, ExtremizeSense::kMinimize}) {
        auto result = extremize_cash_shares(stores, 0.25, sense);
        double achieved = 0.0;
        int interior = 0;
        for (const auto& s : stores) {
            double share = result.scenario.shares.at(s.profile.name);
            achieved += s.profile.revenue_share * share;
            if (share > 1e-9 && share < 1.0 - 1e-9) ++interior;
        }
        CHECK(std::fabs(achieved - 0.25) <= 1e-9);
        CHECK(interior <= 1);
    }
}

TEST_CASE("corner targets force corner scenarios") {
    // Weights 0.5/0.25/0.25 are exact in binary, so the corners are too.
    std::vector<TaxedProfile> stores{
        store("a", 0.005, 1000.0, 0.5),
        store("b", 0.003, 2000.0, 0.25),
        store("c", 0.001, 3000.0, 0.25),
    };
    for (auto sense : {ExtremizeSense::kMaximize, ExtremizeSense::kMinimize}) {
        auto all_cash = extremize_cash_shares(stores, 1.0, sense);
        auto no_cash = extremize_cash_shares(stores, 0.0, sense);
        for (const auto& s : stores) {
            CHECK(all_cash.scenario.shares.at(s.profile.name) == 1.0);
            CHECK(no_cash.scenario.shares.at(s.profile.name) == 0.0);
        }
    }
}

TEST_CASE("unreachable overall shares are infeasible") {
    auto stores = israel_stores();
    CHECK_THROWS_AS(extremize_cash_shares(stores, 1.5, ExtremizeSense::kMaximize),
                    InfeasibleError);
    CHECK_THROWS_AS(extremize_cash_shares(stores, -0.1, ExtremizeSense::kMaximize),
                    InfeasibleError);
    // Weights sum to 0.999: a target of 0.9999 cannot be averaged to.
    CHECK_THROWS_AS(extremize_cash_shares(stores, 0.9999, ExtremizeSense::kMaximize),
                    InfeasibleError);
}

TEST_CASE("the maximal charge is monotone in the overall share") {
    auto stores = israel_stores();
    auto at_25 = extremize_cash_shares(stores, 0.25, ExtremizeSense::kMaximize);
    auto at_30 = extremize_cash_shares(stores, 0.30, ExtremizeSense::kMaximize);
    CHECK(at_25.aggregate.total_tax <= at_30.aggregate.total_tax);
}

TEST_CASE("min, equal and max totals are ordered") {
    auto stores = israel_stores();
    auto equal = aggregate(stores, equal_shares(stores, 0.25));
    auto max_case = extremize_cash_shares(stores, 0.25, ExtremizeSense::kMaximize);
    auto min_case = extremize_cash_shares(stores, 0.25, ExtremizeSense::kMinimize);
    CHECK(min_case.aggregate.total_tax <= equal.total_tax);
    CHECK(equal.total_tax <= max_case.aggregate.total_tax);
}

TEST_CASE("transaction weighting changes the constraint arithmetic") {
    std::vector<TaxedProfile> stores{
        store("big", 0.01, 900.0, 0.5),
        store("small", 0.001, 100.0, 0.5),
    };
    // Transaction weights are 0.9/0.1 and big has the better yield per
    // weight point, so the whole 0.5 budget is spent inside big.
    auto result = extremize_cash_shares(stores, 0.5, ExtremizeSense::kMaximize,
                                        ShareWeighting::kTransactions);
    CHECK(result.scenario.shares.at("big") == doctest::Approx(0.5 / 0.9).epsilon(1e-12));
    CHECK(result.scenario.shares.at("small") == 0.0);

    // Revenue weights treat them equally heavy, so the better yield
    // saturates and the other store stays at zero.
    auto by_revenue = extremize_cash_shares(stores, 0.5, ExtremizeSense::kMaximize,
                                            ShareWeighting::kRevenue);
    CHECK(by_revenue.scenario.shares.at("big") == 1.0);
    CHECK(by_revenue.scenario.shares.at("small") == 0.0);
}

TEST_CASE("equal yield ratios break ties by store name") {
    std::vector<TaxedProfile> stores{
        store("zeta", 0.005, 1000.0, 0.5),
        store("alpha", 0.005, 1000.0, 0.5),
    };
    auto result = extremize_cash_shares(stores, 0.5, ExtremizeSense::kMaximize);
    CHECK(result.scenario.shares.at("alpha") == 1.0);
    CHECK(result.scenario.shares.at("zeta") == 0.0);
}

TEST_CASE("weightless stores get the free share that helps the objective") {
    std::vector<TaxedProfile> stores{
        store("priced", 0.005, 1000.0, 1.0),
        store("free", 0.005, 1000.0, 0.0),
    };
    auto max_case = extremize_cash_shares(stores, 0.5, ExtremizeSense::kMaximize);
    CHECK(max_case.scenario.shares.at("free") == 1.0);
    auto min_case = extremize_cash_shares(stores, 0.5, ExtremizeSense::kMinimize);
    CHECK(min_case.scenario.shares.at("free") == 0.0);
}

TEST_CASE("greedy optimum matches grid search on random 3-store instances") {
    std::mt19937 rng(57721566);
    std::uniform_real_distribution<double> tax_dist(0.001, 0.01);
    std::uniform_real_distribution<double> txns_dist(1000.0, 200000.0);
    std::uniform_real_distribution<double> weight_dist(0.05, 1.0);
    std::uniform_real_distribution<double> overall_dist(0.05, 0.95);

    for (int trial = 0; trial < 10; ++trial) {
        double w0 = weight_dist(rng), w1 = weight_dist(rng), w2 = weight_dist(rng);
        double wsum = w0 + w1 + w2;
        std::vector<TaxedProfile> stores{
            store("s0", tax_dist(rng), txns_dist(rng), w0 / wsum),
            store("s1", tax_dist(rng), txns_dist(rng), w1 / wsum),
            store("s2", tax_dist(rng), txns_dist(rng), w2 / wsum),
        };
        double overall = overall_dist(rng);
        auto sense = trial % 2 == 0 ? ExtremizeSense::kMaximize : ExtremizeSense::kMinimize;
        auto result = extremize_cash_shares(stores, overall, sense);

        double t0 = stores[0].tax_per_transaction *
                    stores[0].profile.annual_transactions_thousands * 1000.0;
        double t1 = stores[1].tax_per_transaction *
                    stores[1].profile.annual_transactions_thousands * 1000.0;
        double t2 = stores[2].tax_per_transaction *
                    stores[2].profile.annual_transactions_thousands * 1000.0;
        double v0 = stores[0].profile.revenue_share;
        double v1 = stores[1].profile.revenue_share;
        double v2 = stores[2].profile.revenue_share;

        const double step = 1e-2;
        double best = sense == ExtremizeSense::kMaximize ? -1e300 : 1e300;
        for (double c0 = 0.0; c0 <= 1.0 + 1e-12; c0 += step) {
            for (double c1 = 0.0; c1 <= 1.0 + 1e-12; c1 += step) {
                double c2 = (overall - v0 * c0 - v1 * c1) / v2;
                if (c2 < 0.0 || c2 > 1.0) continue;
                double objective = t0 * c0 + t1 * c1 + t2 * c2;
                if (sense == ExtremizeSense::kMaximize) {
                    best = std::max(best, objective);
                } else {
                    best = std::min(best, objective);
                }
            }
        }
        // One grid step can move the objective by at most `bound`. The
        // other side only allows for evaluation noise, which scales with
        // the objective's magnitude (here around 1e6 NIS).
        double bound = step * (std::fabs(t0) + std::fabs(t1) +
                               std::fabs(t2) * (v0 + v1) / v2);
        double noise = 1e-9 * (1.0 + std::fabs(best));
        if (sense == ExtremizeSense::kMaximize) {
            CHECK(result.aggregate.total_tax >= best - noise);
            CHECK(result.aggregate.total_tax <= best + bound);
        } else {
            CHECK(result.aggregate.total_tax <= best + noise);
            CHECK(result.aggregate.total_tax >= best - bound);
        }
    }
}

TEST_CASE("scenario files parse shares, overall and comments") {
    std::istringstream in(
        "# cash shares\n"
        "\n"
        "supermarkets_drugstores=0.25\n"
        "small_grocery = 0.5\n"
        "overall=0.25\n");
    auto contents = parse_scenario_text(in, "scenario.txt");
    CHECK(contents.shares.size() == 2);
    CHECK(contents.shares.at("supermarkets_drugstores") == 0.25);
    CHECK(contents.shares.at("small_grocery") == 0.5);
    REQUIRE(contents.overall.has_value());
    CHECK(*contents.overall == 0.25);
}

TEST_CASE("scenario files reject malformed lines with their line number") {
    auto expect_error = [](const char* text, const char* needle) {
        std::istringstream in(text);
        try {
            parse_scenario_text(in, "scenario.txt");
            FAIL_CHECK("expected ValidationError for: " << text);
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error("alpha 0.25\n", "scenario.txt:1");
    expect_error("alpha=x\n", "bad share");
    expect_error("alpha=0.25\nalpha=0.5\n", "scenario.txt:2");
    expect_error("overall=0.25\noverall=0.5\n", "twice");
    expect_error("=0.25\n", "empty store name");
}

TEST_CASE("scenario formatting round-trips through the parser") {
    CashShareScenario scenario;
    scenario.label = "mixed";
    scenario.shares = {{"alpha", 1.0 / 3.0}, {"beta", 0.125}};
    std::istringstream in(format_scenario(scenario));
    auto contents = parse_scenario_text(in, "roundtrip");
    CHECK(contents.shares == scenario.shares);
    CHECK_FALSE(contents.overall.has_value());
}
