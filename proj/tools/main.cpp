// Command-line front end for the cash rounding toolkit.
//
// Subcommands: expect (exact per-transaction charge), simulate (Monte
// Carlo), aggregate (economy-wide total under a cash-share scenario),
// extremize (best/worst case over cash shares), report (all of the
// above in one Table-style summary).
//
// Exit codes: 0 success, 2 bad input or file format, 3 infeasible
// scenario, 4 internal invariant breach.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "roundtax/aggregate.hpp"
#include "roundtax/distributions.hpp"
#include "roundtax/errors.hpp"
#include "roundtax/expectation.hpp"
#include "roundtax/report.hpp"
#include "roundtax/simulation.hpp"

namespace {

using namespace roundtax;

// Everything is computed before anything is printed, so a failure never
// leaves partial output behind. stdout gets the human text; --out gets
// the machine key=value document.
struct Rendered {
    std::string human;
    std::string machine;
};

void deliver(const Rendered& rendered, const std::string& out_path) {
    std::cout << rendered.human;
    if (out_path.empty()) return;
    std::ofstream out(out_path);
    if (!out) {
        throw ValidationError("cannot open " + out_path + " for writing");
    }
    out << rendered.machine;
    out.flush();
    if (!out) {
        throw ValidationError("failed writing " + out_path);
    }
}

std::string read_scenario_label(const std::string& path) {
    auto slash = path.find_last_of('/');
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

ScenarioFileContents load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open " + path);
    }
    return parse_scenario_text(in, path);
}

// Joins profiles with per-transaction taxes: the exact engine's values,
// unless a taxes CSV supplies externally estimated ones.
std::vector<TaxedProfile> load_taxed_profiles(const std::string& profiles_dir,
                                              const std::string& taxes_path,
                                              const RoundingRule& rule) {
    auto profiles = load_store_profiles(profiles_dir);
    std::vector<TaxedProfile> stores;
    stores.reserve(profiles.size());
    if (taxes_path.empty()) {
        for (auto& profile : profiles) {
            double tax = expected_tax_per_transaction(profile, rule);
            stores.push_back({std::move(profile), tax});
        }
        return stores;
    }
    std::ifstream in(taxes_path);
    if (!in) {
        throw ValidationError("cannot open " + taxes_path);
    }
    auto taxes = load_taxes_csv(in, taxes_path);
    std::map<std::string, double> tax_by_store(taxes.begin(), taxes.end());
    for (auto& profile : profiles) {
        auto it = tax_by_store.find(profile.name);
        if (it == tax_by_store.end()) {
            throw ValidationError("store \"" + profile.name + "\" missing from " +
                                  taxes_path);
        }
        stores.push_back({std::move(profile), it->second});
        tax_by_store.erase(it);
    }
    if (!tax_by_store.empty()) {
        throw ValidationError("store \"" + tax_by_store.begin()->first + "\" in " +
                              taxes_path + " has no profile");
    }
    return stores;
}

ShareWeighting parse_weighting(const std::string& text) {
    if (text == "revenue") return ShareWeighting::kRevenue;
    if (text == "transactions") return ShareWeighting::kTransactions;
    throw ValidationError("weights must be \"revenue\" or \"transactions\", got \"" +
                          text + "\"");
}

std::string percent(double fraction, int decimals) {
    return format_fixed(fraction * 100.0, decimals) + "%";
}

Rendered run_expect(const std::string& profiles_dir, const std::string& rule_text) {
    auto rule = RoundingRule::parse(rule_text);
    auto profiles = load_store_profiles(profiles_dir);

    Rendered r;
    r.human = "Expected rounding charge per cash transaction (NIS)\n"
              "Rule: " + rule.format() + "\n\n";
    r.machine = "rule=" + rule.format() + "\n";
    std::size_t name_width = 0;
    for (const auto& profile : profiles) {
        name_width = std::max(name_width, profile.name.size());
    }
    for (const auto& profile : profiles) {
        double tax = expected_tax_per_transaction(profile, rule);
        r.human += profile.name + std::string(name_width - profile.name.size() + 2, ' ') +
                   format_fixed(tax, 4) + "\n";
        r.machine += profile.name + ".tax_per_txn=" + format_full(tax) + "\n";
    }
    return r;
}

Rendered run_simulate(const std::string& profiles_dir, const std::string& rule_text,
                      std::int64_t n, std::uint64_t seed, const std::string& only_store,
                      const std::string& dump_path) {
    auto rule = RoundingRule::parse(rule_text);
    auto profiles = load_store_profiles(profiles_dir);
    if (!only_store.empty()) {
        std::erase_if(profiles, [&](const StoreProfile& p) { return p.name != only_store; });
        if (profiles.empty()) {
            throw ValidationError("store \"" + only_store + "\" not found in " +
                                  profiles_dir);
        }
    }

    SimulationConfig config;
    config.n_transactions = n;
    config.seed = seed;
    config.rule = rule;
    config.record_transactions = !dump_path.empty();

    Rendered r;
    r.human = "Simulated rounding charge per cash transaction (NIS)\n"
              "Rule: " + rule.format() + "\n"
              "Transactions: " + std::to_string(n) + ", seed: " + std::to_string(seed) +
              "\n\n";
    r.machine = "rule=" + rule.format() + "\n"
                "n=" + std::to_string(n) + "\n"
                "seed=" + std::to_string(seed) + "\n";
    std::size_t name_width = 0;
    for (const auto& profile : profiles) {
        name_width = std::max(name_width, profile.name.size());
    }
    std::string dump;
    for (const auto& profile : profiles) {
        auto result = simulate(profile, config);
        r.human += profile.name + std::string(name_width - profile.name.size() + 2, ' ') +
                   "mean " + format_fixed(result.mean_tax, 4) +
                   "  se " + format_fixed(result.std_error, 4) + "\n";
        r.machine += profile.name + ".mean_tax=" + format_full(result.mean_tax) + "\n" +
                     profile.name + ".std_error=" + format_full(result.std_error) + "\n";
        if (config.record_transactions) {
            dump = "txn_index,basket_size,residue,delta_agorot\n";
            for (const auto& txn : result.transactions) {
                dump += std::to_string(txn.index) + ',' +
                        std::to_string(txn.basket_size) + ',' +
                        std::to_string(txn.residue) + ',' +
                        std::to_string(txn.delta_agorot) + '\n';
            }
        }
    }
    if (!dump_path.empty()) {
        std::ofstream out(dump_path);
        if (!out) {
            throw ValidationError("cannot open " + dump_path + " for writing");
        }
        out << dump;
        out.flush();
        if (!out) {
            throw ValidationError("failed writing " + dump_path);
        }
    }
    return r;
}

// Shared table body for aggregate and extremize output.
void render_aggregate(Rendered& r, const std::vector<TaxedProfile>& stores,
                      const CashShareScenario& scenario, const AggregateResult& result) {
    std::size_t name_width = 5;  // "Total"
    for (const auto& store : stores) {
        name_width = std::max(name_width, store.profile.name.size());
    }
    const std::size_t share_width = 7;  // "100.00%"
    for (const auto& store : stores) {
        const std::string& name = store.profile.name;
        std::string share = percent(scenario.shares.at(name), 2);
        r.human += name + std::string(name_width - name.size() + 2, ' ') +
                   std::string(share_width - share.size(), ' ') + share + "  " +
                   format_money(result.per_store_tax.at(name)) + "\n";
        r.machine += name + ".cash_share=" + format_full(scenario.shares.at(name)) + "\n" +
                     name + ".annual_tax=" + format_full(result.per_store_tax.at(name)) +
                     "\n";
    }
    r.human += "Total" + std::string(name_width - 5 + 2 + share_width + 2, ' ') +
               format_money(result.total_tax) + "\n";
    r.machine += "total.annual_tax=" + format_full(result.total_tax) + "\n";
    if (result.share_of_revenue) {
        r.human += "Share of revenue: " + percent(*result.share_of_revenue, 6) + "\n";
        r.machine += "share_of_revenue=" + format_full(*result.share_of_revenue) + "\n";
    }
}

Rendered run_aggregate(const std::string& profiles_dir, const std::string& taxes_path,
                       const std::string& rule_text, const std::string& scenario_path,
                       double total_revenue) {
    auto rule = RoundingRule::parse(rule_text);
    auto stores = load_taxed_profiles(profiles_dir, taxes_path, rule);
    auto contents = load_scenario_file(scenario_path);

    CashShareScenario scenario;
    scenario.label = read_scenario_label(scenario_path);
    scenario.shares = contents.shares;
    auto result = aggregate(stores, scenario, total_revenue);

    Rendered r;
    r.human = "Annual rounding charge (NIS), scenario " + scenario.label + "\n"
              "Rule: " + rule.format() + "\n\n";
    r.machine = "rule=" + rule.format() + "\n"
                "scenario=" + scenario.label + "\n";
    render_aggregate(r, stores, scenario, result);
    return r;
}

Rendered run_extremize(const std::string& profiles_dir, const std::string& taxes_path,
                       const std::string& rule_text, const std::string& scenario_path,
                       double overall, bool overall_given, const std::string& sense_text,
                       const std::string& weights_text, double total_revenue) {
    auto rule = RoundingRule::parse(rule_text);
    auto stores = load_taxed_profiles(profiles_dir, taxes_path, rule);

    if (!scenario_path.empty()) {
        auto contents = load_scenario_file(scenario_path);
        if (!contents.overall) {
            throw ValidationError(scenario_path + ": no overall= line to extremize against");
        }
        overall = *contents.overall;
    } else if (!overall_given) {
        throw ValidationError("extremize needs --overall or a scenario file with overall=");
    }

    ExtremizeSense sense;
    if (sense_text == "max") {
        sense = ExtremizeSense::kMaximize;
    } else if (sense_text == "min") {
        sense = ExtremizeSense::kMinimize;
    } else {
        throw ValidationError("sense must be \"max\" or \"min\", got \"" + sense_text +
                              "\"");
    }
    ShareWeighting weighting = parse_weighting(weights_text);

    auto result = extremize_cash_shares(stores, overall, sense, weighting, total_revenue);

    Rendered r;
    r.human = std::string(sense == ExtremizeSense::kMaximize ? "Maximal" : "Minimal") +
              " annual rounding charge at overall cash share " + percent(overall, 2) +
              " (" + weights_text + " weights)\n"
              "Rule: " + rule.format() + "\n\n";
    r.machine = "rule=" + rule.format() + "\n"
                "sense=" + sense_text + "\n"
                "weighting=" + weights_text + "\n"
                "overall_cash_share=" + format_full(overall) + "\n";
    render_aggregate(r, stores, result.scenario, result.aggregate);
    return r;
}

Rendered run_report(const std::string& profiles_dir, const std::string& taxes_path,
                    const std::string& rule_text, const ReportOptions& options,
                    const ReportContext& context) {
    auto rule = RoundingRule::parse(rule_text);
    auto stores = load_taxed_profiles(profiles_dir, taxes_path, rule);
    Report report = build_report(std::move(stores), rule.format(), options, context);
    return {render_report_text(report), render_report_key_values(report)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cash rounding charges: exact expectation, simulation and "
                 "economy-wide scenarios"};
    app.require_subcommand(1);

    std::string profiles_dir;
    std::string rule_text = "israel_2008";
    std::string taxes_path;
    std::string out_path;
    std::string scenario_path;
    std::string store_name;
    std::string dump_path;
    std::string sense_text;
    std::string weights_text = "revenue";
    std::int64_t n_transactions = 10000;
    std::uint64_t seed = 20131231;
    double overall = 0.25;
    double total_revenue = 0.0;
    ReportOptions report_options;
    ReportContext context;

    const char* profiles_help =
        "Directory with endings.csv, baskets.csv and profiles.csv";
    const char* rule_help =
        "israel_2008, symmetric_5, or \"grid=N; down=...; up=...\"";
    const char* taxes_help =
        "CSV of per-transaction taxes (store,tax_nis) overriding the exact engine";
    const char* out_help = "Write a machine-readable key=value summary to this file";

    auto* expect = app.add_subcommand(
        "expect", "Exact expected rounding charge per transaction");
    expect->add_option("--profiles", profiles_dir, profiles_help)->required();
    expect->add_option("--rule", rule_text, rule_help);
    expect->add_option("--out", out_path, out_help);

    auto* simulate = app.add_subcommand(
        "simulate", "Monte Carlo rounding charge per transaction");
    simulate->add_option("--profiles", profiles_dir, profiles_help)->required();
    simulate->add_option("--rule", rule_text, rule_help);
    simulate->add_option("--n", n_transactions, "Transactions to simulate per store");
    simulate->add_option("--seed", seed, "RNG seed");
    simulate->add_option("--store", store_name, "Simulate only this store");
    simulate->add_option(
        "--dump", dump_path,
        "Write per-transaction samples (txn_index,basket_size,residue,delta_agorot)");
    simulate->add_option("--out", out_path, out_help);

    auto* aggregate_cmd = app.add_subcommand(
        "aggregate", "Annual charge under a cash-share scenario file");
    aggregate_cmd->add_option("--profiles", profiles_dir, profiles_help)->required();
    aggregate_cmd->add_option("--scenario", scenario_path,
                              "Scenario file of store=share lines")->required();
    aggregate_cmd->add_option("--taxes", taxes_path, taxes_help);
    aggregate_cmd->add_option("--rule", rule_text, rule_help);
    aggregate_cmd->add_option("--total-revenue", total_revenue,
                              "Annual revenue (NIS) for the share-of-revenue line");
    aggregate_cmd->add_option("--out", out_path, out_help);

    auto* extremize_cmd = app.add_subcommand(
        "extremize", "Extremal annual charge over per-store cash shares");
    extremize_cmd->add_option("--profiles", profiles_dir, profiles_help)->required();
    auto* overall_opt = extremize_cmd->add_option(
        "--overall", overall, "Overall cash share the scenario must average to");
    auto* scenario_opt = extremize_cmd->add_option(
        "--scenario", scenario_path, "Scenario file whose overall= line sets the target");
    overall_opt->excludes(scenario_opt);
    extremize_cmd->add_option("--sense", sense_text, "max or min")->required();
    extremize_cmd->add_option("--weights", weights_text,
                              "Constraint weights: revenue or transactions");
    extremize_cmd->add_option("--taxes", taxes_path, taxes_help);
    extremize_cmd->add_option("--rule", rule_text, rule_help);
    extremize_cmd->add_option("--total-revenue", total_revenue,
                              "Annual revenue (NIS) for the share-of-revenue line");
    extremize_cmd->add_option("--out", out_path, out_help);

    auto* report_cmd = app.add_subcommand(
        "report", "Equal-shares baseline plus both extremal scenarios");
    report_cmd->add_option("--profiles", profiles_dir, profiles_help)->required();
    report_cmd->add_option("--taxes", taxes_path, taxes_help);
    report_cmd->add_option("--rule", rule_text, rule_help);
    report_cmd->add_option("--cash-share", report_options.overall_cash_share,
                           "Overall cash share");
    report_cmd->add_option("--weights", weights_text,
                           "Constraint weights: revenue or transactions");
    report_cmd->add_flag("--per-capita", report_options.per_capita,
                         "Include the per-person charge");
    report_cmd->add_flag("--share-of-revenue", report_options.share_of_revenue,
                         "Include the share-of-revenue band");
    report_cmd->add_option("--total-revenue", context.total_revenue,
                           "Annual revenue in NIS");
    report_cmd->add_option("--population", context.population, "Population");
    report_cmd->add_option("--exchange-rate", context.exchange_rate, "NIS per USD");
    report_cmd->add_option("--out", out_path, out_help);

    try {
        app.parse(argc, argv);

        if (!dump_path.empty() && store_name.empty()) {
            throw ValidationError("--dump needs --store to pick whose sample to write");
        }

        Rendered rendered;
        if (expect->parsed()) {
            rendered = run_expect(profiles_dir, rule_text);
        } else if (simulate->parsed()) {
            rendered = run_simulate(profiles_dir, rule_text, n_transactions, seed,
                                    store_name, dump_path);
        } else if (aggregate_cmd->parsed()) {
            rendered = run_aggregate(profiles_dir, taxes_path, rule_text, scenario_path,
                                     total_revenue);
        } else if (extremize_cmd->parsed()) {
            rendered = run_extremize(profiles_dir, taxes_path, rule_text, scenario_path,
                                     overall, overall_opt->count() > 0, sense_text,
                                     weights_text, total_revenue);
        } else {
            report_options.weighting = parse_weighting(weights_text);
            rendered = run_report(profiles_dir, taxes_path, rule_text, report_options,
                                  context);
        }
        deliver(rendered, out_path);
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
