#include "roundtax/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "csv_util.hpp"
#include "number_format.hpp"
#include "roundtax/errors.hpp"

namespace roundtax {

using detail::checked_store_name;
using detail::expect_csv_header;
using detail::next_csv_line;
using detail::parse_double_field;
using detail::parse_int_field;
using detail::row_error;
using detail::split_csv_row;

namespace {

constexpr int kMaxBasketSize = 1000000;

}  // namespace

EndingDistribution::EndingDistribution(const std::array<double, 10>& probabilities)
    : probabilities_(probabilities) {
    double sum = 0.0;
    for (int d = 0; d < 10; ++d) {
        double p = probabilities_[d];
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ValidationError("ending probability for digit " + std::to_string(d) +
                                  " outside [0,1]: " + std::to_string(p));
        }
        sum += p;
    }
    if (std::fabs(sum - 1.0) > kSumTolerance) {
        throw ValidationError("ending probabilities sum to " + std::to_string(sum) +
                              ", not 1");
    }
}

EndingDistribution EndingDistribution::point_mass(int digit) {
    if (digit < 0 || digit > 9) {
        throw ValidationError("ending digit must be 0..9, got " + std::to_string(digit));
    }
    std::array<double, 10> p{};
    p[digit] = 1.0;
    return EndingDistribution(p);
}

BasketSizeDistribution::BasketSizeDistribution(std::vector<std::pair<int, double>> masses)
    : masses_(std::move(masses)) {
    double sum = 0.0;
    std::set<int> sizes;
    for (auto& [size, p] : masses_) {
        if (size < 1 || size > kMaxBasketSize) {
            throw ValidationError("basket size must be in [1, 1000000], got " +
                                  std::to_string(size));
        }
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ValidationError("basket probability for size " + std::to_string(size) +
                                  " outside [0,1]: " + std::to_string(p));
        }
        if (!sizes.insert(size).second) {
            throw ValidationError("basket size " + std::to_string(size) + " listed twice");
        }
        sum += p;
    }
    if (std::fabs(sum - 1.0) > kSumTolerance) {
        throw ValidationError("basket probabilities sum to " + std::to_string(sum) +
                              ", not 1");
    }
    std::erase_if(masses_, [](const auto& m) { return m.second == 0.0; });
    if (masses_.empty()) {
        throw ValidationError("basket distribution has no mass");
    }
    std::sort(masses_.begin(), masses_.end());
}

BasketSizeDistribution BasketSizeDistribution::point_mass(int size) {
    return BasketSizeDistribution({{size, 1.0}});
}

double mean_basket_size(const BasketSizeDistribution& baskets) {
    double mean = 0.0;
    for (auto& [size, p] : baskets.masses()) mean += size * p;
    return mean;
}

std::vector<std::pair<std::string, EndingDistribution>>
load_endings_csv(std::istream& in, std::string_view source_name) {
    expect_csv_header(in, "store,d0,d1,d2,d3,d4,d5,d6,d7,d8,d9", source_name);
    std::vector<std::pair<std::string, EndingDistribution>> rows;
    std::set<std::string> seen;
    std::string line;
    for (std::size_t line_no = 2; next_csv_line(in, line); ++line_no) {
        if (line.empty()) continue;
        auto fields = split_csv_row(line);
        if (fields.size() != 11) {
            row_error(source_name, line_no,
                      "expected 11 fields, got " + std::to_string(fields.size()));
        }
        std::string store = checked_store_name(fields[0], source_name, line_no);
        if (!seen.insert(store).second) {
            row_error(source_name, line_no, "duplicate store \"" + store + "\"");
        }
        std::array<double, 10> p{};
        for (int d = 0; d < 10; ++d) {
            p[d] = parse_double_field(fields[d + 1], source_name, line_no);
        }
        try {
            rows.emplace_back(std::move(store), EndingDistribution(p));
        } catch (const ValidationError& e) {
            row_error(source_name, line_no, e.what());
        }
    }
    if (rows.empty()) {
        throw ValidationError(std::string(source_name) + ": no data rows");
    }
    return rows;
}

std::vector<std::pair<std::string, BasketSizeDistribution>>
load_baskets_csv(std::istream& in, std::string_view source_name) {
    expect_csv_header(in, "store,size,prob", source_name);
    // Rows for one store may be scattered; collect then validate per store.
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::pair<int, double>>> masses;
    std::map<std::string, std::size_t> first_line;
    std::string line;
    for (std::size_t line_no = 2; next_csv_line(in, line); ++line_no) {
        if (line.empty()) continue;
        auto fields = split_csv_row(line);
        if (fields.size() != 3) {
            row_error(source_name, line_no,
                      "expected 3 fields, got " + std::to_string(fields.size()));
        }
        std::string store = checked_store_name(fields[0], source_name, line_no);
        int size = parse_int_field(fields[1], source_name, line_no);
        double prob = parse_double_field(fields[2], source_name, line_no);
        auto [it, inserted] = masses.try_emplace(store);
        if (inserted) {
            order.push_back(store);
            first_line[store] = line_no;
        }
        it->second.emplace_back(size, prob);
    }
    if (order.empty()) {
        throw ValidationError(std::string(source_name) + ": no data rows");
    }
    std::vector<std::pair<std::string, BasketSizeDistribution>> rows;
    for (auto& store : order) {
        try {
            rows.emplace_back(store, BasketSizeDistribution(std::move(masses[store])));
        } catch (const ValidationError& e) {
            row_error(source_name, first_line[store],
                      "store \"" + store + "\": " + e.what());
        }
    }
    return rows;
}

std::vector<ProfileRecord>
load_profiles_csv(std::istream& in, std::string_view source_name) {
    expect_csv_header(in, "store,revenue_share,annual_transactions_thousands", source_name);
    std::vector<ProfileRecord> rows;
    std::set<std::string> seen;
    double share_sum = 0.0;
    std::string line;
    for (std::size_t line_no = 2; next_csv_line(in, line); ++line_no) {
        if (line.empty()) continue;
        auto fields = split_csv_row(line);
        if (fields.size() != 3) {
            row_error(source_name, line_no,
                      "expected 3 fields, got " + std::to_string(fields.size()));
        }
        ProfileRecord rec;
        rec.store = checked_store_name(fields[0], source_name, line_no);
        if (!seen.insert(rec.store).second) {
            row_error(source_name, line_no, "duplicate store \"" + rec.store + "\"");
        }
        rec.revenue_share = parse_double_field(fields[1], source_name, line_no);
        if (!(rec.revenue_share >= 0.0 && rec.revenue_share <= 1.0)) {
            row_error(source_name, line_no, "revenue share outside [0,1]: " + fields[1]);
        }
        rec.annual_transactions_thousands =
            parse_double_field(fields[2], source_name, line_no);
        if (!(rec.annual_transactions_thousands >= 0.0)) {
            row_error(source_name, line_no, "negative transaction count: " + fields[2]);
        }
        share_sum += rec.revenue_share;
        rows.push_back(std::move(rec));
    }
    if (rows.empty()) {
        throw ValidationError(std::string(source_name) + ": no data rows");
    }
    if (std::fabs(share_sum - 1.0) > 1e-6) {
        throw ValidationError(std::string(source_name) + ": revenue shares sum to " +
                              std::to_string(share_sum) + ", not 1");
    }
    return rows;
}

std::vector<StoreProfile> assemble_profiles(
    std::vector<std::pair<std::string, EndingDistribution>> endings,
    std::vector<std::pair<std::string, BasketSizeDistribution>> baskets,
    const std::vector<ProfileRecord>& records) {
    std::map<std::string, EndingDistribution> endings_by_store;
    for (auto& [store, dist] : endings) endings_by_store.emplace(store, std::move(dist));
    std::map<std::string, BasketSizeDistribution> baskets_by_store;
    for (auto& [store, dist] : baskets) baskets_by_store.emplace(store, std::move(dist));

    std::vector<StoreProfile> profiles;
    for (const auto& rec : records) {
        auto e = endings_by_store.find(rec.store);
        if (e == endings_by_store.end()) {
            throw ValidationError("store \"" + rec.store +
                                  "\" has no price ending distribution");
        }
        auto b = baskets_by_store.find(rec.store);
        if (b == baskets_by_store.end()) {
            throw ValidationError("store \"" + rec.store +
                                  "\" has no basket size distribution");
        }
        StoreProfile profile{rec.store, std::move(e->second), std::move(b->second),
                             rec.revenue_share, rec.annual_transactions_thousands, 0.0};
        profile.avg_items_per_trip = mean_basket_size(profile.baskets);
        profiles.push_back(std::move(profile));
        endings_by_store.erase(e);
        baskets_by_store.erase(b);
    }
    if (!endings_by_store.empty()) {
        throw ValidationError("store \"" + endings_by_store.begin()->first +
                              "\" has an ending distribution but no profile row");
    }
    if (!baskets_by_store.empty()) {
        throw ValidationError("store \"" + baskets_by_store.begin()->first +
                              "\" has a basket distribution but no profile row");
    }
    return profiles;
}

std::vector<StoreProfile> load_store_profiles(const std::string& directory) {
    auto open = [&](const char* file) {
        std::string path = directory + "/" + file;
        std::ifstream in(path);
        if (!in) {
            throw ValidationError("cannot open " + path);
        }
        return in;
    };
    auto endings_in = open("endings.csv");
    auto endings = load_endings_csv(endings_in, directory + "/endings.csv");
    auto baskets_in = open("baskets.csv");
    auto baskets = load_baskets_csv(baskets_in, directory + "/baskets.csv");
    auto profiles_in = open("profiles.csv");
    auto records = load_profiles_csv(profiles_in, directory + "/profiles.csv");
    return assemble_profiles(std::move(endings), std::move(baskets), records);
}

using detail::shortest_double;

void write_endings_csv(std::ostream& out,
                       const std::vector<std::pair<std::string, EndingDistribution>>& rows) {
    out << "store,d0,d1,d2,d3,d4,d5,d6,d7,d8,d9\n";
    for (const auto& [store, dist] : rows) {
        out << store;
        for (int d = 0; d < 10; ++d) out << ',' << shortest_double(dist.probability(d));
        out << '\n';
    }
}

void write_baskets_csv(std::ostream& out,
                       const std::vector<std::pair<std::string, BasketSizeDistribution>>& rows) {
    out << "store,size,prob\n";
    for (const auto& [store, dist] : rows) {
        for (const auto& [size, p] : dist.masses()) {
            out << store << ',' << size << ',' << shortest_double(p) << '\n';
        }
    }
}

void write_profiles_csv(std::ostream& out, const std::vector<ProfileRecord>& rows) {
    out << "store,revenue_share,annual_transactions_thousands\n";
    for (const auto& rec : rows) {
        out << rec.store << ',' << shortest_double(rec.revenue_share) << ','
            << shortest_double(rec.annual_transactions_thousands) << '\n';
    }
}

}  // namespace roundtax
