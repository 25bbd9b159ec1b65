#ifndef ROUNDTAX_DISTRIBUTIONS_HPP
#define ROUNDTAX_DISTRIBUTIONS_HPP

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace roundtax {

// Probability of a posted price ending in each agora digit 0..9.
class EndingDistribution {
public:
    // Probabilities must each lie in [0,1] and sum to 1 within 1e-9.
    explicit EndingDistribution(const std::array<double, 10>& probabilities);

    static EndingDistribution point_mass(int digit);

    double probability(int digit) const { return probabilities_[digit]; }
    const std::array<double, 10>& probabilities() const { return probabilities_; }

    static constexpr double kSumTolerance = 1e-9;

private:
    std::array<double, 10> probabilities_;
};

// Distribution of the number of items in a transaction. Support is a
// finite set of sizes >= 1 with probabilities summing to 1 within 1e-9.
class BasketSizeDistribution {
public:
    explicit BasketSizeDistribution(std::vector<std::pair<int, double>> masses);

    static BasketSizeDistribution point_mass(int size);

    // Sorted by size ascending, zero-probability entries removed.
    const std::vector<std::pair<int, double>>& masses() const { return masses_; }
    int max_size() const { return masses_.back().first; }

    static constexpr double kSumTolerance = 1e-9;

private:
    std::vector<std::pair<int, double>> masses_;
};

double mean_basket_size(const BasketSizeDistribution& baskets);

// Everything the engines need to know about one store category.
struct StoreProfile {
    std::string name;
    EndingDistribution endings;
    BasketSizeDistribution baskets;
    double revenue_share = 0.0;
    double annual_transactions_thousands = 0.0;
    double avg_items_per_trip = 0.0;
};

// Revenue/volume columns of the profiles file, before the join with the
// per-store distributions.
struct ProfileRecord {
    std::string store;
    double revenue_share = 0.0;
    double annual_transactions_thousands = 0.0;
};

// CSV loaders. source_name appears in error messages; the header is line
// 1 and the first data row line 2. All failures throw ValidationError
// naming the offending row.
std::vector<std::pair<std::string, EndingDistribution>>
load_endings_csv(std::istream& in, std::string_view source_name);

std::vector<std::pair<std::string, BasketSizeDistribution>>
load_baskets_csv(std::istream& in, std::string_view source_name);

// Also checks that revenue shares sum to 1 within 1e-6.
std::vector<ProfileRecord>
load_profiles_csv(std::istream& in, std::string_view source_name);

// Joins the three tables by store name. Every store must appear in all
// three; leftovers on either side are an error.
std::vector<StoreProfile> assemble_profiles(
    std::vector<std::pair<std::string, EndingDistribution>> endings,
    std::vector<std::pair<std::string, BasketSizeDistribution>> baskets,
    const std::vector<ProfileRecord>& records);

// Reads endings.csv, baskets.csv and profiles.csv from a directory.
std::vector<StoreProfile> load_store_profiles(const std::string& directory);

void write_endings_csv(std::ostream& out,
                       const std::vector<std::pair<std::string, EndingDistribution>>& rows);
void write_baskets_csv(std::ostream& out,
                       const std::vector<std::pair<std::string, BasketSizeDistribution>>& rows);
void write_profiles_csv(std::ostream& out, const std::vector<ProfileRecord>& rows);

}  // namespace roundtax

#endif
