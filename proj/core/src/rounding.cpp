#include "roundtax/rounding.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "roundtax/errors.hpp"

namespace roundtax {

namespace {

constexpr int kMaxGrid = 1000000;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

int parse_int(std::string_view s, std::string_view context) {
    s = trim(s);
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ValidationError("bad integer in rounding rule " + std::string(context) +
                              ": \"" + std::string(s) + "\"");
    }
    return value;
}

// Splits "a,b,c" into trimmed pieces; empty input gives no pieces.
std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> parts;
    s = trim(s);
    if (s.empty()) return parts;
    while (true) {
        auto comma = s.find(',');
        if (comma == std::string_view::npos) {
            parts.push_back(trim(s));
            return parts;
        }
        parts.push_back(trim(s.substr(0, comma)));
        s.remove_prefix(comma + 1);
    }
}

}  // namespace

RoundingRule::RoundingRule(int grid, std::vector<RoundDirection> policy)
    : grid_(grid), policy_(std::move(policy)) {
    if (grid_ < 1 || grid_ > kMaxGrid) {
        throw ValidationError("rounding grid must be in [1, 1000000], got " +
                              std::to_string(grid_));
    }
    if (policy_.size() != static_cast<std::size_t>(grid_ - 1)) {
        throw ValidationError("rounding policy must cover residues 1.." +
                              std::to_string(grid_ - 1) + ", got " +
                              std::to_string(policy_.size()) + " entries");
    }
}

RoundingRule RoundingRule::israel_2008() {
    std::vector<RoundDirection> policy(9, RoundDirection::kUp);
    for (int residue = 1; residue <= 4; ++residue) {
        policy[residue - 1] = RoundDirection::kDown;
    }
    return RoundingRule(10, std::move(policy));
}

RoundingRule RoundingRule::symmetric(int grid) {
    if (grid < 1 || grid > kMaxGrid) {
        throw ValidationError("rounding grid must be in [1, 1000000], got " +
                              std::to_string(grid));
    }
    std::vector<RoundDirection> policy;
    policy.reserve(grid - 1);
    for (int residue = 1; residue < grid; ++residue) {
        policy.push_back(2 * residue < grid ? RoundDirection::kDown : RoundDirection::kUp);
    }
    return RoundingRule(grid, std::move(policy));
}

RoundingRule RoundingRule::parse(std::string_view text) {
    std::string_view s = trim(text);
    if (s == "israel_2008") return israel_2008();
    if (s == "symmetric_5") return symmetric(5);

    // Explicit form: grid=<n>; down=<list>; up=<list>
    int grid = -1;
    std::vector<int> down, up;
    bool saw_down = false, saw_up = false;
    while (!s.empty()) {
        auto semi = s.find(';');
        std::string_view field = trim(semi == std::string_view::npos ? s : s.substr(0, semi));
        s = semi == std::string_view::npos ? std::string_view{} : s.substr(semi + 1);
        if (field.empty()) continue;
        auto eq = field.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError("bad rounding rule field: \"" + std::string(field) + "\"");
        }
        std::string_view key = trim(field.substr(0, eq));
        std::string_view value = field.substr(eq + 1);
        if (key == "grid") {
            grid = parse_int(value, "grid");
        } else if (key == "down") {
            saw_down = true;
            for (auto part : split_list(value)) down.push_back(parse_int(part, "down"));
        } else if (key == "up") {
            saw_up = true;
            for (auto part : split_list(value)) up.push_back(parse_int(part, "up"));
        } else {
            throw ValidationError("unknown rounding rule key: \"" + std::string(key) + "\"");
        }
    }
    if (grid < 0 || !saw_down || !saw_up) {
        throw ValidationError("rounding rule needs grid=, down= and up=: \"" +
                              std::string(text) + "\"");
    }
    if (grid < 1 || grid > kMaxGrid) {
        throw ValidationError("rounding grid must be in [1, 1000000], got " +
                              std::to_string(grid));
    }

    std::vector<int> seen(grid, 0);
    std::vector<RoundDirection> policy(grid - 1, RoundDirection::kDown);
    auto apply = [&](const std::vector<int>& residues, RoundDirection dir) {
        for (int r : residues) {
            if (r < 1 || r >= grid) {
                throw ValidationError("rounding rule residue " + std::to_string(r) +
                                      " outside 1.." + std::to_string(grid - 1));
            }
            if (seen[r]++) {
                throw ValidationError("rounding rule residue " + std::to_string(r) +
                                      " listed twice");
            }
            policy[r - 1] = dir;
        }
    };
    apply(down, RoundDirection::kDown);
    apply(up, RoundDirection::kUp);
    for (int r = 1; r < grid; ++r) {
        if (!seen[r]) {
            throw ValidationError("rounding rule missing residue " + std::to_string(r));
        }
    }
    return RoundingRule(grid, std::move(policy));
}

std::string RoundingRule::format() const {
    std::string down, up;
    for (int r = 1; r < grid_; ++r) {
        std::string& list = policy_[r - 1] == RoundDirection::kDown ? down : up;
        if (!list.empty()) list += ',';
        list += std::to_string(r);
    }
    return "grid=" + std::to_string(grid_) + "; down=" + down + "; up=" + up;
}

RoundDirection RoundingRule::direction(int residue) const {
    if (residue < 1 || residue >= grid_) {
        throw std::domain_error("residue " + std::to_string(residue) +
                                " outside 1.." + std::to_string(grid_ - 1));
    }
    return policy_[residue - 1];
}

MinorUnits round_amount(MinorUnits amount, const RoundingRule& rule) {
    std::int64_t a = amount.agorot();
    if (a < 0) {
        throw std::domain_error("cannot cash-round a negative amount");
    }
    std::int64_t r = a % rule.grid();
    if (r == 0) return amount;
    if (rule.direction(static_cast<int>(r)) == RoundDirection::kDown) {
        return MinorUnits(a - r);
    }
    return MinorUnits(a + (rule.grid() - r));
}

MinorUnits rounding_delta(MinorUnits amount, const RoundingRule& rule) {
    return round_amount(amount, rule) - amount;
}

std::vector<std::int64_t> delta_by_residue(const RoundingRule& rule) {
    std::vector<std::int64_t> deltas(rule.grid());
    deltas[0] = 0;
    for (int r = 1; r < rule.grid(); ++r) {
        deltas[r] = rule.direction(r) == RoundDirection::kDown
            ? -static_cast<std::int64_t>(r)
            : rule.grid() - r;
    }
    return deltas;
}

}  // namespace roundtax
