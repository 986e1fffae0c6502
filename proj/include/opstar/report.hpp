#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace opstar {

/// One named residual check against a bound.
struct CheckEntry {
    std::string name;
    double residual = 0.0;
    double bound = 0.0;
    bool pass = true;
};

/// Result of a theorem-check run: a list of residual entries plus the
/// RNG seed the sampling used.
struct CheckReport {
    std::vector<CheckEntry> entries;
    std::uint64_t seed = 0;

    void add(std::string name, double residual, double bound) {
        entries.push_back({std::move(name), residual, bound, residual <= bound});
    }

    bool all_pass() const {
        return std::all_of(entries.begin(), entries.end(),
                           [](const CheckEntry& e) { return e.pass; });
    }

    double max_residual() const {
        double m = 0.0;
        for (const auto& e : entries) m = std::max(m, e.residual);
        return m;
    }
};

}  // namespace opstar
