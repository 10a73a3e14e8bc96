#pragma once
// Randomized property suites run by `spacelike-surf selftest`.

#include <cstdint>
#include <string>
#include <vector>

namespace spacelike {

inline constexpr std::uint64_t kDefaultSelftestSeed = 20240917;

struct SuiteResult {
    std::string name;
    int samples = 0;
    int failures = 0;
    double max_residual = 0;
    double tolerance = 0;

    bool passed() const { return failures == 0; }
};

struct SelftestOptions {
    std::uint64_t seed = kDefaultSelftestSeed;
    bool quick = false; // 10^2 samples per suite instead of 10^3 (10^4 for the form identities)
};

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts);

} // namespace spacelike
