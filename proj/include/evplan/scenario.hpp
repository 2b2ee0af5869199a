#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evplan/netcore.hpp"

namespace evplan::scenario {

struct Scenario {
    std::string label;
    double probability = 0.0;
    double mult_lo = 1.0;  // flow multiplier drawn uniformly from [lo, hi]
    double mult_hi = 1.0;
};

struct ScenarioSet {
    int periods = 0;
    std::uint64_t seed = 0;
    std::vector<Scenario> scenarios;
    std::vector<double> period_modulation;  // defaults to all ones

    void validate() const;
    double probability_sum() const;
};

// f[t][s][q]: per-period, per-scenario flows for the sorted pair list the
// tensor was generated from.
struct FlowTensor {
    int periods = 0;
    int scenarios = 0;
    std::vector<netcore::ODPair> pairs;
    std::vector<double> values;  // periods * scenarios * pairs

    double at(int t, int s, int q) const {
        return values[(static_cast<std::size_t>(t) * scenarios + s) * pairs.size() + q];
    }
    double& at(int t, int s, int q) {
        return values[(static_cast<std::size_t>(t) * scenarios + s) * pairs.size() + q];
    }
};

// Deterministic counter-based generation: draw order is period-major,
// then scenario, then pairs in lexicographic (i,j) order; the n-th draw
// depends only on (seed, n).
FlowTensor generate_flows(const std::vector<netcore::ODPair>& base_pairs,
                          const ScenarioSet& set);

// Probability-weighted flow for one pair and period.
double expected_flow(const FlowTensor& tensor, const ScenarioSet& set, int pair_index,
                     int period);

}  // namespace evplan::scenario
