#include "evplan/scenario.hpp"

#include <algorithm>

namespace evplan::scenario {

void ScenarioSet::validate() const {
    if (periods < 2)
        throw ValidationError("scenario set: need at least two periods for relocation");
    if (scenarios.empty()) throw ValidationError("scenario set: no scenarios");
    for (const Scenario& s : scenarios) {
        if (s.probability < 0.0)
            throw ValidationError("scenario set: negative probability for '" + s.label + "'");
        if (s.mult_lo > s.mult_hi || s.mult_lo < 0.0)
            throw ValidationError("scenario set: bad multiplier range for '" + s.label + "'");
    }
    if (!period_modulation.empty() &&
        static_cast<int>(period_modulation.size()) != periods)
        throw ValidationError("scenario set: period modulation length mismatch");
}

double ScenarioSet::probability_sum() const {
    double p = 0.0;
    for (const Scenario& s : scenarios) p += s.probability;
    return p;
}

namespace {

// splitmix64 of (seed, counter): a fixed, implementation-independent
// draw sequence.
double uniform_draw(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;  // [0,1)
}

}  // namespace

FlowTensor generate_flows(const std::vector<netcore::ODPair>& base_pairs,
                          const ScenarioSet& set) {
    set.validate();
    FlowTensor tensor;
    tensor.periods = set.periods;
    tensor.scenarios = static_cast<int>(set.scenarios.size());
    tensor.pairs = base_pairs;
    std::sort(tensor.pairs.begin(), tensor.pairs.end());
    tensor.values.assign(
        static_cast<std::size_t>(tensor.periods) * tensor.scenarios * tensor.pairs.size(), 0.0);
    std::uint64_t counter = 0;
    for (int t = 0; t < tensor.periods; ++t) {
        const double mod = set.period_modulation.empty() ? 1.0 : set.period_modulation[t];
        for (int s = 0; s < tensor.scenarios; ++s) {
            const Scenario& sc = set.scenarios[s];
            for (std::size_t q = 0; q < tensor.pairs.size(); ++q) {
                const double u = uniform_draw(set.seed, counter++);
                const double mult = sc.mult_lo + u * (sc.mult_hi - sc.mult_lo);
                tensor.at(t, s, static_cast<int>(q)) = tensor.pairs[q].flow * mult * mod;
            }
        }
    }
    return tensor;
}

double expected_flow(const FlowTensor& tensor, const ScenarioSet& set, int pair_index,
                     int period) {
    double v = 0.0;
    for (int s = 0; s < tensor.scenarios; ++s)
        v += set.scenarios[s].probability * tensor.at(period, s, pair_index);
    return v;
}

}  // namespace evplan::scenario
