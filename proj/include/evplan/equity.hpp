#pragma once

#include <map>
#include <string>
#include <vector>

#include "evplan/netcore.hpp"

namespace evplan::equity {

// Best-to-others / others-to-worst expert ratings on the 1..9 scale.
struct BwmInput {
    std::vector<std::string> factors;
    int best = 0;
    int worst = 0;
    std::vector<double> best_to_others;
    std::vector<double> others_to_worst;

    void validate() const;
};

struct BwmResult {
    std::vector<double> theta;
    double epsilon_star = 0.0;
};

enum class Direction { NeedIncreasing, NeedDecreasing };

struct FactorSpec {
    std::string name;
    Direction direction = Direction::NeedIncreasing;
    std::map<std::string, double> ordinal;  // optional label -> numeric mapping
};

struct ZoneFactorTable {
    std::vector<FactorSpec> factors;
    std::vector<std::string> zones;
    std::vector<std::vector<double>> values;  // [zone][factor], already numeric

    void validate() const;
};

struct EquityProfile {
    std::vector<std::string> zones;
    std::vector<std::vector<double>> normalized;  // G[zone][factor], inversion applied
    std::map<std::string, double> zone_weights;   // mu_z
};

// Minimize the maximum ratio deviation epsilon by bisection; each probe is
// a linear feasibility check (the constraints are linear for fixed
// epsilon). The reported theta is the per-component interval midpoint of
// the feasible region at epsilon*, renormalized to sum 1.
BwmResult solve_bwm(const BwmInput& input, double tol = 1e-6);

// Min-max normalization per factor; need-decreasing factors inverted to
// 1 - G. Throws when a factor has zero spread.
std::vector<std::vector<double>> normalize_factors(const ZoneFactorTable& table);

std::map<std::string, double> zone_weights(const ZoneFactorTable& table,
                                           const std::vector<std::vector<double>>& normalized,
                                           const std::vector<double>& theta);

// mu_q = max of the two endpoint-zone weights.
std::map<std::pair<netcore::VertexIdx, netcore::VertexIdx>, double> od_weights(
    const std::map<std::string, double>& mu_z, const netcore::Network& net,
    const std::vector<netcore::ODPair>& pairs);

}  // namespace evplan::equity
