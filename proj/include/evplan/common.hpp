#pragma once

#include <stdexcept>
#include <string>

namespace evplan {

// Global geometric tolerance for <=/>= comparisons on distances (miles).
inline constexpr double kGeomTol = 1e-9;

// Feasibility / integrality tolerance for the MILP layer.
inline constexpr double kFeasTol = 1e-7;

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Fixed-width decimal formatting used by every exporter so that identical
// inputs produce byte-identical output files.
std::string format_quantity(double v);  // 6 fraction digits (flows, miles)
std::string format_money(double v);     // 2 fraction digits

}  // namespace evplan
