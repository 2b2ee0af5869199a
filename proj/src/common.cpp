#include "evplan/common.hpp"

#include <cmath>
#include <cstdio>

namespace evplan {

namespace {
std::string format_fixed(double v, int digits) {
    if (std::fabs(v) < 0.5 * std::pow(10.0, -digits)) v = 0.0;  // avoid "-0.00"
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}
}  // namespace

std::string format_quantity(double v) { return format_fixed(v, 6); }
std::string format_money(double v) { return format_fixed(v, 2); }

}  // namespace evplan
