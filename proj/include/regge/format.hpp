#pragma once

#include <cstdio>
#include <string>

namespace regge {

// Report format for numeric fields: 12 significant digits, scientific
// notation below 1e-4 in magnitude.
inline std::string format_g12(double x) {
    char buf[40];
    if (x == 0.0) return "0";
    double mag = x < 0 ? -x : x;
    if (mag < 1e-4)
        std::snprintf(buf, sizeof buf, "%.11e", x);
    else
        std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// mu rendered to three decimals (nearest), the display convention of
// degeneracy tables.
inline std::string format_mu3(double mu) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", mu);
    return buf;
}

}  // namespace regge
