#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include "inverse.hpp"

namespace microlocal {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Grid dump: a "# h=..,n=..,theta=.." line, then x,xi,re,im,abs rows.
inline void write_grid_csv(std::ostream& os, const PhaseGrid& g, double h, double theta) {
    os << "# h=" << fmt17(h) << ",n=1,theta=" << fmt17(theta) << "\n";
    os << "x,xi,re,im,abs\n";
    for (int i = 0; i < g.x.count; ++i)
        for (int k = 0; k < g.xi.count; ++k) {
            const cplx v = g(i, k);
            os << fmt17(g.x.at(i)) << ',' << fmt17(g.xi.at(k)) << ',' << fmt17(v.real()) << ','
               << fmt17(v.imag()) << ',' << fmt17(std::abs(v)) << '\n';
        }
}

} // namespace microlocal
