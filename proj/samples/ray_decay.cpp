// Prints |Tu(x0, t)| along the ray omega = +1 for a Gaussian and for |y| e^{-y^2},
// at a regular point and at the kink, together with the detector verdicts.

#include <cstdio>

#include <microlocal/cli/experiments.hpp>

using namespace microlocal;

int main() {
    WfaParams p;
    p.threads = 1;
    for (const char* name : {"gaussian", "kink"}) {
        const auto u = wfa_test_function(name);
        for (double x0 : {0.0, 0.5}) {
            std::printf("%s at x0 = %.1f\n   t         |Tu|\n", name, x0);
            for (const auto& s : ray_scan<1>(u, {x0}, {1.0}, p.fbi, p.t_grid, p.resolve_floor))
                std::printf("  %7.2f   %.3e%s\n", s.t, s.magnitude, s.resolved ? "" : "  (below roundoff floor)");
            const auto v = classify_ray<1>(u, {x0}, {1.0}, p);
            std::printf("  verdict %s, model %s, rate %.4g\n\n", to_string(v.status), to_string(v.fit.model), v.rate);
        }
    }
}
