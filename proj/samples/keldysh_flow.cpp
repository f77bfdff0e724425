// Integrates the Hamiltonian flow of the Keldysh symbol x1 xi1^2 + xi2^2 from a point of
// Lambda_+ and from a generic point, printing the trajectory and the symbol drift.

#include <cmath>
#include <cstdio>

#include <microlocal/phase_space.hpp>

using namespace microlocal;

namespace {

void trace(const char* label, const PhaseSpacePoint<2>& start, double T) {
    const SymbolSpec kel{SymbolKind::Keldysh};
    const int steps = 512;
    const auto path = flow(kel, start, T, steps);
    const double p0 = eval_symbol(kel, start);
    std::printf("%s\n     t        x1          x2         xi1         xi2      p - p0\n", label);
    for (int i = 0; i <= steps; i += 64) {
        const auto& q = path[i];
        std::printf("  %5.2f  %10.6f  %10.6f  %10.6f  %10.6f  %9.2e\n", T * i / steps, q.x[0], q.x[1], q.xi[0],
                    q.xi[1], eval_symbol(kel, q) - p0);
    }
    std::printf("\n");
}

} // namespace

int main() {
    trace("Lambda_+ (x1 = 0, xi2 = 0, xi1 = 1): xi1 = 1/(1+t), x1 stays 0", {{0.0, 0.0}, {1.0, 0.0}}, 2.0);
    trace("generic start (0.3, -0.2; 1, 0.5)", {{0.3, -0.2}, {1.0, 0.5}}, 2.0);
}
