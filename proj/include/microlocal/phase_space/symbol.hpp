#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

#include "point.hpp"

namespace microlocal {

enum class SymbolKind { Keldysh, Tricomi, NormalForm };

// Principal symbols: Keldysh x1 xi1^2 + xi2^2, Tricomi xi1^2 + x1 xi2^2,
// normal form -x1 xi1^m. The lower-order coefficient a is only read by model1d.
struct SymbolSpec {
    SymbolKind kind = SymbolKind::Keldysh;
    int order = 1;
    std::complex<double> lower_order_coeff{0.0, 0.0};
};

template <std::size_t N>
struct HamiltonField {
    Vec<N> dx{};
    Vec<N> dxi{};
};

namespace detail {
template <std::size_t N>
void require_two_dims(const SymbolSpec& s) {
    if (N != 2 && s.kind != SymbolKind::NormalForm)
        throw std::invalid_argument("Keldysh and Tricomi symbols live on T*R^2");
    if (s.kind == SymbolKind::NormalForm && s.order < 1)
        throw std::invalid_argument("normal form order must be >= 1");
}
} // namespace detail

template <std::size_t N>
double eval_symbol(const SymbolSpec& s, const PhaseSpacePoint<N>& p) {
    detail::require_two_dims<N>(s);
    const double x1 = p.x[0], k1 = p.xi[0];
    switch (s.kind) {
    case SymbolKind::Keldysh:
        if constexpr (N == 2) return x1 * k1 * k1 + p.xi[1] * p.xi[1];
        break;
    case SymbolKind::Tricomi:
        if constexpr (N == 2) return k1 * k1 + x1 * p.xi[1] * p.xi[1];
        break;
    case SymbolKind::NormalForm:
        return -x1 * std::pow(k1, s.order);
    }
    return 0.0;
}

// H_p = (d_xi p, -d_x p), closed form.
template <std::size_t N>
HamiltonField<N> hamiltonian_field(const SymbolSpec& s, const PhaseSpacePoint<N>& p) {
    detail::require_two_dims<N>(s);
    HamiltonField<N> h;
    const double x1 = p.x[0], k1 = p.xi[0];
    switch (s.kind) {
    case SymbolKind::Keldysh:
        if constexpr (N == 2) {
            h.dx = {2.0 * x1 * k1, 2.0 * p.xi[1]};
            h.dxi = {-k1 * k1, 0.0};
        }
        break;
    case SymbolKind::Tricomi:
        if constexpr (N == 2) {
            const double k2 = p.xi[1];
            h.dx = {2.0 * k1, 2.0 * x1 * k2};
            h.dxi = {-k2 * k2, 0.0};
        }
        break;
    case SymbolKind::NormalForm: {
        const int m = s.order;
        h.dx[0] = -m * x1 * std::pow(k1, m - 1);
        h.dxi[0] = std::pow(k1, m);
        break;
    }
    }
    return h;
}

} // namespace microlocal
