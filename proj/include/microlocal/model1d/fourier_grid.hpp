#pragma once

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "../numerics/quadrature.hpp"

namespace microlocal {

namespace detail {

// FFTW planning is not thread-safe; execution on a private plan is.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// In-place unnormalized DFT of length n, sign -1 (forward) or +1 (backward).
inline void dft(std::vector<cplx>& data, int sign) {
    static_assert(sizeof(cplx) == sizeof(fftw_complex));
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), p, p, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
}

} // namespace detail

// Samples on x_j = -L + j dx (dx = 2L/N) and xi_k = (k - N/2) dxi (dxi = pi/L).
// hat_k approximates int v(x) e^{-i x xi_k} dx; Parseval holds with dxi/(2 pi).
class FourierGrid {
public:
    FourierGrid(std::size_t n, double half_width) : n_(n), L_(half_width), values_(n), hat_(n) {
        if (n < 8 || (n & (n - 1)) != 0) throw std::invalid_argument("FourierGrid: N must be a power of two >= 8");
        if (!(half_width > 0.0)) throw std::invalid_argument("FourierGrid: L must be positive");
    }

    static FourierGrid from_values(std::size_t n, double L, const std::function<cplx(double)>& v) {
        FourierGrid g(n, L);
        for (std::size_t j = 0; j < n; ++j) g.values_[j] = v(g.x(j));
        g.analyze();
        return g;
    }

    static FourierGrid from_hat(std::size_t n, double L, const std::function<cplx(double)>& vhat) {
        FourierGrid g(n, L);
        for (std::size_t k = 0; k < n; ++k) g.hat_[k] = vhat(g.xi(k));
        g.synthesize();
        return g;
    }

    std::size_t size() const { return n_; }
    double half_width() const { return L_; }
    double dx() const { return 2.0 * L_ / static_cast<double>(n_); }
    double dxi() const { return M_PI / L_; }
    double x(std::size_t j) const { return -L_ + dx() * static_cast<double>(j); }
    double xi(std::size_t k) const { return (static_cast<double>(k) - 0.5 * static_cast<double>(n_)) * dxi(); }

    const std::vector<cplx>& values() const { return values_; }
    const std::vector<cplx>& hat() const { return hat_; }

    // Replace the transform and rebuild the samples.
    void set_hat(std::vector<cplx> h) {
        if (h.size() != n_) throw std::invalid_argument("FourierGrid: hat length mismatch");
        hat_ = std::move(h);
        synthesize();
    }

    // hat from values: hat_k = dx (-1)^k FFT[(-1)^j v_j]_k.
    void analyze() {
        std::vector<cplx> w(values_);
        for (std::size_t j = 1; j < n_; j += 2) w[j] = -w[j];
        detail::dft(w, FFTW_FORWARD);
        const double s = dx();
        for (std::size_t k = 0; k < n_; ++k) hat_[k] = (k % 2 ? -s : s) * w[k];
    }

    // values from hat: v_j = (-1)^j IFFT[(-1)^k hat_k]_j / (N dx).
    void synthesize() {
        std::vector<cplx> w(hat_);
        for (std::size_t k = 1; k < n_; k += 2) w[k] = -w[k];
        detail::dft(w, FFTW_BACKWARD);
        const double s = 1.0 / (static_cast<double>(n_) * dx());
        for (std::size_t j = 0; j < n_; ++j) values_[j] = (j % 2 ? -s : s) * w[j];
    }

    // L^2 norms: sum |v|^2 dx and sum |hat|^2 dxi / 2 pi.
    double norm_x() const {
        double s = 0.0;
        for (const auto& v : values_) s += std::norm(v);
        return std::sqrt(s * dx());
    }
    double norm_xi() const {
        double s = 0.0;
        for (const auto& v : hat_) s += std::norm(v);
        return std::sqrt(s * dxi() / (2.0 * M_PI));
    }

    // Apply a Fourier multiplier m(xi) and return the samples of m(D)v.
    std::vector<cplx> multiplier_values(const std::function<cplx(double)>& m) const {
        FourierGrid g(*this);
        for (std::size_t k = 0; k < n_; ++k) g.hat_[k] *= m(xi(k));
        g.synthesize();
        return g.values_;
    }

private:
    std::size_t n_;
    double L_;
    std::vector<cplx> values_;
    std::vector<cplx> hat_;
};

} // namespace microlocal
