#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"

namespace microlocal {

struct DecaySample {
    double t;
    double magnitude;
};

enum class DecayModel { Exponential, Polynomial, Flat };

inline const char* to_string(DecayModel m) {
    switch (m) {
    case DecayModel::Exponential: return "exponential";
    case DecayModel::Polynomial: return "polynomial";
    case DecayModel::Flat: return "flat";
    }
    return "?";
}

struct DecayFit {
    DecayModel model = DecayModel::Flat;
    double rate = 0.0;      // -slope of log|.| against t (exponential) or log t (polynomial)
    double r_squared = 0.0; // of the chosen model
    int sample_count = 0;
};

inline constexpr double kDefaultFitThreshold = 0.98;
inline constexpr double kMagnitudeFloor = 1e-300;
inline constexpr int kMinDecaySamples = 8;

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares of y against x. r^2 is 1 for constant y.
inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    LineFit f;
    f.slope = sxx > 0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    if (syy <= 1e-24 * std::max(1.0, my * my) * n) {
        f.slope = 0.0;
        f.r_squared = 1.0;
        return f;
    }
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ssr += r * r;
    }
    f.r_squared = std::clamp(1.0 - ssr / syy, 0.0, 1.0);
    return f;
}

// Regress log-magnitudes against t and against log t; keep the better model.
// Non-decaying data and fits below threshold come back as Flat.
inline DecayFit fit_decay(const std::vector<DecaySample>& samples, double threshold = kDefaultFitThreshold) {
    if (samples.size() < static_cast<std::size_t>(kMinDecaySamples))
        throw InsufficientSamples("fit_decay: need at least " + std::to_string(kMinDecaySamples) +
                                  " samples, got " + std::to_string(samples.size()));
    std::vector<double> t, lt, lm;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (!(s.t > 0.0)) throw std::invalid_argument("fit_decay: t must be positive");
        if (i > 0 && !(s.t > samples[i - 1].t)) throw std::invalid_argument("fit_decay: t must be strictly increasing");
        if (!(s.magnitude >= 0.0)) throw std::invalid_argument("fit_decay: magnitude must be >= 0");
        t.push_back(s.t);
        lt.push_back(std::log(s.t));
        lm.push_back(std::log(std::max(s.magnitude, kMagnitudeFloor)));
    }
    const LineFit ex = fit_line(t, lm);
    const LineFit po = fit_line(lt, lm);

    DecayFit out;
    out.sample_count = static_cast<int>(samples.size());
    const bool poly_wins = po.r_squared >= ex.r_squared - 1e-12;
    const LineFit& best = poly_wins ? po : ex;
    out.r_squared = best.r_squared;
    out.rate = -best.slope;
    if (!(best.slope < 0.0) || best.r_squared < threshold) {
        out.model = DecayModel::Flat;
        return out;
    }
    out.model = poly_wins ? DecayModel::Polynomial : DecayModel::Exponential;
    return out;
}

} // namespace microlocal
