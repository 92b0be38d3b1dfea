#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace fgi {

struct linear_fit_result {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

// Ordinary least squares y = intercept + slope*x with the usual residual-based
// standard error on the slope.
inline linear_fit_result linear_fit(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("linear_fit: need >= 2 matching points");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("linear_fit: degenerate x");
    linear_fit_result r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    if (n > 2) {
        double ss = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = y[i] - (r.intercept + r.slope * x[i]);
            ss += d * d;
        }
        r.slope_stderr = std::sqrt(ss / ((n - 2) * sxx));
    }
    return r;
}

// Theil-Sen median slope; outlier-robust drift estimator for energy series.
inline double theil_sen_slope(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("theil_sen_slope: need >= 2 points");
    std::vector<double> slopes;
    slopes.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (x[j] != x[i]) slopes.push_back((y[j] - y[i]) / (x[j] - x[i]));
    if (slopes.empty()) throw std::invalid_argument("theil_sen_slope: degenerate x");
    auto mid = slopes.begin() + slopes.size() / 2;
    std::nth_element(slopes.begin(), mid, slopes.end());
    double m = *mid;
    if (slopes.size() % 2 == 0) {
        auto lo = std::max_element(slopes.begin(), mid);
        m = 0.5 * (m + *lo);
    }
    return m;
}

inline double mean(std::span<const double> v) {
    double s = 0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / v.size();
}

// unbiased sample variance
inline double sample_variance(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n < 2) return 0.0;
    const double m = mean(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return s / (n - 1);
}

// Blocked (binned) standard error of the mean; robust against autocorrelation
// for block sizes well above the correlation time.
inline double blocked_stderr(std::span<const double> v, std::size_t block) {
    if (block < 1) block = 1;
    const std::size_t nb = v.size() / block;
    if (nb < 2) return std::sqrt(sample_variance(v) / std::max<std::size_t>(1, v.size()));
    std::vector<double> bm(nb);
    for (std::size_t b = 0; b < nb; ++b) {
        double s = 0;
        for (std::size_t i = 0; i < block; ++i) s += v[b * block + i];
        bm[b] = s / block;
    }
    return std::sqrt(sample_variance(bm) / nb);
}

// Jackknife over blocks for an arbitrary statistic.
template <class F>
double jackknife_stderr(std::span<const double> v, std::size_t block, F&& statistic) {
    if (block < 1) block = 1;
    const std::size_t nb = v.size() / block;
    if (nb < 2) return 0.0;
    std::vector<double> reduced;
    reduced.reserve(v.size());
    std::vector<double> est(nb);
    for (std::size_t drop = 0; drop < nb; ++drop) {
        reduced.clear();
        for (std::size_t b = 0; b < nb; ++b) {
            if (b == drop) continue;
            for (std::size_t i = 0; i < block; ++i) reduced.push_back(v[b * block + i]);
        }
        est[drop] = statistic(std::span<const double>(reduced));
    }
    const double m = mean(est);
    double s = 0;
    for (double e : est) s += (e - m) * (e - m);
    return std::sqrt(s * (nb - 1) / nb);
}

// Inverse complementary error function via Newton iterations on std::erfc.
inline double erfc_inv(double y) {
    if (y <= 0.0 || y >= 2.0) throw std::invalid_argument("erfc_inv: argument outside (0,2)");
    if (y == 1.0) return 0.0;
    // initial guess from the standard normal quantile approximation
    const double p = y / 2.0; // upper-tail probability of N(0,1)/sqrt(2)
    double t = std::sqrt(-2.0 * std::log(p < 0.5 ? p : 1.0 - p));
    double x = t - (2.30753 + 0.27061 * t) / (1.0 + t * (0.99229 + 0.04481 * t));
    x /= std::sqrt(2.0);
    if (p > 0.5) x = -x;
    const double two_over_sqrt_pi = 1.1283791670955125738961589031;
    for (int it = 0; it < 60; ++it) {
        const double f = std::erfc(x) - y;
        const double d = -two_over_sqrt_pi * std::exp(-x * x);
        const double dx = f / d;
        x -= dx;
        if (std::abs(dx) < 1e-16 * (1.0 + std::abs(x))) break;
    }
    return x;
}

} // namespace fgi
