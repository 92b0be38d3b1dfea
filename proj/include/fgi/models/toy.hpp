#pragma once

#include <cstddef>
#include <vector>

#include "fgi/phase_space.hpp"

namespace fgi::models {

// V = 1/2 sum q_i^2; force is linear, so the Hessian-free shift is exact
struct harmonic_oscillator {
    explicit harmonic_oscillator(std::size_t d = 1) : metric_(mass_metric::identity(d)) {}

    std::size_t dim() const { return metric_.dim; }
    const mass_metric& metric() const { return metric_; }

    double potential(const std::vector<double>& q) const {
        double v = 0;
        for (double x : q) v += x * x;
        return 0.5 * v;
    }
    void force(const std::vector<double>& q, std::vector<double>& out) const {
        for (std::size_t i = 0; i < q.size(); ++i) out[i] = q[i];
    }
    // 2 Hess(V) M^{-1} grad V = 2 q
    void fg_term(const std::vector<double>& q, std::vector<double>& out) const {
        for (std::size_t i = 0; i < q.size(); ++i) out[i] = 2.0 * q[i];
    }

private:
    mass_metric metric_;
};

// V = 1/4 sum q_i^4; the simplest smooth model where the Hessian-free update
// differs from the exact force-gradient one
struct quartic_well {
    explicit quartic_well(std::size_t d = 1) : metric_(mass_metric::identity(d)) {}

    std::size_t dim() const { return metric_.dim; }
    const mass_metric& metric() const { return metric_; }

    double potential(const std::vector<double>& q) const {
        double v = 0;
        for (double x : q) v += x * x * x * x;
        return 0.25 * v;
    }
    void force(const std::vector<double>& q, std::vector<double>& out) const {
        for (std::size_t i = 0; i < q.size(); ++i) out[i] = q[i] * q[i] * q[i];
    }
    // 2 * (3 q^2) * q^3 componentwise (diagonal Hessian, unit metric)
    void fg_term(const std::vector<double>& q, std::vector<double>& out) const {
        for (std::size_t i = 0; i < q.size(); ++i) {
            const double q2 = q[i] * q[i];
            out[i] = 6.0 * q2 * q2 * q[i];
        }
    }

private:
    mass_metric metric_;
};

} // namespace fgi::models
