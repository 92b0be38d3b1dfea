#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "fgi/rng.hpp"

namespace fgi {

// Constant symmetric positive definite mass matrix. The identity and diagonal
// kinds apply their inverse exactly; the dense kind goes through a Cholesky
// factor computed once at construction.
struct mass_metric {
    enum class kind_t { identity, diagonal, dense };

    kind_t kind = kind_t::identity;
    std::size_t dim = 0;
    std::vector<double> diag;   // masses, diagonal kind
    std::vector<double> chol;   // row-major lower factor L with M = L L^T, dense kind
    std::vector<double> full;   // row-major M, dense kind

    static mass_metric identity(std::size_t d) {
        mass_metric m;
        m.kind = kind_t::identity;
        m.dim = d;
        return m;
    }

    static mass_metric diagonal(std::vector<double> masses) {
        mass_metric m;
        m.kind = kind_t::diagonal;
        m.dim = masses.size();
        for (double v : masses)
            if (!(v > 0.0)) throw std::invalid_argument("mass_metric: diagonal entries must be > 0");
        m.diag = std::move(masses);
        return m;
    }

    static mass_metric dense(std::vector<double> matrix, std::size_t d) {
        if (matrix.size() != d * d) throw std::invalid_argument("mass_metric: bad matrix size");
        mass_metric m;
        m.kind = kind_t::dense;
        m.dim = d;
        m.full = matrix;
        m.chol.assign(d * d, 0.0);
        // Cholesky; failure means the matrix is not SPD
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                double s = matrix[i * d + j];
                for (std::size_t k = 0; k < j; ++k) s -= m.chol[i * d + k] * m.chol[j * d + k];
                if (i == j) {
                    if (!(s > 0.0)) throw std::invalid_argument("mass_metric: matrix not SPD");
                    m.chol[i * d + i] = std::sqrt(s);
                } else {
                    m.chol[i * d + j] = s / m.chol[j * d + j];
                }
            }
        }
        return m;
    }

    // out = M^{-1} p
    void apply_inverse(std::span<const double> p, std::span<double> out) const {
        check(p.size());
        check(out.size());
        switch (kind) {
        case kind_t::identity:
            for (std::size_t i = 0; i < dim; ++i) out[i] = p[i];
            break;
        case kind_t::diagonal:
            for (std::size_t i = 0; i < dim; ++i) out[i] = p[i] / diag[i];
            break;
        case kind_t::dense: {
            // solve L y = p, then L^T out = y
            std::vector<double> y(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                double s = p[i];
                for (std::size_t k = 0; k < i; ++k) s -= chol[i * dim + k] * y[k];
                y[i] = s / chol[i * dim + i];
            }
            for (std::size_t ii = dim; ii-- > 0;) {
                double s = y[ii];
                for (std::size_t k = ii + 1; k < dim; ++k) s -= chol[k * dim + ii] * out[k];
                out[ii] = s / chol[ii * dim + ii];
            }
            break;
        }
        }
    }

    // p ~ N(0, M), i.e. p = L xi with unit gaussians xi
    void sample_momenta(rng& r, std::span<double> p) const {
        check(p.size());
        switch (kind) {
        case kind_t::identity:
            for (std::size_t i = 0; i < dim; ++i) p[i] = r.normal();
            break;
        case kind_t::diagonal:
            for (std::size_t i = 0; i < dim; ++i) p[i] = std::sqrt(diag[i]) * r.normal();
            break;
        case kind_t::dense: {
            std::vector<double> xi(dim);
            for (auto& x : xi) x = r.normal();
            for (std::size_t i = 0; i < dim; ++i) {
                double s = 0;
                for (std::size_t k = 0; k <= i; ++k) s += chol[i * dim + k] * xi[k];
                p[i] = s;
            }
            break;
        }
        }
    }

    void check(std::size_t n) const {
        if (n != dim) throw std::invalid_argument("mass_metric: dimension mismatch");
    }
};

// Phase-space point. Both supported configuration spaces store flat real
// arrays: Euclidean coordinates, or U(1) link angles (with unit metric).
// Angles accumulate unwrapped during integration; wrapping is an observable's
// concern, never the integrator's, so exact reversibility survives.
struct phase_point {
    std::vector<double> q;
    std::vector<double> p;

    std::size_t dim() const { return q.size(); }
};

// T(p) = 1/2 p^T M^{-1} p
inline double kinetic_energy(const phase_point& s, const mass_metric& m) {
    m.check(s.p.size());
    std::vector<double> minv_p(s.p.size());
    m.apply_inverse(s.p, minv_p);
    double t = 0;
    for (std::size_t i = 0; i < s.p.size(); ++i) t += s.p[i] * minv_p[i];
    return 0.5 * t;
}

// q <- q + s M^{-1} p (exact flow of the kinetic part)
inline void drift(phase_point& st, const mass_metric& m, double s) {
    if (!std::isfinite(s)) throw std::invalid_argument("drift: non-finite step");
    m.check(st.q.size());
    std::vector<double> v(st.q.size());
    m.apply_inverse(st.p, v);
    for (std::size_t i = 0; i < st.q.size(); ++i) st.q[i] += s * v[i];
}

// p <- p - s * grad V (exact flow of the potential part)
inline void kick(phase_point& st, std::span<const double> force_vec, double s) {
    if (force_vec.size() != st.p.size()) throw std::invalid_argument("kick: dimension mismatch");
    for (std::size_t i = 0; i < st.p.size(); ++i) st.p[i] -= s * force_vec[i];
}

// rho(p,q) = (-p,q); an involution
inline void flip_momenta(phase_point& st) {
    for (auto& pi : st.p) pi = -pi;
}

// wrap an angle to [-pi, pi) for reporting
inline double wrap_angle(double theta) {
    const double two_pi = 6.283185307179586476925286766559;
    double t = std::fmod(theta + 3.14159265358979323846, two_pi);
    if (t < 0) t += two_pi;
    return t - 3.14159265358979323846;
}

} // namespace fgi
