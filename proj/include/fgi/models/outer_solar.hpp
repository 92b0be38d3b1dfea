#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fgi/phase_space.hpp"

namespace fgi::models {

// Gravitational N-body system in heliocentric-style coordinates:
//   V(q) = -G sum_{i>j} m_i m_j / |q_i - q_j|,  T(p) = 1/2 sum p_i^2 / m_i.
// Default data: sun (mass augmented by the inner planets), the four outer
// planets and Pluto at the 1994-09-05 00:00 epoch, in AU / days / solar
// masses, transcribed from the standard tabulation of that epoch.
class nbody_gravity {
public:
    nbody_gravity(double G, std::vector<double> masses)
        : G_(G), masses_(std::move(masses)) {
        if (masses_.size() < 2) throw std::invalid_argument("nbody_gravity: need >= 2 bodies");
        std::vector<double> diag;
        diag.reserve(3 * masses_.size());
        for (double m : masses_) {
            if (!(m > 0)) throw std::invalid_argument("nbody_gravity: masses must be > 0");
            diag.insert(diag.end(), 3, m);
        }
        metric_ = mass_metric::diagonal(std::move(diag));
    }

    std::size_t n_bodies() const { return masses_.size(); }
    std::size_t dim() const { return 3 * masses_.size(); }
    const mass_metric& metric() const { return metric_; }
    double gravitational_constant() const { return G_; }
    const std::vector<double>& masses() const { return masses_; }

    double potential(const std::vector<double>& q) const {
        check(q);
        const std::size_t n = n_bodies();
        double v = 0;
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) {
                const double r = distance(q, i, j);
                if (r == 0.0) throw std::domain_error("nbody_gravity: coincident bodies");
                v -= G_ * masses_[i] * masses_[j] / r;
            }
        return v;
    }

    // grad_q V; pairwise antisymmetric contributions, total force sums to zero
    void force(const std::vector<double>& q, std::vector<double>& out) const {
        check(q);
        const std::size_t n = n_bodies();
        out.assign(3 * n, 0.0);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) {
                double d[3];
                const double r = diff(q, i, j, d);
                if (r == 0.0) throw std::domain_error("nbody_gravity: coincident bodies");
                const double f = G_ * masses_[i] * masses_[j] / (r * r * r);
                for (int k = 0; k < 3; ++k) {
                    out[3 * i + k] += f * d[k];
                    out[3 * j + k] -= f * d[k];
                }
            }
    }

    // 2 Hess(V) M^{-1} grad V assembled pairwise from Hessian-vector products,
    // never materializing the Hessian. For the pair (i,j) with separation d,
    //   H_ii = H_jj = -H_ij = G m_i m_j (I/r^3 - 3 d d^T / r^5),
    // and the product contracts against w_i - w_j.
    void fg_term(const std::vector<double>& q, std::vector<double>& out) const {
        check(q);
        const std::size_t n = n_bodies();
        std::vector<double> g(3 * n), w(3 * n);
        force(q, g);
        metric_.apply_inverse(g, w);
        out.assign(3 * n, 0.0);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) {
                double d[3];
                const double r = diff(q, i, j, d);
                const double inv3 = 1.0 / (r * r * r);
                const double inv5 = inv3 / (r * r);
                double dw[3];
                for (int k = 0; k < 3; ++k) dw[k] = w[3 * i + k] - w[3 * j + k];
                const double ddw = d[0] * dw[0] + d[1] * dw[1] + d[2] * dw[2];
                const double gm = G_ * masses_[i] * masses_[j];
                for (int k = 0; k < 3; ++k) {
                    const double hv = gm * (dw[k] * inv3 - 3.0 * ddw * d[k] * inv5);
                    out[3 * i + k] += 2.0 * hv;
                    out[3 * j + k] -= 2.0 * hv;
                }
            }
    }

    phase_point state_from_velocities(const std::vector<double>& q,
                                      const std::vector<double>& v) const {
        check(q);
        check(v);
        phase_point x;
        x.q = q;
        x.p.resize(v.size());
        for (std::size_t i = 0; i < n_bodies(); ++i)
            for (int k = 0; k < 3; ++k) x.p[3 * i + k] = masses_[i] * v[3 * i + k];
        return x;
    }

private:
    void check(const std::vector<double>& q) const {
        if (q.size() != dim()) throw std::invalid_argument("nbody_gravity: dimension mismatch");
    }
    double diff(const std::vector<double>& q, std::size_t i, std::size_t j, double d[3]) const {
        for (int k = 0; k < 3; ++k) d[k] = q[3 * i + k] - q[3 * j + k];
        return std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    }
    double distance(const std::vector<double>& q, std::size_t i, std::size_t j) const {
        double d[3];
        return diff(q, i, j, d);
    }

    double G_;
    std::vector<double> masses_;
    mass_metric metric_;
};

struct solar_system_data {
    nbody_gravity model;
    phase_point initial_state;
};

// AU^3 / (solar mass * day^2)
inline constexpr double solar_G = 2.95912208286e-4;

inline solar_system_data outer_solar_system() {
    // sun mass includes the inner planets; positions AU, velocities AU/day
    const std::vector<double> masses = {
        1.00000597682,
        9.54786104043e-4,   // Jupiter
        2.85583733151e-4,   // Saturn
        4.37273164546e-5,   // Uranus
        5.17759138449e-5,   // Neptune
        1.0 / 1.3e8,        // Pluto
    };
    const std::vector<double> q = {
        0.0, 0.0, 0.0,
        -3.5023653, -3.8169847, -1.5507963,
        9.0755314, -3.0458353, -1.6483708,
        8.3101420, -16.2901086, -7.2521278,
        11.4707666, -25.7294829, -10.8169456,
        -15.5387357, -25.2225594, -3.1902382,
    };
    const std::vector<double> v = {
        0.0, 0.0, 0.0,
        0.00565429, -0.00412490, -0.00190589,
        0.00168318, 0.00483525, 0.00192462,
        0.00354178, 0.00137102, 0.00055029,
        0.00288930, 0.00114527, 0.00039677,
        0.00276725, -0.00170702, -0.00136504,
    };
    nbody_gravity model(solar_G, masses);
    phase_point x = model.state_from_velocities(q, v);
    return {std::move(model), std::move(x)};
}

// CSV rows: body,mass,x,y,z,vx,vy,vz (header line optional); units must
// match G, which defaults to AU/day/solar-mass gravity.
inline solar_system_data load_solar_csv(const std::string& path, double G = solar_G) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_solar_csv: cannot open " + path);
    std::vector<double> masses, q, v;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 8) continue; // header or malformed row
        try {
            const double m = std::stod(cells[1]);
            masses.push_back(m);
            for (int k = 0; k < 3; ++k) q.push_back(std::stod(cells[2 + k]));
            for (int k = 0; k < 3; ++k) v.push_back(std::stod(cells[5 + k]));
        } catch (const std::exception&) {
            continue; // header row with non-numeric cells
        }
    }
    if (masses.size() < 2) throw std::runtime_error("load_solar_csv: no body rows in " + path);
    nbody_gravity model(G, masses);
    phase_point x = model.state_from_velocities(q, v);
    return {std::move(model), std::move(x)};
}

} // namespace fgi::models
