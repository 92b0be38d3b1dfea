#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fgi/phase_space.hpp"
#include "fgi/rng.hpp"

namespace fgi::models {

using cplx = std::complex<double>;
using spinor_field = std::vector<cplx>; // two components per site, [2n], [2n+1]

struct schwinger_params {
    int L = 8;
    int T = 8;
    double beta = 1.0;
    double m0 = 0.352443;
    double cg_tol_force = 1e-10;  // molecular-dynamics forces
    double cg_tol_action = 1e-12; // accept/reject action evaluations
    int cg_maxiter = 100000;
    bool antiperiodic_time = true; // fermion boundary condition
};

// U(1) gauge links plus conjugate momenta on an L x T periodic lattice.
// Link angles are stored site-major, direction-minor: index 2*site + mu with
// site = x + L*t and mu = 0 (space), 1 (time). Angles accumulate unwrapped;
// wrap only for reporting.
struct u1_lattice_state {
    int L = 0, T = 0;
    std::vector<double> theta;
    std::vector<double> pi;

    phase_point to_phase_point() const { return {theta, pi}; }
    static u1_lattice_state from_phase_point(int L, int T, const phase_point& x) {
        return {L, T, x.q, x.p};
    }
    std::vector<double> wrapped_theta() const {
        std::vector<double> w(theta.size());
        for (std::size_t i = 0; i < theta.size(); ++i) w[i] = wrap_angle(theta[i]);
        return w;
    }
};

// Two-flavour-free Schwinger model: Wilson gauge action plus one
// pseudofermion for det(D^dag D), with the two-component Wilson-Dirac
// operator. Exposes the phase_model interface over the flat angle vector;
// the pseudofermion field is refreshed per trajectory and held fixed while
// forces are evaluated.
class schwinger_model {
public:
    explicit schwinger_model(schwinger_params p) : par_(p), metric_(mass_metric::identity(2 * p.L * p.T)) {
        if (p.L < 2 || p.T < 2) throw std::invalid_argument("schwinger_model: lattice too small");
        if (!(p.cg_tol_force > 0) || !(p.cg_tol_action > 0))
            throw std::invalid_argument("schwinger_model: CG tolerances must be > 0");
        build_tables();
        eta_.assign(2 * volume(), cplx(0.0, 0.0));
    }

    const schwinger_params& params() const { return par_; }
    int volume() const { return par_.L * par_.T; }
    std::size_t dim() const { return 2 * static_cast<std::size_t>(volume()); }
    const mass_metric& metric() const { return metric_; }

    // ---- gauge sector -----------------------------------------------------

    int site(int x, int t) const {
        const int L = par_.L, T = par_.T;
        x = ((x % L) + L) % L;
        t = ((t % T) + T) % T;
        return x + L * t;
    }

    // oriented plaquette phase at site n:
    //   theta_x(n) + theta_t(n+x) - theta_x(n+t) - theta_t(n)
    double plaquette_phase(const std::vector<double>& th, int n) const {
        return th[2 * n] + th[2 * up_[2 * n] + 1] - th[2 * up_[2 * n + 1]] - th[2 * n + 1];
    }

    cplx plaquette(const std::vector<double>& th, int n) const {
        const double ph = plaquette_phase(th, n);
        return {std::cos(ph), std::sin(ph)};
    }

    double mean_plaquette(const std::vector<double>& th) const {
        double s = 0;
        for (int n = 0; n < volume(); ++n) s += std::cos(plaquette_phase(th, n));
        return s / volume();
    }

    double gauge_action(const std::vector<double>& th) const {
        double s = 0;
        for (int n = 0; n < volume(); ++n) s += 1.0 - std::cos(plaquette_phase(th, n));
        return par_.beta * s;
    }

    // dS_G/dtheta: each link sits in two plaquettes with opposite orientation
    void gauge_force(const std::vector<double>& th, std::vector<double>& out) const {
        const int v = volume();
        sinph_.resize(v);
        for (int n = 0; n < v; ++n) sinph_[n] = std::sin(plaquette_phase(th, n));
        out.resize(2 * v);
        for (int n = 0; n < v; ++n) {
            out[2 * n] = par_.beta * (sinph_[n] - sinph_[dn_[2 * n + 1]]);
            out[2 * n + 1] = par_.beta * (sinph_[dn_[2 * n]] - sinph_[n]);
        }
    }

    // ---- Wilson-Dirac operator ---------------------------------------------

    // out = D psi (or D^dag psi):
    //   (D psi)(n) = (2+m0) psi(n)
    //     - 1/2 sum_mu [ (1-s_mu) U_mu(n) psi(n+mu) + (1+s_mu) U_mu(n-mu)^* psi(n-mu) ]
    // with s_1, s_2 the Pauli matrices; the adjoint swaps the projectors.
    void dirac_apply(const std::vector<double>& th, const spinor_field& psi,
                     spinor_field& out, bool dagger = false) const {
        links_from(th);
        dirac_apply_cached(psi, out, dagger);
    }

    struct cg_result {
        int iterations = 0;
        double relative_residual = 0.0;
    };

    // x = (D^dag D)^{-1} rhs by conjugate gradients from a zero initial guess
    // (deterministic, which keeps molecular dynamics reversible). The returned
    // residual is re-verified with one extra operator application.
    cg_result cg_solve(const std::vector<double>& th, const spinor_field& rhs,
                       spinor_field& x, double tol) const {
        links_from(th);
        return cg_cached(rhs, x, tol);
    }

    // ---- pseudofermion sector ----------------------------------------------

    // S_F = eta^dag (D^dag D)^{-1} eta
    double fermion_action(const std::vector<double>& th, const spinor_field& eta,
                          double tol) const {
        links_from(th);
        spinor_field x;
        cg_cached(eta, x, tol);
        double s = 0;
        for (std::size_t i = 0; i < eta.size(); ++i)
            s += std::real(std::conj(eta[i]) * x[i]);
        return s;
    }

    // dS_F/dtheta = -2 Re[ psi^dag (dD/dtheta) phi ], phi = (D^dag D)^{-1} eta,
    // psi = D phi.
    void fermion_force(const std::vector<double>& th, const spinor_field& eta,
                       std::vector<double>& out, double tol) const {
        links_from(th);
        spinor_field phi, psi;
        cg_cached(eta, phi, tol);
        dirac_apply_cached(phi, psi, false);

        const int v = volume();
        out.resize(2 * v);
        for (int n = 0; n < v; ++n) {
            for (int mu = 0; mu < 2; ++mu) {
                const int l = 2 * n + mu;
                const int nf = up_[l];
                const double bc = hop_phase_up(n, mu);
                const cplx u = links_[l] * bc;
                // rows of dD/dtheta_mu(n): row n gets -(i/2)(1-s) u phi(n+mu),
                // row n+mu gets (i/2)(1+s) u^* phi(n)
                cplx pm0, pm1, pp0, pp1;
                proj_minus(mu, phi[2 * nf], phi[2 * nf + 1], pm0, pm1);
                proj_plus(mu, phi[2 * n], phi[2 * n + 1], pp0, pp1);
                const cplx t1 = std::conj(psi[2 * n]) * pm0 + std::conj(psi[2 * n + 1]) * pm1;
                const cplx t2 = std::conj(psi[2 * nf]) * pp0 + std::conj(psi[2 * nf + 1]) * pp1;
                const cplx total = cplx(0.0, -0.5) * u * t1 + cplx(0.0, 0.5) * std::conj(u) * t2;
                out[l] = -2.0 * std::real(total);
            }
        }
    }

    // eta = D^dag xi with xi complex gaussian (variance 1/2 per real
    // component), so that exp(-S_F) is sampled exactly
    spinor_field pseudofermion_heatbath(const std::vector<double>& th, rng& r) const {
        spinor_field xi(2 * volume());
        const double s = std::sqrt(0.5);
        for (auto& z : xi) z = cplx(s * r.normal(), s * r.normal());
        spinor_field eta;
        dirac_apply(th, xi, eta, true);
        return eta;
    }

    // ---- phase_model interface ---------------------------------------------

    double potential(const std::vector<double>& q) const {
        return gauge_action(q) + fermion_action(q, eta_, par_.cg_tol_action);
    }

    void force(const std::vector<double>& q, std::vector<double>& out) const {
        gauge_force(q, out);
        fermion_force(q, eta_, scratch_force_, par_.cg_tol_force);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += scratch_force_[i];
    }

    void refresh_pseudofermions(const std::vector<double>& q, rng& r) { eta_ = pseudofermion_heatbath(q, r); }
    const spinor_field& pseudofermions() const { return eta_; }
    void set_pseudofermions(spinor_field eta) { eta_ = std::move(eta); }

    std::int64_t total_cg_iterations() const { return cg_iters_total_; }

private:
    void build_tables() {
        const int L = par_.L, T = par_.T, v = L * T;
        up_.resize(2 * v);
        dn_.resize(2 * v);
        for (int t = 0; t < T; ++t)
            for (int x = 0; x < L; ++x) {
                const int n = x + L * t;
                up_[2 * n] = site(x + 1, t);
                up_[2 * n + 1] = site(x, t + 1);
                dn_[2 * n] = site(x - 1, t);
                dn_[2 * n + 1] = site(x, t - 1);
            }
    }

    double hop_phase_up(int n, int mu) const {
        if (mu == 1 && par_.antiperiodic_time && (n / par_.L) == par_.T - 1) return -1.0;
        return 1.0;
    }
    double hop_phase_dn(int n, int mu) const {
        if (mu == 1 && par_.antiperiodic_time && (n / par_.L) == 0) return -1.0;
        return 1.0;
    }

    // (1 -+ sigma_mu) psi for the two Pauli matrices
    static void proj_minus(int mu, cplx u0, cplx u1, cplx& r0, cplx& r1) {
        if (mu == 0) { r0 = u0 - u1; r1 = u1 - u0; }
        else { r0 = u0 + cplx(0, 1) * u1; r1 = u1 - cplx(0, 1) * u0; }
    }
    static void proj_plus(int mu, cplx u0, cplx u1, cplx& r0, cplx& r1) {
        if (mu == 0) { r0 = u0 + u1; r1 = u0 + u1; }
        else { r0 = u0 - cplx(0, 1) * u1; r1 = u1 + cplx(0, 1) * u0; }
    }

    void links_from(const std::vector<double>& th) const {
        if (th.size() != dim()) throw std::invalid_argument("schwinger_model: bad angle vector size");
        links_.resize(th.size());
        for (std::size_t i = 0; i < th.size(); ++i) links_[i] = cplx(std::cos(th[i]), std::sin(th[i]));
    }

    void dirac_apply_cached(const spinor_field& psi, spinor_field& out, bool dagger) const {
        const int v = volume();
        if (psi.size() != 2 * static_cast<std::size_t>(v))
            throw std::invalid_argument("dirac_apply: bad spinor size");
        out.resize(psi.size());
        const double m = 2.0 + par_.m0;
        for (int n = 0; n < v; ++n) {
            cplx r0 = m * psi[2 * n];
            cplx r1 = m * psi[2 * n + 1];
            for (int mu = 0; mu < 2; ++mu) {
                const int nf = up_[2 * n + mu];
                const int nb = dn_[2 * n + mu];
                const cplx uf = links_[2 * n + mu] * hop_phase_up(n, mu);
                const cplx ub = std::conj(links_[2 * nb + mu]) * hop_phase_dn(n, mu);
                cplx f0, f1, b0, b1;
                if (!dagger) {
                    proj_minus(mu, psi[2 * nf], psi[2 * nf + 1], f0, f1);
                    proj_plus(mu, psi[2 * nb], psi[2 * nb + 1], b0, b1);
                } else {
                    proj_plus(mu, psi[2 * nf], psi[2 * nf + 1], f0, f1);
                    proj_minus(mu, psi[2 * nb], psi[2 * nb + 1], b0, b1);
                }
                r0 -= 0.5 * (uf * f0 + ub * b0);
                r1 -= 0.5 * (uf * f1 + ub * b1);
            }
            out[2 * n] = r0;
            out[2 * n + 1] = r1;
        }
    }

    cg_result cg_cached(const spinor_field& rhs, spinor_field& x, double tol) const {
        const std::size_t n = rhs.size();
        x.assign(n, cplx(0, 0));
        spinor_field r = rhs, p = rhs, ap, tmp;
        auto dot_re = [](const spinor_field& a, const spinor_field& b) {
            double s = 0;
            for (std::size_t i = 0; i < a.size(); ++i) s += std::real(std::conj(a[i]) * b[i]);
            return s;
        };
        const double rhs2 = dot_re(rhs, rhs);
        if (rhs2 == 0.0) return {0, 0.0};
        double rr = rhs2;
        int it = 0;
        while (true) {
            dirac_apply_cached(p, tmp, false);
            dirac_apply_cached(tmp, ap, true);
            const double alpha = rr / dot_re(p, ap);
            for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
            for (std::size_t i = 0; i < n; ++i) r[i] -= alpha * ap[i];
            const double rr2 = dot_re(r, r);
            ++it;
            if (rr2 <= tol * tol * rhs2) break;
            if (it >= par_.cg_maxiter) {
                std::ostringstream msg;
                msg << "cg_solve: no convergence after " << it
                    << " iterations, relative residual " << std::sqrt(rr2 / rhs2);
                throw std::runtime_error(msg.str());
            }
            const double beta = rr2 / rr;
            for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
            rr = rr2;
        }
        cg_iters_total_ += it;
        // re-verify with a fresh operator application
        dirac_apply_cached(x, tmp, false);
        dirac_apply_cached(tmp, ap, true);
        double true_r2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx d = rhs[i] - ap[i];
            true_r2 += std::norm(d);
        }
        const double rel = std::sqrt(true_r2 / rhs2);
        if (rel > 10.0 * tol) {
            std::ostringstream msg;
            msg << "cg_solve: verified residual " << rel << " exceeds tolerance " << tol;
            throw std::runtime_error(msg.str());
        }
        return {it, rel};
    }

    schwinger_params par_;
    mass_metric metric_;
    std::vector<int> up_, dn_;
    spinor_field eta_;
    mutable std::vector<cplx> links_;
    mutable std::vector<double> sinph_;
    mutable std::vector<double> scratch_force_;
    mutable std::int64_t cg_iters_total_ = 0;
};

// ---- gauge field persistence ------------------------------------------------
// CSV with a header line and one hex-float angle per line; hex floats make the
// round trip bit-exact.

struct gauge_field_header {
    int L = 0, T = 0;
    double beta = 0, m0 = 0;
    std::uint64_t seed = 0;
    std::int64_t trajectory = 0;
};

inline void save_gauge_field(const std::string& path, const gauge_field_header& hdr,
                             const std::vector<double>& theta) {
    if (theta.size() != static_cast<std::size_t>(2 * hdr.L * hdr.T))
        throw std::invalid_argument("save_gauge_field: size/header mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_gauge_field: cannot open " + path);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%a,%a", hdr.beta, hdr.m0);
    out << "L,T,beta,m0,seed,trajectory\n"
        << hdr.L << ',' << hdr.T << ',' << buf << ',' << hdr.seed << ',' << hdr.trajectory << "\n";
    for (double th : theta) {
        std::snprintf(buf, sizeof buf, "%a\n", th);
        out << buf;
    }
    if (!out) throw std::runtime_error("save_gauge_field: write failed for " + path);
}

struct loaded_gauge_field {
    gauge_field_header header;
    std::vector<double> theta;
};

inline loaded_gauge_field load_gauge_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_gauge_field: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("load_gauge_field: empty file");
    if (!std::getline(in, line)) throw std::runtime_error("load_gauge_field: missing header row");
    loaded_gauge_field out;
    {
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 6) throw std::runtime_error("load_gauge_field: malformed header");
        out.header.L = std::stoi(cells[0]);
        out.header.T = std::stoi(cells[1]);
        out.header.beta = std::strtod(cells[2].c_str(), nullptr);
        out.header.m0 = std::strtod(cells[3].c_str(), nullptr);
        out.header.seed = std::stoull(cells[4]);
        out.header.trajectory = std::stoll(cells[5]);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.theta.push_back(std::strtod(line.c_str(), nullptr));
    }
    if (out.theta.size() != static_cast<std::size_t>(2 * out.header.L * out.header.T))
        throw std::runtime_error("load_gauge_field: angle count does not match header");
    return out;
}

} // namespace fgi::models
