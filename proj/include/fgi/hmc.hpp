#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fgi/engine.hpp"
#include "fgi/rng.hpp"
#include "fgi/scheme.hpp"
#include "fgi/stats.hpp"

namespace fgi {

template <class M>
concept has_pseudofermions = requires(M& m, const std::vector<double>& q, rng& r) {
    m.refresh_pseudofermions(q, r);
};

template <class M>
concept has_mean_plaquette = requires(const M& m, const std::vector<double>& q) {
    { m.mean_plaquette(q) } -> std::convertible_to<double>;
};

struct hmc_config {
    double tau = 1.0;          // trajectory length
    int n_steps = 20;          // integrator steps per trajectory, h = tau/n
    step_mode mode = step_mode::hessian_free;
    std::int64_t n_traj = 100;
    std::int64_t n_therm = -1; // < 0: 10% of n_traj
    std::uint64_t seed = 1;

    std::int64_t thermalization() const {
        return n_therm >= 0 ? n_therm : n_traj / 10;
    }
};

struct trajectory_result {
    double delta_h = 0;
    bool accepted = false;
    std::int64_t force_evals = 0;
};

// One HMC update: momentum heatbath from the mass metric, pseudofermion
// heatbath where the model has one, molecular dynamics, Metropolis on the
// full Hamiltonian. The configuration is restored on rejection; momenta are
// refreshed every trajectory either way.
template <phase_model Model>
trajectory_result run_trajectory(Model& model, const scheme& s, const hmc_config& cfg,
                                 phase_point& state, rng& r) {
    if (!(cfg.tau > 0) || cfg.n_steps < 1) throw std::invalid_argument("run_trajectory: bad config");
    model.metric().sample_momenta(r, state.p);
    if constexpr (has_pseudofermions<Model>) model.refresh_pseudofermions(state.q, r);

    const double h0 = hamiltonian(model, state);
    phase_point proposal = state;
    stepper<Model> stp(s, model, cfg.mode);
    const double h = cfg.tau / cfg.n_steps;
    stp.integrate(proposal, h, cfg.n_steps);
    const double h1 = hamiltonian(model, proposal);

    trajectory_result res;
    res.delta_h = h1 - h0;
    res.force_evals = stp.counter().force_evals;
    const double draw = r.uniform();
    res.accepted = res.delta_h <= 0.0 || draw < std::exp(-res.delta_h);
    if (res.accepted) state = std::move(proposal);
    // else keep the old configuration (momenta are overwritten next time)
    return res;
}

struct chain_stats {
    std::vector<double> delta_h;
    std::vector<int> accepted;
    std::vector<std::int64_t> force_evals;
    std::vector<double> plaquette; // empty for models without links
    std::vector<double> seconds;
    std::int64_t n_therm = 0;

    // derived over the post-thermalization samples
    double mean_dh = 0;
    double sigma2 = 0;
    double sigma2_err = 0;
    double acceptance = 0;
    double acceptance_err = 0;
    double exp_minus_dh = 0;
    double exp_minus_dh_err = 0;

    std::vector<double> measured_dh() const {
        return {delta_h.begin() + n_therm, delta_h.end()};
    }
};

inline void finalize_stats(chain_stats& st, std::size_t block = 10) {
    const auto dh = st.measured_dh();
    if (dh.size() < 2) return;
    st.mean_dh = mean(dh);
    st.sigma2 = sample_variance(dh);
    st.sigma2_err = jackknife_stderr(dh, block, [](std::span<const double> v) {
        return sample_variance(v);
    });
    std::vector<double> acc, emdh;
    for (std::size_t i = st.n_therm; i < st.delta_h.size(); ++i) {
        acc.push_back(st.accepted[i] ? 1.0 : 0.0);
        emdh.push_back(std::exp(-st.delta_h[i]));
    }
    st.acceptance = mean(acc);
    st.acceptance_err = blocked_stderr(acc, block);
    st.exp_minus_dh = mean(emdh);
    st.exp_minus_dh_err = blocked_stderr(emdh, block);
}

template <phase_model Model>
chain_stats run_chain(Model& model, const scheme& s, const hmc_config& cfg, phase_point& state) {
    rng r(cfg.seed);
    chain_stats st;
    st.n_therm = cfg.thermalization();
    st.delta_h.reserve(cfg.n_traj);
    for (std::int64_t i = 0; i < cfg.n_traj; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        const trajectory_result res = run_trajectory(model, s, cfg, state, r);
        const auto t1 = std::chrono::steady_clock::now();
        st.delta_h.push_back(res.delta_h);
        st.accepted.push_back(res.accepted ? 1 : 0);
        st.force_evals.push_back(res.force_evals);
        st.seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
        if constexpr (has_mean_plaquette<Model>) st.plaquette.push_back(model.mean_plaquette(state.q));
    }
    finalize_stats(st);
    return st;
}

// expected acceptance for gaussian-like Delta H of variance sigma^2
inline double acceptance_erfc(double sigma2) {
    if (sigma2 < 0) throw std::invalid_argument("acceptance_erfc: sigma2 must be >= 0");
    return std::erfc(std::sqrt(sigma2 / 8.0));
}

// |d acceptance_erfc / d sigma2|, for propagating a sigma2 uncertainty into
// the model prediction
inline double acceptance_erfc_derivative(double sigma2) {
    if (sigma2 <= 0) return 0.0;
    const double x = std::sqrt(sigma2 / 8.0);
    const double inv_sqrt_pi = 0.56418958354775628695;
    return 2.0 * inv_sqrt_pi * std::exp(-x * x) * x / (2.0 * sigma2);
}

// Laplace-smoothed binomial error; keeps all-accept samples from reporting a
// zero uncertainty.
inline double acceptance_error_floor(double acceptance, std::int64_t n_samples) {
    if (n_samples < 1) return 1.0;
    const double k = acceptance * static_cast<double>(n_samples);
    const double p = (k + 1.0) / (static_cast<double>(n_samples) + 2.0);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples));
}

// optimal acceptance rate of an order-p integrator
inline double optimal_acceptance(int order_p) {
    if (order_p < 1) throw std::invalid_argument("optimal_acceptance: bad order");
    return std::exp(-1.0 / static_cast<double>(order_p));
}

// cost = n_f N / (P_acc tau)
inline double cost_metric(double n_f, double n_steps, double p_acc, double tau) {
    if (!(p_acc > 0.0) || p_acc > 1.0) throw std::invalid_argument("cost_metric: P_acc must be in (0,1]");
    if (!(tau > 0.0)) throw std::invalid_argument("cost_metric: tau must be > 0");
    return n_f * n_steps / (p_acc * tau);
}

struct scan_point {
    int n_steps = 0;
    double sigma2 = 0;
};

// Force evaluations per unit trajectory length needed to reach the target
// acceptance: fit log sigma^2 = a - b log N over the scan, invert the erfc
// acceptance model at the target, solve for N*.
inline double nf_per_unit_at_target(const std::vector<scan_point>& scan, int n_f,
                                    double target_acceptance, double tau) {
    if (scan.size() < 3) throw std::invalid_argument("nf_per_unit_at_target: need >= 3 scan points");
    for (std::size_t i = 0; i + 1 < scan.size(); ++i) {
        if (scan[i + 1].n_steps <= scan[i].n_steps)
            throw std::invalid_argument("nf_per_unit_at_target: scan must be ordered in N");
        if (scan[i + 1].sigma2 >= scan[i].sigma2)
            throw std::invalid_argument("nf_per_unit_at_target: sigma2 must decrease with N");
    }
    std::vector<double> x, y;
    for (const auto& pt : scan) {
        x.push_back(std::log(static_cast<double>(pt.n_steps)));
        y.push_back(std::log(pt.sigma2));
    }
    const auto fit = linear_fit(x, y);
    const double e = erfc_inv(target_acceptance);
    const double sigma2_target = 8.0 * e * e;
    const double log_n_star = (std::log(sigma2_target) - fit.intercept) / fit.slope;
    const double n_star = std::exp(log_n_star);
    return n_f * n_star / tau;
}

// chain log: traj, dH, accepted, plaquette, force_evals, seconds
inline void write_chain_log(const std::string& path, const chain_stats& st) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_chain_log: cannot open " + path);
    out << "traj,dH,accepted,plaquette,force_evals,seconds\n";
    char buf[256];
    for (std::size_t i = 0; i < st.delta_h.size(); ++i) {
        const double plq = i < st.plaquette.size() ? st.plaquette[i] : 0.0;
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%d,%.17g,%lld,%.6f\n", i, st.delta_h[i],
                      st.accepted[i], plq, static_cast<long long>(st.force_evals[i]),
                      st.seconds[i]);
        out << buf;
    }
}

} // namespace fgi
