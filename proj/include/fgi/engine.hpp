#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "fgi/phase_space.hpp"
#include "fgi/scheme.hpp"
#include "fgi/stats.hpp"

namespace fgi {

// A model bundles one physical system: potential, its gradient ("force", the
// vector subtracted from the momenta by a kick), and the mass metric of the
// kinetic part. An analytic force-gradient vector 2 Hess(V) M^{-1} grad(V)
// is optional; models without one fall back to a directional finite
// difference when an exact force-gradient update is requested.
template <class M>
concept phase_model = requires(M& m, const std::vector<double>& q, std::vector<double>& out) {
    { m.dim() } -> std::convertible_to<std::size_t>;
    { m.potential(q) } -> std::convertible_to<double>;
    { m.metric() } -> std::convertible_to<const mass_metric&>;
    m.force(q, out);
};

template <class M>
concept has_fg_term = requires(M& m, const std::vector<double>& q, std::vector<double>& out) {
    m.fg_term(q, out);
};

enum class step_mode { hessian_free, exact_fg, exact_fg_fd };

struct eval_counter {
    std::int64_t force_evals = 0;
    std::int64_t fg_evals = 0;
    std::int64_t cache_hits = 0;
};

template <phase_model Model>
double hamiltonian(Model& model, const phase_point& x) {
    return kinetic_energy(x, model.metric()) + model.potential(x.q);
}

// Drives one trajectory of a scheme against a model. Owns the force cache:
// entries are keyed by a configuration version (bumped on every position
// change) plus the force-gradient shift scalar, so the merged boundary
// evaluations of consecutive velocity-version steps hit the cache without
// comparing floating-point positions.
template <phase_model Model>
class stepper {
public:
    stepper(const scheme& s, Model& model, step_mode mode)
        : scheme_(s), model_(model), mode_(mode) {
        if (mode == step_mode::exact_fg && !has_fg_term<Model>)
            throw std::invalid_argument("stepper: exact_fg requires a model with an analytic fg_term");
    }

    const eval_counter& counter() const { return counter_; }
    void reset_counter() { counter_ = {}; }

    void step(phase_point& x, double h) {
        if (!(h >= 0.0) || !std::isfinite(h)) throw std::invalid_argument("stepper: bad step size");
        if (x.dim() != model_.dim()) throw std::invalid_argument("stepper: dimension mismatch");
        for (const auto& st : scheme_.stages) {
            switch (st.kind) {
            case stage::kind_t::A:
                drift(x, model_.metric(), st.a * h);
                bump_version();
                break;
            case stage::kind_t::B:
                kick(x, force_at(x.q, 0.0), st.b * h);
                break;
            case stage::kind_t::D:
                d_stage(x, st.b, st.c, h);
                break;
            }
        }
    }

    void integrate(phase_point& x, double h, std::int64_t n_steps) {
        for (std::int64_t i = 0; i < n_steps; ++i) step(x, h);
    }

    // One force-gradient momentum update. Hessian-free: evaluate the force at
    // a temporarily shifted configuration q' = q - (2c h^2/b) M^{-1} grad V(q)
    // and kick with step b h. Exact: kick with b h grad V(q) - c h^3 fg(q).
    void d_stage(phase_point& x, double b, double c, double h) {
        if (b == 0.0) throw std::invalid_argument("d_stage: b must be nonzero");
        if (c == 0.0) { // plain kick
            kick(x, force_at(x.q, 0.0), b * h);
            return;
        }
        switch (mode_) {
        case step_mode::hessian_free: {
            const double shift = 2.0 * c * h * h / b;
            kick(x, shifted_force(x.q, shift), b * h);
            break;
        }
        case step_mode::exact_fg:
        case step_mode::exact_fg_fd: {
            std::span<const double> f = force_at(x.q, 0.0);
            std::span<const double> g = fg_at(x.q);
            const double bh = b * h, ch3 = c * h * h * h;
            for (std::size_t i = 0; i < x.p.size(); ++i) x.p[i] += -bh * f[i] + ch3 * g[i];
            break;
        }
        }
    }

private:
    struct cache_entry {
        double shift;
        std::vector<double> value;
    };

    void bump_version() {
        ++version_;
        force_cache_.clear();
        fg_valid_ = false;
    }

    std::span<const double> force_at(const std::vector<double>& q, double shift_key) {
        for (const auto& e : force_cache_)
            if (e.shift == shift_key) {
                ++counter_.cache_hits;
                return e.value;
            }
        cache_entry e;
        e.shift = shift_key;
        e.value.resize(q.size());
        model_.force(q, e.value);
        ++counter_.force_evals;
        force_cache_.push_back(std::move(e));
        return force_cache_.back().value;
    }

    std::span<const double> shifted_force(const std::vector<double>& q, double shift) {
        if (shift == 0.0) return force_at(q, 0.0);
        for (const auto& e : force_cache_)
            if (e.shift == shift) {
                ++counter_.cache_hits;
                return e.value;
            }
        std::span<const double> f = force_at(q, 0.0);
        scratch_q_.resize(q.size());
        scratch_v_.resize(q.size());
        model_.metric().apply_inverse(f, scratch_v_);
        for (std::size_t i = 0; i < q.size(); ++i) scratch_q_[i] = q[i] - shift * scratch_v_[i];
        cache_entry e;
        e.shift = shift;
        e.value.resize(q.size());
        model_.force(scratch_q_, e.value);
        ++counter_.force_evals;
        force_cache_.push_back(std::move(e));
        return force_cache_.back().value;
    }

    std::span<const double> fg_at(const std::vector<double>& q) {
        if (fg_valid_) {
            ++counter_.cache_hits;
            return fg_cache_;
        }
        fg_cache_.resize(q.size());
        if (mode_ == step_mode::exact_fg) {
            if constexpr (has_fg_term<Model>) {
                model_.fg_term(q, fg_cache_);
                ++counter_.fg_evals;
            } else {
                throw std::logic_error("fg_at: no analytic fg_term");
            }
        } else {
            // directional central difference of the force along u = M^{-1} grad V:
            // fg ~= [grad V(q + eps u) - grad V(q - eps u)] / eps
            std::span<const double> f = force_at(q, 0.0);
            scratch_v_.resize(q.size());
            model_.metric().apply_inverse(f, scratch_v_);
            double qmax = 0;
            for (double qi : q) qmax = std::max(qmax, std::abs(qi));
            const double eps = std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + qmax);
            scratch_q_.resize(q.size());
            std::vector<double> fp(q.size()), fm(q.size());
            for (std::size_t i = 0; i < q.size(); ++i) scratch_q_[i] = q[i] + eps * scratch_v_[i];
            model_.force(scratch_q_, fp);
            for (std::size_t i = 0; i < q.size(); ++i) scratch_q_[i] = q[i] - eps * scratch_v_[i];
            model_.force(scratch_q_, fm);
            counter_.force_evals += 2;
            ++counter_.fg_evals;
            for (std::size_t i = 0; i < q.size(); ++i) fg_cache_[i] = (fp[i] - fm[i]) / eps;
        }
        fg_valid_ = true;
        return fg_cache_;
    }

    const scheme& scheme_;
    Model& model_;
    step_mode mode_;
    eval_counter counter_;
    std::uint64_t version_ = 0;
    std::vector<cache_entry> force_cache_;
    std::vector<double> fg_cache_;
    bool fg_valid_ = false;
    std::vector<double> scratch_q_, scratch_v_;
};

template <phase_model Model>
phase_point integrate(const scheme& s, Model& model, phase_point x, double h,
                      std::int64_t n_steps, step_mode mode, eval_counter* counter = nullptr) {
    stepper<Model> stp(s, model, mode);
    stp.integrate(x, h, n_steps);
    if (counter) *counter = stp.counter();
    return x;
}

// max-norm defect of rho . Phi_h . rho . Phi_h applied to x
template <phase_model Model>
double reversibility_defect(const scheme& s, Model& model, const phase_point& x0,
                            double h, step_mode mode) {
    phase_point x = x0;
    {
        stepper<Model> stp(s, model, mode);
        stp.step(x, h);
    }
    flip_momenta(x);
    {
        stepper<Model> stp(s, model, mode);
        stp.step(x, h);
    }
    flip_momenta(x);
    double d = 0;
    for (std::size_t i = 0; i < x.q.size(); ++i) d = std::max(d, std::abs(x.q[i] - x0.q[i]));
    for (std::size_t i = 0; i < x.p.size(); ++i) d = std::max(d, std::abs(x.p[i] - x0.p[i]));
    return d;
}

namespace detail {

inline double det_inplace(std::vector<double>& a, std::size_t n) {
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (a[piv * n + col] == 0.0) return 0.0;
        if (piv != col) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a[piv * n + k], a[col * n + k]);
            det = -det;
        }
        det *= a[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            for (std::size_t k = col; k < n; ++k) a[r * n + k] -= f * a[col * n + k];
        }
    }
    return det;
}

} // namespace detail

// |det dPhi_h/d(p,q)| by central finite differences over all phase-space
// coordinates; intended for low-dimensional checks of volume preservation.
template <phase_model Model>
double jacobian_det(const scheme& s, Model& model, const phase_point& x0,
                    double h, step_mode mode) {
    const std::size_t d = x0.dim();
    const std::size_t n = 2 * d;
    if (n > 16) throw std::invalid_argument("jacobian_det: phase dimension too large");

    auto apply = [&](const phase_point& x) {
        phase_point y = x;
        stepper<Model> stp(s, model, mode);
        stp.step(y, h);
        return y;
    };

    std::vector<double> jac(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        phase_point xp = x0, xm = x0;
        double base = (j < d) ? x0.p[j] : x0.q[j - d];
        const double eps = 1e-5 * (1.0 + std::abs(base));
        if (j < d) { xp.p[j] += eps; xm.p[j] -= eps; }
        else { xp.q[j - d] += eps; xm.q[j - d] -= eps; }
        const phase_point yp = apply(xp), ym = apply(xm);
        for (std::size_t i = 0; i < d; ++i) {
            jac[i * n + j] = (yp.p[i] - ym.p[i]) / (2 * eps);
            jac[(i + d) * n + j] = (yp.q[i] - ym.q[i]) / (2 * eps);
        }
    }
    return std::abs(detail::det_inplace(jac, n));
}

struct order_measurement {
    double slope = 0.0;
    std::vector<double> h_values;
    std::vector<double> errors; // max-norm over all phase components
    bool monotone = true;
};

// Global-error convergence measurement over a list of step sizes against a
// Richardson-extrapolated reference computed with the same scheme at a
// quarter of the finest step.
template <phase_model Model>
order_measurement measure_order(const scheme& s, Model& model, const phase_point& x0,
                                double t_end, std::vector<double> h_list, step_mode mode) {
    if (h_list.size() < 3) throw std::invalid_argument("measure_order: need >= 3 step sizes");
    std::sort(h_list.begin(), h_list.end(), std::greater<>());

    auto run = [&](double h_target) {
        const std::int64_t n = std::max<std::int64_t>(1, std::llround(t_end / h_target));
        const double h = t_end / static_cast<double>(n);
        return integrate(s, model, x0, h, n, mode);
    };

    const double h_fine = h_list.back() / 4.0;
    const phase_point r1 = run(h_fine);
    const phase_point r2 = run(h_fine / 2.0);
    const int p = s.order_p >= 2 ? s.order_p : 2;
    const double w = std::pow(2.0, p) - 1.0;
    phase_point ref = r2;
    for (std::size_t i = 0; i < ref.q.size(); ++i) ref.q[i] += (r2.q[i] - r1.q[i]) / w;
    for (std::size_t i = 0; i < ref.p.size(); ++i) ref.p[i] += (r2.p[i] - r1.p[i]) / w;

    order_measurement out;
    out.h_values = h_list;
    for (double h : h_list) {
        const phase_point y = run(h);
        double e = 0;
        for (std::size_t i = 0; i < y.q.size(); ++i) e = std::max(e, std::abs(y.q[i] - ref.q[i]));
        for (std::size_t i = 0; i < y.p.size(); ++i) e = std::max(e, std::abs(y.p[i] - ref.p[i]));
        out.errors.push_back(e);
    }
    for (std::size_t i = 0; i + 1 < out.errors.size(); ++i)
        if (out.errors[i + 1] >= out.errors[i]) out.monotone = false;

    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < h_list.size(); ++i) {
        if (out.errors[i] <= 0) continue;
        lx.push_back(std::log(h_list[i]));
        ly.push_back(std::log(out.errors[i]));
    }
    if (lx.size() >= 2) out.slope = linear_fit(lx, ly).slope;
    return out;
}

struct drift_measurement {
    std::vector<double> times;
    std::vector<double> rel_energy_error;
    double slope = 0.0;        // robust (median-of-pairs) drift rate per unit time
    double slope_stderr = 0.0; // least-squares standard error at the same data
    double amplitude = 0.0;    // max - min of the series
};

// Relative energy error along one long trajectory plus a robust linear fit of
// its trend.
template <phase_model Model>
drift_measurement energy_drift(const scheme& s, Model& model, const phase_point& x0,
                               double h, double t_end, step_mode mode,
                               std::int64_t sample_stride = 1) {
    const std::int64_t n = std::max<std::int64_t>(1, std::llround(t_end / h));
    drift_measurement out;
    phase_point x = x0;
    stepper<Model> stp(s, model, mode);
    const double e0 = hamiltonian(model, x);
    for (std::int64_t i = 1; i <= n; ++i) {
        stp.step(x, h);
        if (i % sample_stride == 0 || i == n) {
            out.times.push_back(h * static_cast<double>(i));
            out.rel_energy_error.push_back((hamiltonian(model, x) - e0) / e0);
        }
    }
    // thin long series before the O(n^2) median-of-pairs slope
    std::vector<double> ts, es;
    const std::size_t stride = std::max<std::size_t>(1, out.times.size() / 1024);
    for (std::size_t i = 0; i < out.times.size(); i += stride) {
        ts.push_back(out.times[i]);
        es.push_back(out.rel_energy_error[i]);
    }
    out.slope = theil_sen_slope(ts, es);
    out.slope_stderr = linear_fit(ts, es).slope_stderr;
    double lo = out.rel_energy_error[0], hi = lo;
    for (double v : out.rel_energy_error) { lo = std::min(lo, v); hi = std::max(hi, v); }
    out.amplitude = hi - lo;
    return out;
}

} // namespace fgi
