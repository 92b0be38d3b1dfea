#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fgi/rational.hpp"
#include "fgi/scheme.hpp"

namespace fgi {

// Error multipliers specific to the Hessian-free force-gradient update, from
// the recursive construction of the scheme: base values set by the central
// exponential, one update per symmetric transformation working outward.
// gamma5 weights the h^5 deviation, zeta11..zeta13 the h^7 ones. nu/sigma are
// the order-1 multipliers of the fully assembled scheme (1 for any consistent
// one). The zeta values depend on a running-sum convention for nu/sigma that
// the construction does not pin down; here the sums include the current
// transformation. gamma5 is convention-free.
//
// gamma5_exact is filled whenever every force-gradient stage carries exact
// rational coefficients, so rational anchors can be tested without rounding.
struct hf_multiplier_set {
    long double gamma5 = 0;
    long double zeta11 = 0;
    long double zeta12 = 0;
    long double zeta13 = 0;
    long double nu = 0;
    long double sigma = 0;
    std::optional<rational> gamma5_exact;
};

inline hf_multiplier_set hf_multipliers(const scheme& s) {
    const std::size_t n_stages = s.n_stages();
    if (n_stages % 2 == 0 || n_stages == 0)
        throw std::invalid_argument("hf_multipliers: malformed scheme");
    const std::size_t center = (n_stages - 1) / 2;
    const int P = s.half_count();

    const stage& cst = s.stages[center];
    const bool central_momentum = cst.momentum_like();

    hf_multiplier_set m;
    bool exact_ok = true;
    rational g5r(0, 1);
    auto d_stage_rationals = [&exact_ok](const stage& st, rational& br, rational& cr) {
        if (st.b_exact && st.b_exact->valid && st.c_exact && st.c_exact->valid) {
            br = *st.b_exact;
            cr = *st.c_exact;
        } else {
            exact_ok = false;
        }
    };

    // base values from the central exponential
    if (central_momentum) {
        m.sigma = cst.b;
        if (cst.kind == stage::kind_t::D) {
            const long double b = cst.b, c = cst.c;
            m.gamma5 = 2.0L * c * c / b;
            m.zeta11 = 4.0L * c * c * c / (3.0L * b * b);
            rational br(0, 1), cr(0, 1);
            d_stage_rationals(cst, br, cr);
            if (exact_ok) {
                g5r = rational(2, 1) * cr * cr / br;
                exact_ok = g5r.valid;
            }
        }
    } else {
        m.nu = cst.a;
    }

    // Walk the symmetric transformations outward from the center. With a
    // momentum-type central exponential the wrapping puts the momentum update
    // outermost and the zeta12/zeta13 updates use the previous gamma5; with a
    // central drift the wrapping is drift-outermost and they use the updated
    // gamma5.
    const bool momentum_outermost = central_momentum;

    for (int n = 1; n <= P / 2; ++n) {
        const std::size_t d1 = static_cast<std::size_t>(2 * n - 1);
        const std::size_t d2 = static_cast<std::size_t>(2 * n);
        const stage& inner = s.stages[center - d1];
        const stage* outer = (d2 <= center) ? &s.stages[center - d2] : nullptr;

        long double a, b, c;
        const stage* dstage = nullptr;
        if (momentum_outermost) {
            a = inner.a;
            // an omitted boundary momentum stage is the zero update
            b = outer ? outer->b : 0.0L;
            c = outer ? outer->c : 0.0L;
            if (outer) dstage = outer;
        } else {
            b = inner.b;
            c = inner.c;
            dstage = &inner;
            a = outer ? outer->a : 0.0L; // omitted boundary drift
        }

        m.nu += 2.0L * a;
        m.sigma += 2.0L * b;

        const long double g5_prev = m.gamma5;
        long double c2_over_3b = 0;
        if (c != 0.0L) {
            m.gamma5 += 4.0L * c * c / b;
            m.zeta11 += (8.0L * c * c * c / b + 2.0L * m.sigma * m.nu * c * c) / (3.0L * b);
            c2_over_3b = c * c / (3.0L * b);
            if (exact_ok) {
                rational br(0, 1), cr(0, 1);
                d_stage_rationals(*dstage, br, cr);
                if (exact_ok) {
                    g5r = g5r + rational(4, 1) * cr * cr / br;
                    exact_ok = g5r.valid;
                }
            }
        }
        const long double g5_ref = momentum_outermost ? g5_prev : m.gamma5;
        m.zeta12 += a * a * g5_ref / 3.0L - 2.0L * m.nu * m.nu * c2_over_3b;
        m.zeta13 += -a * a * g5_ref / 6.0L + m.nu * m.nu * c2_over_3b;
    }

    if (exact_ok) {
        m.gamma5_exact = g5r;
        m.gamma5 = g5r.to_ld(); // the rational fast path wins over accumulated rounding
    }
    return m;
}

// Weighted norms of the leading error multipliers. The externally supplied
// multipliers (alpha/beta for order 2; gamma1..4 / zeta1..10 for higher
// orders) come from the established recursions for splitting methods and are
// treated as data here.
inline double err_norm_order2(double alpha, double beta) {
    return std::sqrt(alpha * alpha + beta * beta);
}

inline double err_norm_order4(const double gamma[5]) {
    double s = 0;
    for (int i = 0; i < 4; ++i) s += gamma[i] * gamma[i];
    const double w = gamma[4] / 4.0;
    return std::sqrt(s + w * w);
}

inline double err_norm_order6(const double zeta[13]) {
    double s = 0;
    for (int i = 0; i < 10; ++i) s += zeta[i] * zeta[i];
    const double w11 = zeta[10] / 8.0, w12 = zeta[11] / 8.0, w13 = 7.0 * zeta[12] / 24.0;
    return std::sqrt(s + w11 * w11 + w12 * w12 + w13 * w13);
}

// work-adjusted efficiency 1/(n_f^p * err)
inline double efficiency(int n_f, int order_p, double err) {
    if (n_f < 1) throw std::invalid_argument("efficiency: n_f must be >= 1");
    if (!(err > 0.0)) throw std::invalid_argument("efficiency: err must be > 0");
    return 1.0 / (std::pow(static_cast<double>(n_f), order_p) * err);
}

// Leading third-order error multipliers of the three-stage schemes, in
// closed form: velocity alpha = 1/12, beta = 1/24 + 2 c1; position
// alpha = -1/24, beta = -1/12 + c1 (c1 = 0 for a plain kick).
struct order3_terms {
    double alpha = 0;
    double beta = 0;
};

inline order3_terms order3_terms_threestage(const scheme& s) {
    if (s.n_stages() != 3) throw std::invalid_argument("order3_terms_threestage: scheme must have 3 stages");
    order3_terms t;
    if (s.version == scheme_version::velocity) {
        const double c1 = s.stages[0].c;
        t.alpha = 1.0 / 12.0;
        t.beta = 1.0 / 24.0 + 2.0 * c1;
    } else {
        const double c1 = s.stages[1].c;
        t.alpha = -1.0 / 24.0;
        t.beta = -1.0 / 12.0 + c1;
    }
    return t;
}

} // namespace fgi
