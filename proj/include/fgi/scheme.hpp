#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fgi/rational.hpp"

namespace fgi {

// One exponential of a palindromic splitting scheme.
//   A: position update  exp(a h T)
//   B: momentum update   exp(b h V)
//   D: force-gradient momentum update exp(b h V + c h^3 C), c != 0
struct stage {
    enum class kind_t : char { A = 'A', B = 'B', D = 'D' };

    kind_t kind = kind_t::A;
    double a = 0.0; // A only
    double b = 0.0; // B/D
    double c = 0.0; // D only
    // exact values where the coefficients are rational (catalog closed forms)
    std::optional<rational> b_exact;
    std::optional<rational> c_exact;

    bool momentum_like() const { return kind != kind_t::A; }
    char letter() const { return static_cast<char>(kind); }
};

enum class scheme_version { velocity, position };

struct scheme {
    std::string name;                 // letter string, e.g. "BADAB"
    std::vector<stage> stages;        // odd length, palindromic
    scheme_version version = scheme_version::velocity;
    int order_p = 0;                  // catalog metadata; 0 if unknown
    int n_f = 0;                      // amortized force evaluations per step
    double err_leading = 0.0;         // catalog data
    double eff = 0.0;                 // catalog data
    int table_id = 0;                 // catalog cross-reference id

    std::size_t n_stages() const { return stages.size(); }
    int half_count() const { return static_cast<int>((stages.size() + 1) / 2); } // P
};

// Amortized force evaluations per step: B costs 1, a Hessian-free D costs 2
// (shift force + shifted force). Velocity versions get the whole first stage
// for free after the first step, because it coincides with the previous
// step's last stage and both its evaluations are cache hits.
inline int count_forces(const scheme& s) {
    int cost = 0;
    for (const auto& st : s.stages)
        if (st.momentum_like()) cost += (st.kind == stage::kind_t::D) ? 2 : 1;
    if (s.version == scheme_version::velocity) {
        const auto& first = s.stages.front();
        cost -= (first.kind == stage::kind_t::D) ? 2 : 1;
    }
    return cost;
}

namespace detail {
inline double coeff_of(const stage& st) { return st.momentum_like() ? st.b : st.a; }
}

// Assemble and validate a palindromic scheme from its letter string and the
// coefficient lists of the left half (inclusive of the central stage).
// a_half / b_half feed A and B/D letters in order; c_half feeds D letters.
// D stages with c == 0 are normalized to plain B stages.
inline scheme build_scheme(const std::string& letters,
                           std::vector<double> a_half,
                           std::vector<double> b_half,
                           std::vector<double> c_half = {},
                           std::vector<std::optional<rational>> b_exact_half = {},
                           std::vector<std::optional<rational>> c_exact_half = {}) {
    const std::size_t s = letters.size();
    if (s == 0 || s % 2 == 0) throw std::invalid_argument("build_scheme: stage count must be odd");
    for (char c : letters)
        if (c != 'A' && c != 'B' && c != 'D') throw std::invalid_argument("build_scheme: letters must be A/B/D");
    for (std::size_t i = 0; i < s; ++i)
        if (letters[i] != letters[s - 1 - i]) throw std::invalid_argument("build_scheme: letters not palindromic");
    for (std::size_t i = 0; i + 1 < s; ++i) {
        const bool m0 = letters[i] != 'A', m1 = letters[i + 1] != 'A';
        if (m0 == m1) throw std::invalid_argument("build_scheme: adjacent stages of the same family");
    }

    scheme out;
    out.version = (letters[0] == 'A') ? scheme_version::position : scheme_version::velocity;
    out.stages.resize(s);

    const std::size_t half = (s + 1) / 2;
    std::size_t ai = 0, bi = 0, ci = 0;
    for (std::size_t i = 0; i < half; ++i) {
        stage st;
        if (letters[i] == 'A') {
            if (ai >= a_half.size()) throw std::invalid_argument("build_scheme: too few a coefficients");
            st.kind = stage::kind_t::A;
            st.a = a_half[ai++];
        } else {
            if (bi >= b_half.size()) throw std::invalid_argument("build_scheme: too few b coefficients");
            st.kind = (letters[i] == 'D') ? stage::kind_t::D : stage::kind_t::B;
            st.b = b_half[bi];
            if (bi < b_exact_half.size()) st.b_exact = b_exact_half[bi];
            ++bi;
            if (letters[i] == 'D') {
                if (ci >= c_half.size()) throw std::invalid_argument("build_scheme: too few c coefficients");
                st.c = c_half[ci];
                if (ci < c_exact_half.size()) st.c_exact = c_exact_half[ci];
                ++ci;
                if (st.c == 0.0) st.kind = stage::kind_t::B; // plain kick in disguise
                else if (st.b == 0.0) throw std::invalid_argument("build_scheme: D stage with b = 0");
            }
        }
        out.stages[i] = st;
        out.stages[s - 1 - i] = st;
    }
    if (ai != a_half.size() || bi != b_half.size() || ci != c_half.size())
        throw std::invalid_argument("build_scheme: leftover coefficients");

    double sum_a = 0, sum_b = 0;
    for (const auto& st : out.stages)
        (st.momentum_like() ? sum_b : sum_a) += detail::coeff_of(st);
    if (std::abs(sum_a - 1.0) > 1e-15 || std::abs(sum_b - 1.0) > 1e-15)
        throw std::invalid_argument("build_scheme: stage coefficients must each sum to 1");

    out.name.clear();
    for (const auto& st : out.stages) out.name.push_back(st.letter());
    out.n_f = count_forces(out);
    return out;
}

// k-fold triple-jump composition: three applications of the base scheme with
// weights w1, 1-2w1, w1 and w1 = 1/(2 - 2^{1/(p+1)}), merging the mergeable
// seam stages (adjacent momentum exponentials add in both b and c; adjacent
// drifts add in a). Raises an even order p to p + 2k.
inline scheme triple_jump(const scheme& base, int k) {
    if (k < 1) throw std::invalid_argument("triple_jump: k must be >= 1");
    if (base.order_p % 2 != 0 || base.order_p <= 0)
        throw std::invalid_argument("triple_jump: base scheme must have even order");

    scheme cur = base;
    for (int level = 0; level < k; ++level) {
        const double p = static_cast<double>(cur.order_p);
        const double w1 = 1.0 / (2.0 - std::pow(2.0, 1.0 / (p + 1.0)));
        const double w2 = 1.0 - 2.0 * w1;
        const double w[3] = {w1, w2, w1};

        std::vector<stage> merged;
        for (int block = 0; block < 3; ++block) {
            for (const auto& st0 : cur.stages) {
                stage st = st0;
                st.b_exact.reset();
                st.c_exact.reset();
                if (st.kind == stage::kind_t::A) {
                    st.a *= w[block];
                } else {
                    st.b *= w[block];
                    st.c *= w[block] * w[block] * w[block]; // c multiplies h^3
                }
                if (!merged.empty() && merged.back().momentum_like() == st.momentum_like()) {
                    if (st.momentum_like()) {
                        merged.back().b += st.b;
                        merged.back().c += st.c;
                        merged.back().kind = (merged.back().c != 0.0) ? stage::kind_t::D : stage::kind_t::B;
                    } else {
                        merged.back().a += st.a;
                    }
                } else {
                    merged.push_back(st);
                }
            }
        }

        scheme next;
        next.stages = std::move(merged);
        next.version = cur.version;
        next.order_p = cur.order_p + 2;
        for (const auto& st : next.stages) next.name.push_back(st.letter());
        next.n_f = count_forces(next);
        cur = std::move(next);
    }
    return cur;
}

} // namespace fgi
