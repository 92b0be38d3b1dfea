#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fgi/scheme.hpp"

namespace fgi {

namespace coeffs {

// closed forms appearing in the derivations; evaluated in extended precision
inline double lambda_two_stage() {
    // 1/2 - r/12 + 1/(6r), r = (2 sqrt(326) + 36)^{1/3}
    const long double r = cbrtl(2.0L * sqrtl(326.0L) + 36.0L);
    return static_cast<double>(0.5L - r / 12.0L + 1.0L / (6.0L * r));
}

inline double forest_ruth_weight() { // 1/(2 - 2^{1/3})
    return static_cast<double>(1.0L / (2.0L - cbrtl(2.0L)));
}

inline double nine_v_order6_a2() {
    // 1/2 + r/30 + 5/(2r), r = (675 + 75 sqrt(6))^{1/3}
    const long double r = cbrtl(675.0L + 75.0L * sqrtl(6.0L));
    return static_cast<double>(0.5L + r / 30.0L + 5.0L / (2.0L * r));
}

inline double ada5_a1() { return static_cast<double>((1.0L - 1.0L / sqrtl(3.0L)) / 2.0L); }
inline double ada5_c1() { return static_cast<double>((2.0L - sqrtl(3.0L)) / 48.0L); }

} // namespace coeffs

namespace detail {

using opt_rat = std::optional<rational>;

inline opt_rat rat(std::int64_t n, std::int64_t d) { return rational(n, d); }
inline opt_rat no_rat() { return std::nullopt; }

struct row_meta {
    int p;
    int n_f;
    double err;
    double eff;
    int id;
};

struct mom_coeff {
    double b = 0;
    double c = 0;
    opt_rat b_exact = std::nullopt;
    opt_rat c_exact = std::nullopt;
};

// Assembles the build_scheme argument lists (which cover the stages up to
// the palindrome center) from per-family momentum/drift sequences.
inline scheme from_half(const std::string& name, std::vector<double> drift_half,
                        std::vector<mom_coeff> mom_half, row_meta m) {
    std::vector<double> b_half, c_half;
    std::vector<opt_rat> b_exact, c_exact;
    std::size_t mi = 0;
    const std::size_t half = (name.size() + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        if (name[i] == 'A') continue;
        if (mi >= mom_half.size()) throw std::logic_error("catalog: bad momentum list for " + name);
        const mom_coeff& mc = mom_half[mi++];
        b_half.push_back(mc.b);
        b_exact.push_back(mc.b_exact);
        if (name[i] == 'D') {
            c_half.push_back(mc.c);
            c_exact.push_back(mc.c_exact);
        } else if (mc.c != 0.0) {
            throw std::logic_error("catalog: nonzero c on a B letter in " + name);
        }
    }
    scheme s = build_scheme(name, std::move(drift_half), std::move(b_half), std::move(c_half),
                            std::move(b_exact), std::move(c_exact));
    if (s.name != name)
        throw std::logic_error("catalog: letters mismatch for " + name + " built " + s.name);
    s.order_p = m.p;
    s.err_leading = m.err;
    s.eff = m.eff;
    s.table_id = m.id;
    if (s.n_f != m.n_f) throw std::logic_error("catalog: n_f mismatch for " + name);
    return s;
}

// family builders; arguments are the free coefficients of the derivations,
// dependent ones are filled from the order-1 conditions

inline scheme three_v(const std::string& name, double c1, opt_rat c1r, row_meta m) {
    return from_half(name, {1.0}, {{0.5, c1, rat(1, 2), c1r}}, m);
}

inline scheme three_p(const std::string& name, double c1, opt_rat c1r, row_meta m) {
    return from_half(name, {0.5}, {{1.0, c1, rat(1, 1), c1r}}, m);
}

inline scheme five_v(const std::string& name, double b1, opt_rat b1r,
                     double c1, opt_rat c1r, double c2, opt_rat c2r, row_meta m) {
    const double bm = 1.0 - 2.0 * b1;
    opt_rat bmr = b1r ? opt_rat(rational(1, 1) - rational(2, 1) * *b1r) : no_rat();
    return from_half(name, {0.5}, {{b1, c1, b1r, c1r}, {bm, c2, bmr, c2r}}, m);
}

inline scheme five_p(const std::string& name, double a1, double c1, opt_rat c1r, row_meta m) {
    return from_half(name, {a1, 1.0 - 2.0 * a1}, {{0.5, c1, rat(1, 2), c1r}}, m);
}

inline scheme seven_v(const std::string& name, double a2, double b1, double c1, double c2, row_meta m) {
    return from_half(name, {a2, 1.0 - 2.0 * a2}, {{b1, c1}, {0.5 - b1, c2}}, m);
}

inline scheme seven_p(const std::string& name, double a1, double b1, double c1, double c2, row_meta m) {
    return from_half(name, {a1, 0.5 - a1}, {{b1, c1}, {1.0 - 2.0 * b1, c2}}, m);
}

inline scheme nine_v(const std::string& name, double a2, double b1, double b2,
                     double c1, double c2, double c3, row_meta m) {
    return from_half(name, {a2, 0.5 - a2},
                     {{b1, c1}, {b2, c2}, {1.0 - 2.0 * (b1 + b2), c3}}, m);
}

inline scheme nine_p(const std::string& name, double a1, double a2, double b1,
                     double c1, double c2, row_meta m) {
    return from_half(name, {a1, a2, 1.0 - 2.0 * (a1 + a2)}, {{b1, c1}, {0.5 - b1, c2}}, m);
}

inline scheme eleven_v(const std::string& name, double a2, double a3, double b1, double b2,
                       double c1, double c2, double c3, row_meta m) {
    return from_half(name, {a2, a3, 1.0 - 2.0 * (a2 + a3)},
                     {{b1, c1}, {b2, c2}, {0.5 - (b1 + b2), c3}}, m);
}

inline scheme eleven_p(const std::string& name, double a1, double a2, double b1, double b2,
                       double c1, double c2, double c3, row_meta m) {
    return from_half(name, {a1, a2, 0.5 - (a1 + a2)},
                     {{b1, c1}, {b2, c2}, {1.0 - 2.0 * (b1 + b2), c3}}, m);
}

} // namespace detail

// The complete integrator collection: every scheme with up to eleven stages
// whose coefficients the derivations pin down, with the published order,
// amortized force count, leading error norm and efficiency as metadata.
inline const std::vector<scheme>& catalog() {
    static const std::vector<scheme> rows = [] {
        using namespace detail;
        const double lam = coeffs::lambda_two_stage();
        const double fr = coeffs::forest_ruth_weight();
        const double a2o6 = coeffs::nine_v_order6_a2();

        std::vector<scheme> v;
        v.reserve(43);

        // 3 stages
        v.push_back(three_v("BAB", 0.0, no_rat(), {2, 1, 0.0932, 10.73, 1}));
        v.push_back(three_p("ABA", 0.0, no_rat(), {2, 1, 0.0932, 10.73, 2}));
        v.push_back(three_v("DAD", -1.0 / 48.0, rat(-1, 48), {2, 2, 0.0833, 3.00, 3}));
        v.push_back(three_p("ADA", 1.0 / 12.0, rat(1, 12), {2, 2, 0.0417, 6.00, 4}));

        // 5 stages
        v.push_back(five_v("BABAB", lam, no_rat(), 0.0, no_rat(), 0.0, no_rat(),
                           {2, 2, 0.00855, 29.24, 5}));
        v.push_back(five_p("ABABA", lam, 0.0, no_rat(), {2, 2, 0.00855, 29.24, 6}));
        v.push_back(five_v("BADAB", 1.0 / 6.0, rat(1, 6), 0.0, no_rat(), 1.0 / 72.0, rat(1, 72),
                           {4, 3, 0.000728, 16.96, 8}));
        v.push_back(five_v("DABAD", 1.0 / 6.0, rat(1, 6), 1.0 / 144.0, rat(1, 144), 0.0, no_rat(),
                           {4, 3, 0.00335, 3.68, 7}));
        v.push_back(five_v("DADAD", 1.0 / 6.0, rat(1, 6),
                           -0.000881991367333, no_rat(), 0.015652871623554, no_rat(),
                           {4, 4, 0.000625, 6.25, 9}));
        v.push_back(five_p("ADADA", coeffs::ada5_a1(), coeffs::ada5_c1(), no_rat(),
                           {4, 4, 0.000718, 5.44, 10}));

        // 7 stages
        v.push_back(seven_p("ABABABA", fr / 2.0, fr, 0.0, 0.0, {4, 3, 0.0283, 0.44, 12}));
        v.push_back(seven_v("BABABAB", fr, fr / 2.0, 0.0, 0.0, {4, 3, 0.0383, 0.32, 11}));
        v.push_back(seven_p("ABADABA", 0.089775972994422, 0.247597680043986,
                            0.0, 0.006911440413815, {4, 4, 0.000149, 26.19, 14}));
        v.push_back(seven_v("DABABAD", 0.258529167713908, 0.065274481323251,
                            0.003595899064589, 0.0, {4, 4, 0.000891, 4.38, 13}));
        v.push_back(seven_v("BADADAB", 0.281473422092232, 0.087960811032557,
                            0.0, 0.003060423791562, {4, 5, 0.0000498, 32.12, 15}));
        v.push_back(seven_p("ADABADA", 0.136458051118946, 0.315267858070664,
                            0.002427032834125, 0.0, {4, 5, 0.0000844, 18.95, 16}));
        v.push_back(seven_p("ADADADA", 0.116438749543126, 0.283216992495952,
                            0.001247201195115, 0.002974030329635, {4, 6, 0.0000200, 38.57, 18}));
        v.push_back(seven_v("DADADAD", 0.273005515864808, 0.080128674198082,
                            0.000271601364672, 0.002959399979707, {4, 6, 0.0000275, 28.09, 17}));

        // 9 stages
        v.push_back(nine_p("ABABABABA", 0.178617895844809, -0.066264582669818,
                           0.712341831062606, 0.0, 0.0, {4, 4, 0.000610, 6.40, 20}));
        v.push_back(nine_v("BABABABAB", 0.520943339103990, 0.164498651557576,
                           1.235692651138917, 0.0, 0.0, 0.0, {4, 4, 0.000654, 5.97, 19}));
        v.push_back(nine_v("BABADABAB", 0.200395293638238, 0.073943321445602,
                           0.258244950046509, 0.0, 0.0, 0.003147048491590,
                           {4, 5, 0.0000651, 24.57, 21}));
        v.push_back(nine_v("DABABABAD", 0.190585159174513, 0.036356798097337,
                           0.340278911234329, 0.002005691094612, 0.0, 0.0,
                           {4, 5, 0.000336, 4.76, 22}));
        v.push_back(nine_v("BADABADAB", 0.219039425103133, 0.068466565514186,
                           0.311000565033563, 0.0, 0.001602470431500, 0.0,
                           {4, 6, 0.0000105, 73.45, 24}));
        v.push_back(nine_v("DABADABAD", 0.197279141794602, 0.060885008530668,
                           0.288579639891554, 0.000429756946246, 0.0, 0.002373498029145,
                           {4, 6, 0.0000130, 59.33, 23}));
        v.push_back(nine_p("ABADADABA", 0.047802682977081, 0.265994592108478,
                           0.143282503449494, 0.0, 0.002065558490728,
                           {4, 6, 0.0000346, 22.32, 25}));
        v.push_back(nine_p("ADABABADA", 0.118030603246046, 0.295446189611111,
                           0.273985556386628, 0.001466561305710, 0.0,
                           {4, 6, 0.0000471, 16.39, 26}));
        v.push_back(nine_v("DADABADAD", 0.227758000273404, 0.070935378258660,
                           0.322911610232109, 0.000067752132787, 0.001597508440746, 0.0,
                           {4, 7, 0.0000101, 41.06, 27}));
        v.push_back(nine_p("ADADADADA", 0.094471605659163, 0.281057227947299,
                           0.227712700174579, 0.000577062053569, 0.000817399268485,
                           {4, 8, 0.00000501, 48.71, 29}));
        {
            // the unique order-6 nine-stage velocity scheme, in closed form
            const double a2 = a2o6;
            const double b1 = a2 / 3.0;
            const double b2 = -5.0 * a2 * (a2 - 1.0) / 3.0;
            const double c2 = -5.0 * a2 * a2 / 144.0 + a2 / 36.0 - 1.0 / 288.0;
            const double c3 = 1.0 / 144.0 - a2 / 36.0 * (a2 / 2.0 + 1.0);
            v.push_back(nine_v("BADADADAB", a2, b1, b2, 0.0, c2, c3,
                               {6, 7, 0.00154, 0.0055, 28}));
        }

        // 11 stages
        v.push_back(eleven_v("BABABABABAB", 0.253978510841060, -0.032302867652700,
                             0.083983152628767, 0.682236533571909, 0.0, 0.0, 0.0,
                             {4, 5, 0.0000270, 59.26, 30}));
        v.push_back(eleven_p("ABABABABABA", 0.275008121233242, -0.134795009910679,
                             -0.084429619507071, 0.354900057157426, 0.0, 0.0, 0.0,
                             {4, 5, 0.0000518, 30.89, 31}));
        v.push_back(eleven_p("ABABADABABA", 0.134257092137626, -0.007010267216916,
                             -0.485681409840328, 0.767464037573892, 0.0, 0.0, 0.002836723107629,
                             {4, 6, 0.0000154, 50.09, 33}));
        v.push_back(eleven_v("DABABABABAD", 0.282918304065611, -0.002348009438292,
                             0.080181913812571, -1.372969015964262, 0.000325098077953, 0.0, 0.0,
                             {4, 6, 0.0000166, 46.47, 32}));
        v.push_back(eleven_p("ABADABADABA", 0.062702644098210, 0.193174566017780,
                             0.149293739165427, 0.220105234408407, 0.0, 0.000966194415594, 0.0,
                             {4, 7, 0.00000445, 93.60, 36}));
        v.push_back(eleven_v("BADABABADAB", 0.201110227930330, 0.200577842713366,
                             0.065692416344302, 0.264163604920340, 0.0, 0.001036943019757, 0.0,
                             {4, 7, 0.00000520, 80.13, 34}));
        v.push_back(eleven_p("ADABABABADA", 0.115889910143319, 0.388722377182381,
                             0.282498420841510, -0.625616553474143, 0.001208219887746, 0.0, 0.0,
                             {4, 7, 0.0000128, 32.64, 37}));
        v.push_back(eleven_v("BABADADABAB", 0.122268182901557, 0.203023211433263,
                             0.055200549768959, 0.127408150658963, 0.0, 0.0, 0.001487834491987,
                             {4, 7, 0.0000189, 21.98, 35}));
        v.push_back(eleven_p("ADABADABADA", 0.083684971641549, 0.225966488946428,
                             0.199022868372193, 0.197953981691206,
                             0.000437056543403, 0.0, 0.000870457820984,
                             {4, 8, 0.00000318, 76.79, 40}));
        v.push_back(eleven_v("DABADADABAD", 0.068597474282941, 0.284851197274498,
                             -0.029456704762871, 0.228751459942521,
                             0.000410146066173, 0.0, 0.001249935251564,
                             {4, 8, 0.00000355, 68.84, 38}));
        v.push_back(eleven_v("DADABABADAD", 0.203263079324187, 0.200698071607808,
                             0.066202529912271, 0.267856111220228,
                             0.000012570620797, 0.001042408779514, 0.0,
                             {4, 8, 0.00000519, 47.08, 39}));
        v.push_back(eleven_p("ADADABADADA", 0.082541033171754, 0.228637847036999,
                             0.196785139280847, 0.206783248777282,
                             0.000317260402502, 0.000555360763892, 0.0,
                             {4, 9, 0.00000235, 64.99, 43}));
        v.push_back(eleven_v("BADADADADAB", 0.270990466773838, 0.635374358266882,
                             0.090330155591279, 0.430978044876253,
                             0.0, 0.002637435980472, -0.000586445610932,
                             {6, 9, 0.00000699, 0.27, 42}));
        v.push_back(eleven_p("ADADADADADA", 0.109534125980058, 0.426279051773841,
                             0.268835839917653, 0.529390037396794,
                             0.000806354602850, 0.007662601517364, -0.011627206142396,
                             {6, 10, 0.00000603, 0.17, 45}));
        return v;
    }();
    return rows;
}

inline const scheme& find_scheme(const std::string& name) {
    for (const auto& s : catalog())
        if (s.name == name) return s;
    throw std::invalid_argument("unknown scheme: " + name);
}

inline bool has_scheme(const std::string& name) {
    for (const auto& s : catalog())
        if (s.name == name) return true;
    return false;
}

// ---- closed-form order-condition check ----------------------------------

struct order_condition_report {
    bool checkable = false;
    bool pass = false;
    std::vector<std::string> labels;
    std::vector<double> residuals; // one per label

    double max_residual() const {
        double m = 0;
        for (double r : residuals) m = std::max(m, std::abs(r));
        return m;
    }
};

namespace detail {

// extract the free parameters of the derivation templates back out of a
// stage list (first occurrence of each independent coefficient)
struct family_params {
    std::vector<double> a, b, c;
};

inline family_params pick_params(const scheme& s) {
    family_params f;
    for (const auto& st : s.stages) {
        if (st.momentum_like()) { f.b.push_back(st.b); f.c.push_back(st.c); }
        else f.a.push_back(st.a);
    }
    return f;
}

} // namespace detail

// Residuals of the closed-form constraints that the derivations state for
// the order-(>=4) members of the 5-stage velocity, 7-stage velocity,
// 7-stage position and 9-stage position families. Families with two sign
// branches pass if either branch satisfies all of its constraints.
inline order_condition_report validate_order_conditions(const scheme& s, double tol = 1e-12) {
    order_condition_report rep;
    const std::size_t n = s.n_stages();
    const auto f = detail::pick_params(s);

    auto finish = [&](std::vector<std::string> labels, std::vector<double> res) {
        rep.checkable = true;
        rep.labels = std::move(labels);
        rep.residuals = std::move(res);
        rep.pass = rep.max_residual() < tol;
    };

    if (s.order_p < 4) return rep; // constraints below are the order-3/4 conditions

    if (n == 5 && s.version == scheme_version::velocity) {
        const double b1 = f.b[0], c1 = f.c[0], c2 = f.c[1];
        finish({"b1 - 1/6", "c2 - (1/72 - 2 c1)"},
               {b1 - 1.0 / 6.0, c2 - (1.0 / 72.0 - 2.0 * c1)});
    } else if (n == 7 && s.version == scheme_version::velocity) {
        const double b1 = f.b[0], c1 = f.c[0], c2 = f.c[1], a2 = f.a[0];
        const double r1 = b1 - (6.0 + 1.0 / (a2 * (a2 - 1.0))) / 12.0;
        const double r2 = c1 + (6.0 + 288.0 * c2 - 1.0 / (a2 * (a2 - 1.0) * (a2 - 1.0))) / 288.0;
        finish({"b1 constraint", "c1 constraint"}, {r1, r2});
    } else if (n == 7 && s.version == scheme_version::position) {
        const double a1 = f.a[0], b1 = f.b[0], c1 = f.c[0], c2 = f.c[1];
        double best_r1 = 0, best_r2 = 0, best = -1;
        for (double sg : {1.0, -1.0}) {
            const double r1 = a1 - (0.5 + sg / std::sqrt(24.0 * b1));
            const double r2 = c1 - (1.0 - 12.0 * c2 + sg * std::sqrt(6.0 * b1) * (1.0 - b1)) / 24.0;
            const double m = std::max(std::abs(r1), std::abs(r2));
            if (best < 0 || m < best) { best = m; best_r1 = r1; best_r2 = r2; }
        }
        finish({"a1 constraint", "c1 constraint"}, {best_r1, best_r2});
    } else if (n == 9 && s.version == scheme_version::position) {
        const double a1 = f.a[0], a2 = f.a[1], b1 = f.b[0], c1 = f.c[0], c2 = f.c[1];
        double best_r1 = 0, best_r2 = 0, best = -1;
        const double root = std::sqrt(3.0) * std::sqrt(1.0 - 24.0 * a2 * a2 * b1 + 48.0 * a2 * a2 * b1 * b1);
        for (double sg : {1.0, -1.0}) {
            const double r1 = a1 - (3.0 - 6.0 * a2 + 12.0 * a2 * b1 + sg * root) / 6.0;
            const double r2 = c2 - (2.0 - 12.0 * a2 * b1 + 24.0 * a2 * b1 * b1 + sg * root - 48.0 * c1) / 48.0;
            const double m = std::max(std::abs(r1), std::abs(r2));
            if (best < 0 || m < best) { best = m; best_r1 = r1; best_r2 = r2; }
        }
        finish({"a1 constraint", "c2 constraint"}, {best_r1, best_r2});
    }
    return rep; // anything else: not checkable in closed form
}

} // namespace fgi
