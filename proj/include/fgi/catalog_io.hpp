#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fgi/catalog.hpp"

namespace fgi {

inline const char* version_name(scheme_version v) {
    return v == scheme_version::velocity ? "velocity" : "position";
}

namespace detail {

inline std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string stage_coefficients(const scheme& s) {
    // compact stage list, e.g. "B:b=0.1;A:a=0.5;D:b=0.6,c=0.01;..."
    std::ostringstream out;
    for (std::size_t i = 0; i < s.stages.size(); ++i) {
        const auto& st = s.stages[i];
        if (i) out << ';';
        out << st.letter() << ':';
        if (st.momentum_like()) {
            out << "b=" << g17(st.b);
            if (st.kind == stage::kind_t::D) out << ",c=" << g17(st.c);
        } else {
            out << "a=" << g17(st.a);
        }
    }
    return out.str();
}

} // namespace detail

inline std::string catalog_to_csv() {
    std::ostringstream out;
    out << "name,letters,version,p,n_f,err,eff,coefficients\n";
    for (const auto& s : catalog()) {
        out << s.name << ',' << s.name << ',' << version_name(s.version) << ',' << s.order_p
            << ',' << s.n_f << ',' << detail::g17(s.err_leading) << ',' << detail::g17(s.eff)
            << ',' << '"' << detail::stage_coefficients(s) << '"' << '\n';
    }
    return out.str();
}

inline nlohmann::json catalog_to_json() {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& s : catalog()) {
        nlohmann::json stages = nlohmann::json::array();
        for (const auto& st : s.stages) {
            nlohmann::json j;
            j["kind"] = std::string(1, st.letter());
            if (st.momentum_like()) {
                j["b"] = st.b;
                if (st.kind == stage::kind_t::D) j["c"] = st.c;
            } else {
                j["a"] = st.a;
            }
            stages.push_back(j);
        }
        rows.push_back({{"name", s.name},
                        {"letters", s.name},
                        {"version", version_name(s.version)},
                        {"p", s.order_p},
                        {"n_f", s.n_f},
                        {"err", s.err_leading},
                        {"eff", s.eff},
                        {"id", s.table_id},
                        {"stages", stages}});
    }
    return rows;
}

// FNV-1a over the canonical coefficient serialization; lets result files be
// traced to the exact coefficient set that produced them.
inline std::string catalog_checksum() {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    };
    for (const auto& s : catalog()) {
        mix(s.name);
        mix(detail::stage_coefficients(s));
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace fgi
