#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

#include "rtlens/cyclotomic.hpp"
#include "rtlens/invariant.hpp"
#include "rtlens/numeric.hpp"

namespace rtlens {

inline constexpr const char* kSchemaTag = "rt-lens/1";

/// Doubles rendered at 15 significant digits; floats travel as strings so
/// the byte-level output is pinned by us, not by a JSON library.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

/// Canonical-form serialization: {order, coeffs}, coefficients in lowest
/// terms ("p" or "p/q").  Round-trips bit-exactly.
inline nlohmann::json cyc_to_json(const Cyclotomic& x) {
    nlohmann::json j;
    j["order"] = x.order();
    auto coeffs = x.canonical_coeffs();
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : coeffs) arr.push_back(rational_to_string(c));
    j["coeffs"] = std::move(arr);
    return j;
}

inline Cyclotomic cyc_from_json(const nlohmann::json& j) {
    long order = j.at("order").get<long>();
    const auto& arr = j.at("coeffs");
    if (!arr.is_array() || arr.size() != static_cast<std::size_t>(order))
        throw Error("cyclotomic json: coeffs must be an array of length 'order'");
    Cyclotomic out(order);
    for (long k = 0; k < order; ++k) {
        Rational c = rational_from_string(arr[k].get<std::string>());
        out += Cyclotomic::from_rational(order, c).rotated(k);
    }
    return out;
}

inline nlohmann::json complex_to_json(const std::complex<double>& z) {
    return nlohmann::json{{"re", format_double(z.real())}, {"im", format_double(z.imag())}};
}

inline nlohmann::json invariant_to_json(const InvariantResult& r, const std::string& algebra, long N,
                                        const LensSpec& spec, long embedding_index,
                                        bool with_timings = false) {
    nlohmann::json j;
    j["schema"] = kSchemaTag;
    j["command"] = "invariant";
    j["algebra"] = algebra;
    j["order"] = N;
    j["lens"] = {{"m", spec.m}, {"n", spec.n}};
    j["hj_terms"] = r.hj.terms;
    j["strategy"] = strategy_name(r.strategy);
    j["sign_count"] = r.sign_count;
    j["embedding_index"] = embedding_index;
    j["sigma"] = cyc_to_json(r.sigma);
    j["f"] = cyc_to_json(r.f);
    j["nabla"] = cyc_to_json(r.nabla);
    j["embedded"] = {{"sigma", complex_to_json(r.sigma.embed(embedding_index))},
                     {"f", complex_to_json(r.f.embed(embedding_index))},
                     {"nabla", complex_to_json(r.nabla.embed(embedding_index))}};
    if (with_timings)
        j["timings"] = {{"kernel_ms", r.timings.kernel_ms},
                        {"normalize_ms", r.timings.normalize_ms},
                        {"total_ms", r.timings.total_ms}};
    return j;
}

/// CSV field quoting: wrap in double quotes, double any inner quotes.
inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

} // namespace rtlens
