// On-disk formats. An arrangement document is
//   {"dim": n, "hyperplanes": [{"coeffs": ["1","0","0"], "weight": "1/2"}, ...]}
// and a point configuration is
//   {"dim": n, "points": [{"coords": [...], "weight": "p/q"}, ...]}
// with every rational written as a string. Unknown keys are rejected.
// Serialization is canonical: parse(serialize(x)) == x and re-serializing is
// byte-identical.
#pragma once

#include "kstab/arrangement.hpp"
#include "kstab/classp.hpp"
#include "kstab/gitdual.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace kstab {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

using nlohmann::json;

inline void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                                const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : allowed)
            if (key == k) { ok = true; break; }
        if (!ok) throw ParseError(where + ": unknown key \"" + key + "\"");
    }
}

inline const json& get_field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + ": missing key \"" + key + "\"");
    return *it;
}

inline Rat rat_field(const json& v, const std::string& where) {
    if (!v.is_string()) throw ParseError(where + ": expected a rational string");
    try {
        return parse_rat(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
}

inline int dim_field(const json& obj, const std::string& where) {
    const json& d = get_field(obj, "dim", where);
    if (!d.is_number_integer() || d.get<long long>() < 0)
        throw ParseError(where + ".dim: expected a non-negative integer");
    return static_cast<int>(d.get<long long>());
}

inline std::vector<Rat> rat_vector(const json& arr, int expected, const std::string& where) {
    if (!arr.is_array()) throw ParseError(where + ": expected an array");
    if (static_cast<int>(arr.size()) != expected)
        throw ParseError(where + ": expected " + std::to_string(expected) + " entries, found " +
                         std::to_string(arr.size()));
    std::vector<Rat> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i)
        out.push_back(rat_field(arr[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline json parse_document(const std::string& bytes) {
    try {
        return json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("JSON parse error: ") + e.what());
    }
}

}  // namespace detail

inline Arrangement arrangement_from_json(const nlohmann::json& doc) {
    using detail::json;
    if (!doc.is_object()) throw ParseError("arrangement: expected a JSON object");
    detail::reject_unknown_keys(doc, {"dim", "hyperplanes"}, "arrangement");
    const int dim = detail::dim_field(doc, "arrangement");
    const json& hyps = detail::get_field(doc, "hyperplanes", "arrangement");
    if (!hyps.is_array()) throw ParseError("arrangement.hyperplanes: expected an array");
    std::vector<std::vector<Rat>> forms;
    std::vector<Rat> weights;
    for (std::size_t i = 0; i < hyps.size(); ++i) {
        const std::string where = "hyperplanes[" + std::to_string(i) + "]";
        const json& h = hyps[i];
        if (!h.is_object()) throw ParseError(where + ": expected an object");
        detail::reject_unknown_keys(h, {"coeffs", "weight"}, where);
        forms.push_back(
            detail::rat_vector(detail::get_field(h, "coeffs", where), dim + 1, where + ".coeffs"));
        weights.push_back(detail::rat_field(detail::get_field(h, "weight", where), where + ".weight"));
    }
    try {
        return make_arrangement(dim, forms, std::move(weights));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

inline Arrangement parse_arrangement(const std::string& bytes) {
    return arrangement_from_json(detail::parse_document(bytes));
}

inline nlohmann::json arrangement_to_json(const Arrangement& a) {
    nlohmann::json doc;
    doc["dim"] = a.dim;
    doc["hyperplanes"] = nlohmann::json::array();
    for (int i = 0; i < a.size(); ++i) {
        nlohmann::json h;
        h["coeffs"] = nlohmann::json::array();
        for (const Int& c : a.hyperplanes[i].coeffs) h["coeffs"].push_back(c.get_str());
        h["weight"] = rat_str(a.weights[i]);
        doc["hyperplanes"].push_back(std::move(h));
    }
    return doc;
}

inline std::string serialize_arrangement(const Arrangement& a) {
    return arrangement_to_json(a).dump(2) + "\n";
}

inline PointConfiguration config_from_json(const nlohmann::json& doc) {
    using detail::json;
    if (!doc.is_object()) throw ParseError("configuration: expected a JSON object");
    detail::reject_unknown_keys(doc, {"dim", "points"}, "configuration");
    const int dim = detail::dim_field(doc, "configuration");
    const json& pts = detail::get_field(doc, "points", "configuration");
    if (!pts.is_array()) throw ParseError("configuration.points: expected an array");
    std::vector<std::vector<Rat>> coords;
    std::vector<Rat> weights;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::string where = "points[" + std::to_string(i) + "]";
        const json& p = pts[i];
        if (!p.is_object()) throw ParseError(where + ": expected an object");
        detail::reject_unknown_keys(p, {"coords", "weight"}, where);
        coords.push_back(
            detail::rat_vector(detail::get_field(p, "coords", where), dim + 1, where + ".coords"));
        weights.push_back(detail::rat_field(detail::get_field(p, "weight", where), where + ".weight"));
    }
    try {
        return make_config(dim, coords, std::move(weights));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

inline PointConfiguration parse_config(const std::string& bytes) {
    return config_from_json(detail::parse_document(bytes));
}

inline nlohmann::json config_to_json(const PointConfiguration& pc) {
    nlohmann::json doc;
    doc["dim"] = pc.dim;
    doc["points"] = nlohmann::json::array();
    for (int i = 0; i < pc.size(); ++i) {
        nlohmann::json p;
        p["coords"] = nlohmann::json::array();
        for (const Int& c : pc.points[i].coeffs) p["coords"].push_back(c.get_str());
        p["weight"] = rat_str(pc.weights[i]);
        doc["points"].push_back(std::move(p));
    }
    return doc;
}

inline std::string serialize_config(const PointConfiguration& pc) {
    return config_to_json(pc).dump(2) + "\n";
}

inline nlohmann::json matrix_to_json(const QMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(rat_str(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline nlohmann::json decomposition_to_json(const Decomposition& d) {
    nlohmann::json factors = nlohmann::json::array();
    for (const Factor& f : d.factors) {
        nlohmann::json doc;
        doc["ambient_dim"] = f.ambient_dim;
        doc["arrangement"] =
            f.ambient_dim == 0 ? nlohmann::json(nullptr) : arrangement_to_json(f.arrangement);
        doc["embedding"] = matrix_to_json(f.embedding);
        factors.push_back(std::move(doc));
    }
    return factors;
}

}  // namespace kstab
