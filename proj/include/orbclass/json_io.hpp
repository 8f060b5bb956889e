#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "orbclass/applications.hpp"
#include "orbclass/newton_polygon.hpp"
#include "orbclass/orbit_class.hpp"
#include "orbclass/torus_orbit.hpp"

namespace orbclass::io {

using json = nlohmann::ordered_json;

[[noreturn]] inline void schema_fail(const std::string& where, const std::string& what) {
    throw validation_error(validation_error::code::schema, where + ": " + what);
}

inline const json& member(const json& j, const std::string& where, const std::string& key) {
    if (!j.is_object()) schema_fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema_fail(where + "/" + key, "missing required field");
    return *it;
}

inline long long as_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) schema_fail(where, "expected an integer");
    return j.get<long long>();
}

inline bool as_bool(const json& j, const std::string& where) {
    if (!j.is_boolean()) schema_fail(where, "expected a boolean");
    return j.get<bool>();
}

inline std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) schema_fail(where, "expected a string");
    return j.get<std::string>();
}

inline const json& as_array(const json& j, const std::string& where) {
    if (!j.is_array()) schema_fail(where, "expected an array");
    return j;
}

/// Fractions travel as strings "p/q" (or "p"); plain JSON integers are also
/// accepted on input.
inline Rational parse_fraction(const json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return Rational(j.get<long long>());
        if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const std::exception&) {
        schema_fail(where, "malformed fraction '" + j.dump() + "'");
    }
    schema_fail(where, "expected a fraction string or an integer");
}

inline std::string fraction_json(const Rational& q) { return to_string(q); }

inline json integer_json(const Integer& n) {
    static const Integer lo = std::numeric_limits<long long>::min();
    static const Integer hi = std::numeric_limits<long long>::max();
    if (n >= lo && n <= hi) return json(static_cast<long long>(n));
    return json(n.str());
}

inline json polynomial_json(const Polynomial& p) {
    json terms = json::array();
    const auto& m = p.terms();
    for (auto it = m.rbegin(); it != m.rend(); ++it) {
        json exp = json::array();
        for (int e : it->first) exp.push_back(e);
        terms.push_back({{"exp", std::move(exp)}, {"coef", fraction_json(it->second)}});
    }
    return {{"vars", p.vars()}, {"text", p.to_text()}, {"terms", std::move(terms)}};
}

inline std::string term_text(const RationalTerm& t) {
    Polynomial numer = t.numerator() * t.scalar();
    std::string out = numer.terms().size() > 1 ? "(" + numer.to_text() + ")" : numer.to_text();
    if (t.denominator().empty()) return out;
    out += "/(";
    bool first = true;
    for (const auto& f : t.denominator()) {
        if (!first) out += "*";
        first = false;
        out += "(" + f.form.to_text() + ")";
        if (f.power > 1) out += "^" + std::to_string(f.power);
    }
    out += ")";
    return out;
}

inline std::string term_sum_text(const RationalTermSum& s) {
    if (s.terms.empty()) return "0";
    std::string out;
    for (const auto& t : s.terms) {
        std::string piece = term_text(t);
        if (!out.empty() && piece.front() != '-') out += "+";
        out += piece;
    }
    return out;
}

inline json term_sum_json(const RationalTermSum& s) {
    json terms = json::array();
    for (const auto& t : s.terms) {
        json denom = json::array();
        for (const auto& f : t.denominator()) {
            json coeffs = json::array();
            for (const auto& c : f.form.coeffs()) coeffs.push_back(fraction_json(c));
            denom.push_back({{"form", f.form.to_text()},
                             {"coeffs", std::move(coeffs)},
                             {"power", f.power}});
        }
        terms.push_back({{"scalar", fraction_json(t.scalar())},
                         {"numerator", polynomial_json(t.numerator())},
                         {"denominator", std::move(denom)}});
    }
    return {{"vars", s.vars}, {"text", term_sum_text(s)}, {"terms", std::move(terms)}};
}

// ---------------------------------------------------------------------------
// class / verify payload

struct ClassPayload {
    Representation rep;
    OrbitDatum datum;
    std::optional<Integer> stabilizer_order;
    std::optional<std::vector<long long>> projective_weights;
};

inline ClassPayload parse_class_payload(const json& j, const std::string& root = "") {
    ClassPayload out;
    const json& summands = as_array(member(j, root, "summands"), root + "/summands");
    for (std::size_t i = 0; i < summands.size(); ++i) {
        const std::string where = root + "/summands/" + std::to_string(i);
        out.rep.summands.push_back({as_int(member(summands[i], where, "a"), where + "/a"),
                                    as_int(member(summands[i], where, "b"), where + "/b")});
    }
    const json& nonzero = as_array(member(j, root, "nonzero"), root + "/nonzero");
    for (std::size_t i = 0; i < nonzero.size(); ++i)
        out.datum.nonzero.push_back(
            as_bool(nonzero[i], root + "/nonzero/" + std::to_string(i)));
    if (j.contains("points")) {
        const json& points = as_array(j["points"], root + "/points");
        for (std::size_t i = 0; i < points.size(); ++i) {
            const std::string where = root + "/points/" + std::to_string(i);
            OrbitPoint p;
            p.label = as_string(member(points[i], where, "label"), where + "/label");
            const json& orders = as_array(member(points[i], where, "orders"), where + "/orders");
            for (std::size_t k = 0; k < orders.size(); ++k)
                p.orders.push_back(as_int(orders[k], where + "/orders/" + std::to_string(k)));
            out.datum.points.push_back(std::move(p));
        }
    }
    out.datum.a_complete = as_bool(member(j, root, "a_complete"), root + "/a_complete");
    if (j.contains("stabilizer_order")) {
        long long s = as_int(j["stabilizer_order"], root + "/stabilizer_order");
        if (s < 1) schema_fail(root + "/stabilizer_order", "must be a positive integer");
        out.stabilizer_order = Integer(s);
    }
    if (j.contains("projective_weights")) {
        const json& w = as_array(j["projective_weights"], root + "/projective_weights");
        out.projective_weights.emplace();
        for (std::size_t i = 0; i < w.size(); ++i)
            out.projective_weights->push_back(
                as_int(w[i], root + "/projective_weights/" + std::to_string(i)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// torus payload

inline CharacterList parse_torus_payload(const json& j) {
    CharacterList out;
    out.d = as_int(member(j, "", "d"), "/d");
    const json& chars = as_array(member(j, "", "characters"), "/characters");
    for (std::size_t i = 0; i < chars.size(); ++i) {
        const std::string where = "/characters/" + std::to_string(i);
        const json& row = as_array(chars[i], where);
        std::vector<Integer> chi;
        for (std::size_t k = 0; k < row.size(); ++k)
            chi.emplace_back(as_int(row[k], where + "/" + std::to_string(k)));
        out.chars.push_back(std::move(chi));
    }
    const json& support = as_array(member(j, "", "support"), "/support");
    for (std::size_t i = 0; i < support.size(); ++i)
        out.support.push_back(as_bool(support[i], "/support/" + std::to_string(i)));
    return out;
}

// ---------------------------------------------------------------------------
// polygon payload

struct PolygonPayload {
    std::optional<std::vector<WeightedPoint>> raw_points;
    std::optional<ClassPayload> datum;
};

inline PolygonPayload parse_polygon_payload(const json& j) {
    PolygonPayload out;
    if (j.is_object() && j.contains("summands")) {
        out.datum = parse_class_payload(j);
        return out;
    }
    const json& points = as_array(member(j, "", "points"), "/points");
    if (points.empty()) schema_fail("/points", "need at least one point");
    out.raw_points.emplace();
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::string where = "/points/" + std::to_string(i);
        WeightedPoint p;
        p.x = parse_fraction(member(points[i], where, "x"), where + "/x");
        p.y = parse_fraction(member(points[i], where, "y"), where + "/y");
        if (points[i].contains("weight")) {
            Rational w = parse_fraction(points[i]["weight"], where + "/weight");
            if (!is_integer(w) || w < 1)
                schema_fail(where + "/weight", "must be a positive integer");
            p.weight = numerator(w);
        }
        out.raw_points->push_back(std::move(p));
    }
    return out;
}

// ---------------------------------------------------------------------------
// elliptic / ratmap payloads

struct EllipticPayload {
    long long n = 1;
    std::vector<FiberDatum> fibers;
};

inline EllipticPayload parse_elliptic_payload(const json& j) {
    EllipticPayload out;
    out.n = as_int(member(j, "", "n"), "/n");
    if (j.contains("fibers") && j.contains("types"))
        schema_fail("/types", "give either fibers or types, not both");
    if (j.contains("fibers")) {
        const json& fibers = as_array(j["fibers"], "/fibers");
        for (std::size_t i = 0; i < fibers.size(); ++i) {
            const std::string where = "/fibers/" + std::to_string(i);
            FiberDatum f;
            f.label = fibers[i].contains("label")
                          ? as_string(fibers[i]["label"], where + "/label")
                          : "";
            f.ord_a = as_int(member(fibers[i], where, "ord_a"), where + "/ord_a");
            f.ord_b = as_int(member(fibers[i], where, "ord_b"), where + "/ord_b");
            out.fibers.push_back(std::move(f));
        }
    } else if (j.contains("types")) {
        const json& types = as_array(j["types"], "/types");
        for (std::size_t i = 0; i < types.size(); ++i) {
            const std::string where = "/types/" + std::to_string(i);
            KodairaType t;
            try {
                t = parse_kodaira(as_string(types[i], where));
            } catch (const validation_error&) {
                schema_fail(where, "unknown fiber type '" + types[i].dump() + "'");
            }
            auto [oa, ob] = kodaira_witness(t);
            out.fibers.push_back({"", oa, ob});
        }
    }
    return out;
}

struct RatmapPayload {
    long long n = 2;
    std::optional<std::vector<long long>> profile;
    std::optional<HomPair> hom;
    std::vector<ProjectiveRoot> roots;
};

inline Polynomial parse_binary_form(const json& j, const std::string& where) {
    const json& arr = as_array(j, where);
    std::vector<Rational> coeffs;
    for (std::size_t i = 0; i < arr.size(); ++i)
        coeffs.push_back(parse_fraction(arr[i], where + "/" + std::to_string(i)));
    return binary_form(coeffs);
}

inline RatmapPayload parse_ratmap_payload(const json& j) {
    RatmapPayload out;
    out.n = as_int(member(j, "", "n"), "/n");
    bool has_profile = j.contains("profile");
    bool has_hom = j.contains("F") || j.contains("G");
    if (has_profile == has_hom)
        schema_fail("/profile", "give either a profile or the pair F, G");
    if (has_profile) {
        const json& profile = as_array(j["profile"], "/profile");
        out.profile.emplace();
        for (std::size_t i = 0; i < profile.size(); ++i)
            out.profile->push_back(as_int(profile[i], "/profile/" + std::to_string(i)));
        return out;
    }
    out.hom = HomPair{parse_binary_form(member(j, "", "F"), "/F"),
                      parse_binary_form(member(j, "", "G"), "/G")};
    const json& roots = as_array(member(j, "", "roots"), "/roots");
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const std::string where = "/roots/" + std::to_string(i);
        const json& pair = as_array(roots[i], where);
        if (pair.size() != 2) schema_fail(where, "expected a pair [p, q]");
        out.roots.push_back({parse_fraction(pair[0], where + "/0"),
                             parse_fraction(pair[1], where + "/1")});
    }
    return out;
}

// ---------------------------------------------------------------------------
// result serialization

inline json polygon_json(const NewtonPolygon& p) {
    json points = json::array();
    for (const auto& pt : p.defining_points())
        points.push_back({{"x", fraction_json(pt.x)},
                          {"y", fraction_json(pt.y)},
                          {"weight", integer_json(pt.weight)}});
    json vertices = json::array();
    for (const auto& [x, y] : p.vertices())
        vertices.push_back({{"x", fraction_json(x)}, {"y", fraction_json(y)}});
    json rays = json::array();
    for (const auto& r : p.rays()) rays.push_back({integer_json(r[0]), integer_json(r[1])});
    json normals = json::array();
    for (int j = 0; j < p.vertex_count(); ++j) {
        VertexNormals n = p.vertex_normals(j);
        normals.push_back({{"eta", {integer_json(n.eta[0]), integer_json(n.eta[1])}},
                           {"zeta", {integer_json(n.zeta[0]), integer_json(n.zeta[1])}},
                           {"det", integer_json(n.det)}});
    }
    PolygonScalars sc = p.scalars();
    json scalars = {{"b", fraction_json(sc.b_local)},
                    {"r", fraction_json(sc.r)},
                    {"lambda0", {fraction_json(sc.lambda0_x), fraction_json(sc.b_local)}},
                    {"s", fraction_json(sc.s)},
                    {"k", sc.k}};
    std::vector<std::string> beta_notes;
    json beta = json::array();
    for (const auto& b : p.beta_vectors(&beta_notes))
        beta.push_back({{"can", {integer_json(b.can[0]), integer_json(b.can[1])}},
                        {"res", {integer_json(b.res[0]), integer_json(b.res[1])}},
                        {"multiple", integer_json(b.multiple)},
                        {"face_value", fraction_json(b.face_value)}});
    DivisibilityReport rep = p.divisibility_check();
    json entries = json::array();
    for (const auto& e : rep.entries)
        entries.push_back({{"what", e.what},
                           {"value", fraction_json(e.value)},
                           {"integral", e.integral},
                           {"nonnegative", e.nonnegative}});
    return {{"points", std::move(points)},
            {"vertices", std::move(vertices)},
            {"rays", std::move(rays)},
            {"normals", std::move(normals)},
            {"scalars", std::move(scalars)},
            {"beta", std::move(beta)},
            {"divisibility", {{"pass", rep.pass}, {"entries", std::move(entries)}}},
            {"notes", beta_notes}};
}

} // namespace orbclass::io
