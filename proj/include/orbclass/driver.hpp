#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orbclass/json_io.hpp"
#include "orbclass/verify.hpp"

namespace orbclass::io {

struct RunOutcome {
    json body;
    std::string text;
    int exit_code = 0;
};

namespace detail {

inline void append_notes(json& body, std::string& text,
                         const std::vector<std::string>& notes) {
    for (const auto& n : notes) {
        body["notes"].push_back(n);
        text += "note: " + n + "\n";
    }
}

inline void scale_class(EquivariantClass& cls, std::vector<std::string>& notes,
                        const std::optional<Integer>& stabilizer_order) {
    if (!stabilizer_order) return;
    cls.poly = cls.poly * Rational(Integer(1), *stabilizer_order);
    notes.push_back("class and degree divided by the supplied stabilizer order " +
                    stabilizer_order->str());
}

inline RunOutcome finish_class_like(json body, std::string text,
                                    const EquivariantClass& cls,
                                    const ClassPayload& payload,
                                    const Representation& rep,
                                    std::vector<std::string> notes) {
    body["class"] = polynomial_json(cls.poly);
    body["codim"] = cls.codim;
    text += "class = " + cls.poly.to_text() + "\n";
    text += "codim = " + std::to_string(cls.codim) + "\n";
    if (payload.projective_weights) {
        Rational degree = projective_degree(cls, rep, *payload.projective_weights);
        body["degree"] = fraction_json(degree);
        body["stabilizer_weighted"] = !payload.stabilizer_order.has_value();
        text += "degree = " + to_string(degree) + "\n";
        text += std::string("stabilizer_weighted = ") +
                (payload.stabilizer_order ? "false" : "true") + "\n";
    }
    body["notes"] = json::array();
    append_notes(body, text, notes);
    return {std::move(body), std::move(text), 0};
}

inline RunOutcome run_class(const json& payload) {
    ClassPayload p = parse_class_payload(payload);
    ClassResult res = orbit_class(p.rep, p.datum);
    scale_class(res.cls, res.notes, p.stabilizer_order);
    return finish_class_like(json::object(), "", res.cls, p, p.rep, res.notes);
}

inline RunOutcome run_elliptic(const json& payload) {
    EllipticPayload p = parse_elliptic_payload(payload);
    EllipticResult res = elliptic_result(p.n, p.fibers);
    json body;
    std::string text;
    body["n"] = res.n;
    text += "n = " + std::to_string(res.n) + "\n";
    body["class"] = polynomial_json(res.cls.poly);
    body["codim"] = res.cls.codim;
    body["degree"] = fraction_json(res.degree);
    body["stabilizer_weighted"] = true;
    text += "class = " + res.cls.poly.to_text() + "\n";
    text += "codim = " + std::to_string(res.cls.codim) + "\n";
    text += "degree = " + to_string(res.degree) + "\n";
    text += "stabilizer_weighted = true\n";
    body["fibers"] = json::array();
    for (const auto& f : res.fibers) {
        std::string type = f.type ? kodaira_label(*f.type) : "non-minimal";
        body["fibers"].push_back({{"label", f.fiber.label},
                                  {"ord_a", f.fiber.ord_a},
                                  {"ord_b", f.fiber.ord_b},
                                  {"c", fraction_json(f.c)},
                                  {"type", type},
                                  {"contribution", fraction_json(f.contribution)}});
        text += f.fiber.label + ": ord = (" + std::to_string(f.fiber.ord_a) + "," +
                std::to_string(f.fiber.ord_b) + ") c = " + to_string(f.c) +
                " type = " + type + " contribution = " + to_string(f.contribution) + "\n";
    }
    body["notes"] = json::array();
    append_notes(body, text, res.notes);
    return {std::move(body), std::move(text), 0};
}

inline RunOutcome run_ratmap(const json& payload) {
    RatmapPayload p = parse_ratmap_payload(payload);
    json body;
    std::string text;
    std::vector<long long> profile;
    if (p.profile) {
        profile = *p.profile;
    } else {
        SplitResult split = split_hom(*p.hom);
        if (split.n != p.n)
            throw validation_error(validation_error::code::bad_argument,
                                   "n does not match the common degree of F and G");
        profile = profile_from_roots(split.fixed_form, p.roots, &split.divergence);
        body["divergence"] = polynomial_json(split.divergence);
        body["fixed_form"] = polynomial_json(split.fixed_form);
        text += "divergence = " + split.divergence.to_text() + "\n";
        text += "fixed_form = " + split.fixed_form.to_text() + "\n";
    }
    RatmapResult res = ratmap_result(p.n, profile);
    body["n"] = res.n;
    body["profile"] = res.profile;
    body["class"] = polynomial_json(res.cls.poly);
    body["codim"] = res.cls.codim;
    body["degree"] = fraction_json(res.degree);
    body["stabilizer_weighted"] = false;
    text += "n = " + std::to_string(res.n) + "\n";
    text += "profile =";
    for (long long j : res.profile) text += " " + std::to_string(j);
    text += "\n";
    text += "class = " + res.cls.poly.to_text() + "\n";
    text += "codim = " + std::to_string(res.cls.codim) + "\n";
    text += "degree = " + to_string(res.degree) + "\n";
    text += "stabilizer_weighted = false\n";
    body["notes"] = json::array();
    append_notes(body, text, res.notes);
    return {std::move(body), std::move(text), 0};
}

inline RunOutcome run_torus(const json& payload) {
    CharacterList cl = parse_torus_payload(payload);
    TorusClassResult res = torus_orbit_class(cl);
    json body;
    std::string text;
    body["pointed"] = res.pointed;
    body["e_sigma"] = term_sum_json(res.e_sigma);
    body["class"] = polynomial_json(res.cls);
    text += std::string("pointed = ") + (res.pointed ? "true" : "false") + "\n";
    text += "e_sigma = " + term_sum_text(res.e_sigma) + "\n";
    text += "class = " + res.cls.to_text() + "\n";
    body["notes"] = json::array();
    append_notes(body, text, res.notes);
    return {std::move(body), std::move(text), 0};
}

inline std::string polygon_text(const NewtonPolygon& p) {
    std::string text = "vertices =";
    for (const auto& [x, y] : p.vertices())
        text += " (" + to_string(x) + "," + to_string(y) + ")";
    text += "\nrays =";
    for (const auto& r : p.rays())
        text += " (" + r[0].str() + "," + r[1].str() + ")";
    text += "\n";
    for (int j = 0; j < p.vertex_count(); ++j) {
        VertexNormals n = p.vertex_normals(j);
        text += "vertex " + std::to_string(j) + ": eta = (" + n.eta[0].str() + "," +
                n.eta[1].str() + ") zeta = (" + n.zeta[0].str() + "," + n.zeta[1].str() +
                ") det = " + n.det.str() + "\n";
    }
    PolygonScalars sc = p.scalars();
    text += "b = " + to_string(sc.b_local) + " r = " + to_string(sc.r) + " lambda0 = (" +
            to_string(sc.lambda0_x) + "," + to_string(sc.b_local) +
            ") s = " + to_string(sc.s) + " k = " + std::to_string(sc.k) + "\n";
    for (const auto& b : p.beta_vectors()) {
        text += "beta: can = (" + b.can[0].str() + "," + b.can[1].str() + ") res = (" +
                b.res[0].str() + "," + b.res[1].str() +
                ") face_value = " + to_string(b.face_value) + "\n";
    }
    text += std::string("divisibility = ") +
            (p.divisibility_check().pass ? "pass" : "fail") + "\n";
    return text;
}

inline RunOutcome run_polygon(const json& payload) {
    PolygonPayload p = parse_polygon_payload(payload);
    if (p.raw_points) {
        NewtonPolygon poly = build_polygon(*p.raw_points);
        json body = polygon_json(poly);
        std::string text = polygon_text(poly);
        for (const auto& n : body["notes"]) text += "note: " + n.get<std::string>() + "\n";
        return {std::move(body), std::move(text), 0};
    }
    validate(p.datum->rep, p.datum->datum);
    long long shift = normalizing_twist(p.datum->rep);
    Representation shaped = twist_rep(p.datum->rep, shift);
    json body;
    body["polygons"] = json::array();
    std::string text;
    for (const auto& point : p.datum->datum.points) {
        NewtonPolygon poly = point_polygon(shaped, p.datum->datum, point);
        body["polygons"].push_back({{"label", point.label}, {"polygon", polygon_json(poly)}});
        text += "point " + point.label + ":\n" + polygon_text(poly);
    }
    body["notes"] = json::array();
    std::vector<std::string> notes;
    if (shift > 0)
        notes.push_back("input twisted by " + std::to_string(shift) +
                        " so every summand has a nonnegative lower weight");
    append_notes(body, text, notes);
    return {std::move(body), std::move(text), 0};
}

inline RunOutcome run_verify(const json& payload) {
    ClassPayload p = parse_class_payload(payload);
    VerifyOptions opt;
    if (payload.contains("corrupt_line_term"))
        opt.corrupt_line_term = as_bool(payload["corrupt_line_term"], "/corrupt_line_term");
    VerifyReport report = verify_input(p.rep, p.datum, opt);
    json body;
    body["checks"] = json::array();
    std::string text;
    for (const auto& c : report.checks) {
        body["checks"].push_back(
            {{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        text += c.name + ": " + (c.pass ? "pass" : "fail") +
                (c.detail.empty() ? "" : " (" + c.detail + ")") + "\n";
    }
    body["all_pass"] = report.all_pass;
    text += std::string("all_pass = ") + (report.all_pass ? "true" : "false") + "\n";
    body["notes"] = json::array();
    if (opt.corrupt_line_term) {
        body["notes"].push_back("the main route was deliberately corrupted "
                                "(corrupt_line_term)");
        text += "note: the main route was deliberately corrupted (corrupt_line_term)\n";
    }
    return {std::move(body), std::move(text), 0};
}

} // namespace detail

/// Routes one job to its owning module. Validation problems exit 1, internal
/// assertion failures exit 2, success exits 0 (including verify runs whose
/// checks fail: those are report entries, not errors).
inline RunOutcome run_job(const std::string& command, const json& payload) {
    try {
        if (command == "class") return detail::run_class(payload);
        if (command == "elliptic") return detail::run_elliptic(payload);
        if (command == "ratmap") return detail::run_ratmap(payload);
        if (command == "torus") return detail::run_torus(payload);
        if (command == "polygon") return detail::run_polygon(payload);
        if (command == "verify") return detail::run_verify(payload);
        throw validation_error(validation_error::code::bad_argument,
                               "unknown command '" + command + "'");
    } catch (const validation_error& e) {
        json body = {{"error", e.name()}, {"message", e.what()}};
        return {std::move(body), std::string("error: ") + e.name() + ": " + e.what() + "\n",
                1};
    } catch (const internal_error& e) {
        json body = {{"error", "InternalAssertion"}, {"message", e.what()}};
        return {std::move(body),
                std::string("error: InternalAssertion: ") + e.what() + "\n", 2};
    }
}

} // namespace orbclass::io
