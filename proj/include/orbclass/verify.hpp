#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbclass/orbit_class.hpp"

namespace orbclass {

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass = true;
};

struct VerifyOptions {
    /// Test-harness hook: doubles the boundary line term in the main route so
    /// negative controls can demonstrate that the oracle equality check bites.
    /// The localization route is left untouched.
    bool corrupt_line_term = false;
};

namespace detail {

inline RationalTermSum verify_bracket(const Representation& rep, const OrbitDatum& datum,
                                      const VerifyOptions& opt) {
    RationalTermSum out = bracket_main(rep, datum);
    if (opt.corrupt_line_term) {
        RationalTermSum extra = symmetrize(line_term(minimal_weight_ratio(rep, datum)));
        for (const auto& t : extra.terms) out.push(t);
    }
    return out;
}

} // namespace detail

/// Runs the consistency battery on one validated input. Check failures are
/// report entries, not errors; only invalid input throws.
inline VerifyReport verify_input(const Representation& rep, const OrbitDatum& datum,
                                 const VerifyOptions& opt = {}) {
    validate(rep, datum);
    VerifyReport report;
    auto add = [&](std::string name, bool pass, std::string detail = "") {
        report.all_pass = report.all_pass && pass;
        report.checks.push_back({std::move(name), pass, std::move(detail)});
    };

    std::optional<ClassResult> main;
    try {
        main = assemble_class(rep, datum, detail::verify_bracket(rep, datum, opt));
        add("polynomiality", true);
    } catch (const nonzero_remainder_error& e) {
        add("polynomiality", false, e.what());
    }

    if (main) {
        const Polynomial& poly = main->cls.poly;
        add("symmetry", poly.is_symmetric());
        add("homogeneity",
            poly.is_zero() ||
                (poly.is_homogeneous() &&
                 poly.total_degree() == static_cast<long long>(rep.dim()) - 4));
    } else {
        add("symmetry", false, "not evaluated: the main route produced no polynomial");
        add("homogeneity", false, "not evaluated: the main route produced no polynomial");
    }

    {
        OrbitDatum enlarged = datum;
        OrbitPoint pad;
        pad.label = "__enlargement_probe";
        pad.orders.assign(count_nonzero(datum), 0);
        enlarged.points.push_back(std::move(pad));
        try {
            ClassResult again =
                assemble_class(rep, enlarged, detail::verify_bracket(rep, enlarged, opt));
            add("point_enlargement",
                main && again.cls.poly == main->cls.poly &&
                    again.cls.codim == main->cls.codim);
        } catch (const nonzero_remainder_error& e) {
            add("point_enlargement", false, e.what());
        }
    }

    for (long long n : {1, 2}) {
        std::string name = "twist_" + std::to_string(n);
        try {
            Representation twisted = twist_rep(rep, n);
            ClassResult direct =
                assemble_class(twisted, datum, detail::verify_bracket(twisted, datum, opt));
            if (!main) {
                add(name, false, "not evaluated: the main route produced no polynomial");
                continue;
            }
            EquivariantClass pulled = twist_class(main->cls, n);
            add(name, pulled.poly == direct.cls.poly,
                pulled.poly == direct.cls.poly
                    ? ""
                    : "substituted class times the kernel order does not match the "
                      "twisted input's class");
        } catch (const nonzero_remainder_error& e) {
            add(name, false, e.what());
        }
    }

    try {
        ClassResult oracle = localization_class(rep, datum);
        add("localization_equality", main && oracle.cls.poly == main->cls.poly,
            main && oracle.cls.poly == main->cls.poly
                ? ""
                : "the fixed-point route disagrees with the main route");
    } catch (const nonzero_remainder_error& e) {
        add("localization_equality", false, e.what());
    }

    {
        Representation shifted = twist_rep(rep, normalizing_twist(rep));
        bool pass = true;
        std::string detail;
        for (const auto& point : datum.points) {
            DivisibilityReport dr = point_polygon(shifted, datum, point).divisibility_check();
            if (!dr.pass) {
                pass = false;
                detail = "lattice check failed at point " + point.label;
                break;
            }
        }
        add("divisibility", pass, detail);
    }

    return report;
}

} // namespace orbclass
