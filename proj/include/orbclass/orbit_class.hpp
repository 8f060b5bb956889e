#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "orbclass/errors.hpp"
#include "orbclass/newton_polygon.hpp"
#include "orbclass/rational_term.hpp"

namespace orbclass {

inline std::vector<std::string> gl2_vars() { return {"v1", "v2"}; }

/// One irreducible summand Sym^(a-b) V (x) det^b. Its central weight a+b must
/// be positive; the twist operation can arrange that.
struct Summand {
    long long a = 0;
    long long b = 0;
    long long degree() const { return a - b; }   // degree of the binary form
    long long weight() const { return a + b; }   // central (scaling) weight
    long long dim() const { return a - b + 1; }
};

struct Representation {
    std::vector<Summand> summands;

    long long dim() const {
        long long n = 0;
        for (const auto& s : summands) n += s.dim();
        return n;
    }
};

/// A marked point on the projective line with the vanishing orders of the
/// nonzero coordinate forms there (one entry per nonzero summand, in order).
struct OrbitPoint {
    std::string label;
    std::vector<long long> orders;
};

/// Which summands of the vector are nonzero, the marked points, and the
/// caller's assertion that the marked set contains every common zero of the
/// forms of minimal b/(a+b).
struct OrbitDatum {
    std::vector<bool> nonzero;
    std::vector<OrbitPoint> points;
    bool a_complete = false;
};

struct EquivariantClass {
    Polynomial poly{gl2_vars()};
    long long codim = 0;
};

struct ClassResult {
    EquivariantClass cls;
    std::vector<std::string> notes;
};

inline std::size_t count_nonzero(const OrbitDatum& datum) {
    std::size_t n = 0;
    for (bool f : datum.nonzero) n += f ? 1u : 0u;
    return n;
}

inline void validate(const Representation& rep, const OrbitDatum& datum) {
    if (rep.summands.empty())
        throw validation_error(validation_error::code::bad_argument,
                               "representation has no summands");
    for (std::size_t i = 0; i < rep.summands.size(); ++i) {
        const auto& s = rep.summands[i];
        if (s.a < s.b)
            throw validation_error(validation_error::code::bad_argument,
                                   "summand " + std::to_string(i) + " has a < b");
        if (s.weight() <= 0)
            throw validation_error(
                validation_error::code::mixed_or_zero_weights,
                "summand " + std::to_string(i) +
                    " has non-positive central weight; dualize or twist the "
                    "representation so every weight is positive");
    }
    if (datum.nonzero.size() != rep.summands.size())
        throw validation_error(validation_error::code::schema,
                               "nonzero flag count does not match summand count");
    std::size_t live = count_nonzero(datum);
    if (live == 0)
        throw validation_error(validation_error::code::zero_vector,
                               "every summand is flagged zero");
    if (!datum.a_complete)
        throw validation_error(
            validation_error::code::incomplete_point_set,
            "the marked point set is not asserted complete (a_complete)");
    std::set<std::string> labels;
    for (const auto& p : datum.points) {
        if (!labels.insert(p.label).second)
            throw validation_error(validation_error::code::bad_argument,
                                   "duplicate point label '" + p.label + "'");
        if (p.orders.size() != live)
            throw validation_error(validation_error::code::schema,
                                   "point '" + p.label + "' order count does not "
                                   "match the number of nonzero summands");
        for (long long r : p.orders)
            if (r < 0)
                throw validation_error(validation_error::code::bad_argument,
                                       "negative vanishing order at '" + p.label + "'");
    }
    std::size_t ni = 0;
    for (std::size_t i = 0; i < rep.summands.size(); ++i) {
        if (!datum.nonzero[i]) continue;
        long long total = 0;
        for (const auto& p : datum.points) total += p.orders[ni];
        if (total > rep.summands[i].degree())
            throw validation_error(
                validation_error::code::order_budget_exceeded,
                "orders at summand " + std::to_string(i) + " sum to " +
                    std::to_string(total) + " > " +
                    std::to_string(rep.summands[i].degree()));
        ++ni;
    }
}

/// Product over the chosen summands of prod_{j=0}^{a-b} ((b+j)v1 + (a-j)v2):
/// the top equivariant Chern class of that part of the representation.
inline Polynomial top_chern(const Representation& rep, const std::vector<bool>& include) {
    Polynomial c = Polynomial::constant(gl2_vars(), 1);
    for (std::size_t i = 0; i < rep.summands.size(); ++i) {
        if (!include[i]) continue;
        const auto& s = rep.summands[i];
        for (long long j = 0; j <= s.degree(); ++j) {
            Polynomial factor(gl2_vars());
            factor.add_term({1, 0}, s.b + j);
            factor.add_term({0, 1}, s.a - j);
            c = c * factor;
        }
    }
    return c;
}

inline Polynomial top_chern(const Representation& rep) {
    return top_chern(rep, std::vector<bool>(rep.summands.size(), true));
}

namespace detail {

inline LinearForm barycentric_form(const Rational& t) {
    // (1-t)*v1 + t*v2
    return LinearForm(gl2_vars(), {Rational(1) - t, t});
}

inline LinearForm difference_form() {
    return LinearForm(gl2_vars(), {Rational(1), Rational(-1)});
}

} // namespace detail

/// Scalar data attached to one marked point.
struct PointScalars {
    Rational b;      // min over nonzero summands of b_i/(a_i+b_i), shared by all points
    Rational r;      // min defining x of the point's polygon
    Rational r_gen;  // x of the bottom-right vertex minus b
    Rational s;      // slope factor of the first edge (1 for a single vertex)
    NewtonPolygon polygon;
};

inline Rational minimal_weight_ratio(const Representation& rep, const OrbitDatum& datum) {
    std::optional<Rational> b;
    for (std::size_t i = 0; i < rep.summands.size(); ++i) {
        if (!datum.nonzero[i]) continue;
        Rational ratio = make_rational(rep.summands[i].b, rep.summands[i].weight());
        if (!b || ratio < *b) b = ratio;
    }
    return *b;
}

inline NewtonPolygon point_polygon(const Representation& rep, const OrbitDatum& datum,
                                   const OrbitPoint& point) {
    std::vector<WeightedPoint> pts;
    std::size_t ni = 0;
    for (std::size_t i = 0; i < rep.summands.size(); ++i) {
        if (!datum.nonzero[i]) continue;
        const auto& s = rep.summands[i];
        pts.push_back({make_rational(point.orders[ni] + s.b, s.weight()),
                       make_rational(s.b, s.weight()), Integer(s.weight())});
        ++ni;
    }
    return build_polygon(std::move(pts));
}

inline PointScalars point_scalars(const Representation& rep, const OrbitDatum& datum,
                                  const OrbitPoint& point) {
    PointScalars out{minimal_weight_ratio(rep, datum), 0, 0, 0,
                     point_polygon(rep, datum, point)};
    PolygonScalars ps = out.polygon.scalars();
    if (ps.b_local != out.b)
        throw internal_error("bottom vertex height differs from the minimal weight ratio");
    out.r = ps.r;
    out.r_gen = ps.lambda0_x - out.b;
    out.s = ps.s;
    return out;
}

/// Boundary contribution of the distinguished fixed line, as a single term:
///   2/(((1-b)v1+b*v2)(v1-v2)^3) - (2b-1)/(((1-b)v1+b*v2)^2 (v1-v2)^2).
inline RationalTerm line_term(const Rational& b) {
    LinearForm lb = detail::barycentric_form(b);
    LinearForm d = detail::difference_form();
    Polynomial one = Polynomial::constant(gl2_vars(), 1);
    RationalTermSum sum{gl2_vars(), {}};
    sum.push(RationalTerm(2, one, {{lb, 1}, {d, 3}}));
    sum.push(RationalTerm(-(2 * b - 1), one, {{lb, 2}, {d, 2}}));
    return sum_terms(sum);
}

/// Contribution of one marked point:
///   1/(((1-r)v1+r*v2)(v1-v2)^3) - s/(((1-b)v1+b*v2)(v1-v2)^3)
///   - r_gen/(((1-b)v1+b*v2)^2 (v1-v2)^2).
/// Vanishes when the point's polygon is the single vertex (b, b).
inline RationalTerm point_term(const Rational& b, const Rational& r,
                               const Rational& r_gen, const Rational& s) {
    LinearForm lb = detail::barycentric_form(b);
    LinearForm lr = detail::barycentric_form(r);
    LinearForm d = detail::difference_form();
    Polynomial one = Polynomial::constant(gl2_vars(), 1);
    RationalTermSum sum{gl2_vars(), {}};
    sum.push(RationalTerm(1, one, {{lr, 1}, {d, 3}}));
    sum.push(RationalTerm(-s, one, {{lb, 1}, {d, 3}}));
    sum.push(RationalTerm(-r_gen, one, {{lb, 2}, {d, 2}}));
    return sum_terms(sum);
}

inline RationalTerm point_term(const PointScalars& ps) {
    return point_term(ps.b, ps.r, ps.r_gen, ps.s);
}

/// Contribution of one interior polygon vertex (index j >= 1), from the
/// second height coordinate of the vertex and the primitive normals of its
/// two incident rays:
///   |det(eta,zeta)| / (eta_1 zeta_1 ((1-y)v1+y*v2)(v1-v2)^3).
inline RationalTerm vertex_term(const Rational& vertex_y, const VertexNormals& n) {
    if (n.eta[0] <= 0 || n.zeta[0] <= 0)
        throw std::invalid_argument(
            "vertex term requires normals with positive first entry "
            "(interior vertices only)");
    Rational scale = make_rational(abs(n.det), n.eta[0] * n.zeta[0]);
    LinearForm ly = detail::barycentric_form(vertex_y);
    LinearForm d = detail::difference_form();
    return RationalTerm(scale, Polynomial::constant(gl2_vars(), 1),
                        {{ly, 1}, {d, 3}});
}

/// Bracket of the closed-form route: the symmetrized line term plus, for
/// each marked point, its symmetrized point term and the symmetrized vertex
/// terms of its polygon's interior vertices.
inline RationalTermSum bracket_main(const Representation& rep, const OrbitDatum& datum) {
    RationalTermSum bracket{gl2_vars(), {}};
    auto add_symmetrized = [&](const RationalTerm& t) {
        for (auto& part : symmetrize(t).terms) bracket.push(std::move(part));
    };
    add_symmetrized(line_term(minimal_weight_ratio(rep, datum)));
    for (const auto& point : datum.points) {
        PointScalars ps = point_scalars(rep, datum, point);
        add_symmetrized(point_term(ps));
        for (int j = 1; j <= ps.polygon.k(); ++j)
            add_symmetrized(vertex_term(ps.polygon.vertices()[static_cast<std::size_t>(j)].second,
                                        ps.polygon.vertex_normals(j)));
    }
    return bracket;
}

/// Coefficient of h in prod_i (alpha_i + beta_i * h)^(-1), extracted from the
/// first-order truncation of the geometric series of each factor.
inline RationalTermSum h_linear_coefficient(
    const std::vector<std::pair<LinearForm, Rational>>& factors) {
    if (factors.empty())
        throw std::invalid_argument("h-series of an empty product");
    RationalTermSum out{factors.front().first.vars(), {}};
    Polynomial one = Polynomial::constant(out.vars, 1);
    for (std::size_t j = 0; j < factors.size(); ++j) {
        if (factors[j].second == 0) continue;
        std::vector<DenominatorFactor> denom;
        for (std::size_t i = 0; i < factors.size(); ++i)
            denom.push_back({factors[i].first, i == j ? 2 : 1});
        out.push(RationalTerm(-factors[j].second, one, denom));
    }
    return out;
}

/// Aggregated boundary contribution of the fixed line, written directly:
///   (2-s)/(((1-b)v1+b*v2)(v1-v2)^3) - (2b+r_gen-1)/(((1-b)v1+b*v2)^2 (v1-v2)^2).
inline RationalTermSum line_contribution_closed(const Rational& b, const Rational& s_sum,
                                                const Rational& r_gen_sum) {
    LinearForm lb = detail::barycentric_form(b);
    LinearForm d = detail::difference_form();
    Polynomial one = Polynomial::constant(gl2_vars(), 1);
    RationalTermSum out{gl2_vars(), {}};
    out.push(RationalTerm(2 - s_sum, one, {{lb, 1}, {d, 3}}));
    out.push(RationalTerm(-(2 * b + r_gen_sum - 1), one, {{lb, 2}, {d, 2}}));
    return out;
}

/// Same quantity via the series route: the coefficient of h in
///   ((1-b)v1+b*v2 + (2b+r_gen-1)h)^(-1) (v2-v1)^(-1) (v2-v1 + (2-s)h)^(-1).
inline RationalTermSum line_contribution_series(const Rational& b, const Rational& s_sum,
                                                const Rational& r_gen_sum) {
    LinearForm lb = detail::barycentric_form(b);
    LinearForm neg_d(gl2_vars(), {Rational(-1), Rational(1)});
    return h_linear_coefficient({{lb, 2 * b + r_gen_sum - 1},
                                 {neg_d, Rational(0)},
                                 {neg_d, 2 - s_sum}});
}

/// Bracket of the independent cross-check route: fixed-point contributions
/// are grouped as in a direct localization pass (one aggregated line
/// contribution computed by series extraction and checked against its closed
/// form, plus per-point and per-vertex pieces), then symmetrized.
inline RationalTermSum bracket_localization(const Representation& rep,
                                            const OrbitDatum& datum) {
    Rational b = minimal_weight_ratio(rep, datum);
    Rational s_sum(0), r_gen_sum(0);
    std::vector<PointScalars> scalars;
    scalars.reserve(datum.points.size());
    for (const auto& point : datum.points) {
        scalars.push_back(point_scalars(rep, datum, point));
        s_sum += scalars.back().s;
        r_gen_sum += scalars.back().r_gen;
    }

    RationalTermSum series = line_contribution_series(b, s_sum, r_gen_sum);
    if (!same_function(series, line_contribution_closed(b, s_sum, r_gen_sum)))
        throw internal_error("series and closed forms of the line contribution disagree");

    RationalTermSum bracket{gl2_vars(), {}};
    auto add_with_swap = [&](const RationalTerm& t) {
        bracket.push(t);
        bracket.push(t.swap_vars());
    };
    for (const auto& t : series.terms) add_with_swap(t);

    Polynomial one = Polynomial::constant(gl2_vars(), 1);
    LinearForm d = detail::difference_form();
    for (const auto& ps : scalars) {
        add_with_swap(RationalTerm(1, one, {{detail::barycentric_form(ps.r), 1}, {d, 3}}));
        for (int j = 1; j <= ps.polygon.k(); ++j) {
            VertexNormals n = ps.polygon.vertex_normals(j);
            Rational y = ps.polygon.vertices()[static_cast<std::size_t>(j)].second;
            add_with_swap(RationalTerm(
                make_rational(abs(n.det), n.eta[0] * n.zeta[0]), one,
                {{detail::barycentric_form(y), 1}, {d, 3}}));
        }
    }
    return bracket;
}

/// Combines a bracket into the polynomial class: multiply by the top Chern
/// class of the nonzero part, clear the denominator exactly, then multiply by
/// the top Chern class of the zero part.
inline ClassResult assemble_class(const Representation& rep, const OrbitDatum& datum,
                                  const RationalTermSum& bracket) {
    RationalTerm combined = sum_terms(bracket);
    std::vector<bool> zero_part;
    zero_part.reserve(datum.nonzero.size());
    for (bool f : datum.nonzero) zero_part.push_back(!f);

    Polynomial numer = top_chern(rep, datum.nonzero) * combined.numerator() * combined.scalar();
    Polynomial quotient = exact_divide(numer, combined.denominator_polynomial());
    quotient = quotient * top_chern(rep, zero_part);

    ClassResult out;
    out.cls.poly = quotient;
    out.cls.codim = rep.dim() - 4;
    if (quotient.is_zero()) {
        out.notes.push_back(
            "class is zero: the orbit closure is degenerate for this datum "
            "(the stabilizer is positive-dimensional)");
    } else {
        if (!quotient.is_homogeneous() || quotient.total_degree() != out.cls.codim)
            throw internal_error("class degree does not match the expected codimension");
        if (!quotient.is_symmetric())
            throw internal_error("class is not symmetric in v1, v2");
    }
    if (rep.dim() < 4)
        out.notes.push_back(
            "representation dimension is below 4, so no orbit has a finite "
            "stabilizer; the reported value is the raw localization output");
    return out;
}

/// The stabilizer-weighted fundamental class of the orbit closure.
inline ClassResult orbit_class(const Representation& rep, const OrbitDatum& datum) {
    validate(rep, datum);
    return assemble_class(rep, datum, bracket_main(rep, datum));
}

/// Independent evaluation route used as an oracle; must agree with
/// orbit_class bit for bit.
inline ClassResult localization_class(const Representation& rep, const OrbitDatum& datum) {
    validate(rep, datum);
    return assemble_class(rep, datum, bracket_localization(rep, datum));
}

/// Composing with M -> M (det M)^n sends each summand (a, b) to
/// (a + n(a+b), b + n(a+b)).
inline Representation twist_rep(const Representation& rep, long long n) {
    Representation out;
    out.summands.reserve(rep.summands.size());
    for (const auto& s : rep.summands) {
        Summand t{s.a + n * s.weight(), s.b + n * s.weight()};
        if (t.weight() <= 0)
            throw validation_error(validation_error::code::mixed_or_zero_weights,
                                   "twist produces a non-positive central weight");
        out.summands.push_back(t);
    }
    return out;
}

/// Smallest twist that makes every lower weight nonnegative. Point polygons
/// and their lattice checks are defined in that chart.
inline long long normalizing_twist(const Representation& rep) {
    long long shift = 0;
    for (const auto& s : rep.summands)
        if (s.b < 0) shift = std::max(shift, (-s.b + s.weight() - 1) / s.weight());
    return shift;
}

/// Pullback substitution of the twist: v_i -> v_i + n(v1+v2).
inline std::vector<Polynomial> twist_substitution(long long n) {
    Polynomial i1(gl2_vars()), i2(gl2_vars());
    i1.add_term({1, 0}, n + 1);
    i1.add_term({0, 1}, n);
    i2.add_term({1, 0}, n);
    i2.add_term({0, 1}, n + 1);
    return {i1, i2};
}

/// Class of the twisted datum: the twist's scalar kernel has order 2n+1, so
/// the stabilizer-weighted class picks up that factor on top of the pullback.
inline EquivariantClass twist_class(const EquivariantClass& cls, long long n) {
    if (n < 0)
        throw validation_error(validation_error::code::bad_argument,
                               "twist_class requires n >= 0");
    EquivariantClass out;
    out.codim = cls.codim;
    out.poly = cls.poly.substitute(twist_substitution(n)) * Rational(2 * n + 1);
    return out;
}

/// Degree of the orbit closure in the weighted projective space where the
/// i-th summand scales with the given positive weight: the coefficient of
/// h^codim after setting v1 = v2 = h/m, where the central weights are
/// m * weights.
inline Rational projective_degree(const EquivariantClass& cls, const Representation& rep,
                                  const std::vector<long long>& weights) {
    if (weights.size() != rep.summands.size())
        throw validation_error(validation_error::code::schema,
                               "projective weight count does not match summand count");
    std::optional<Rational> m;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0)
            throw validation_error(validation_error::code::bad_argument,
                                   "projective weights must be positive");
        Rational ratio = make_rational(rep.summands[i].weight(), weights[i]);
        if (!m) m = ratio;
        else if (*m != ratio)
            throw validation_error(
                validation_error::code::non_proportional_weights,
                "central weights are not proportional to the projective weights");
    }
    if (cls.poly.is_zero()) return 0;
    Specialization sp = specialize_equal(cls.poly, Rational(1) / *m);
    if (sp.power != cls.codim)
        throw internal_error("specialized degree does not match the codimension");
    return sp.coefficient;
}

} // namespace orbclass
