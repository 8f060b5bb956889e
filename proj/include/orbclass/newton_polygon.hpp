#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbclass/errors.hpp"
#include "orbclass/rational.hpp"

namespace orbclass {

/// One shifted-quadrant generator: the region (x,y) + R^2_{>=0} contributes
/// to the hull. The weight is the denominator the point was built with and
/// feeds the lattice checks.
struct WeightedPoint {
    Rational x, y;
    Integer weight = 1;
};

using IntVec2 = std::array<Integer, 2>;

namespace detail {

/// Smallest integer vector on the ray through a rational direction.
inline IntVec2 primitive_direction(const Rational& a, const Rational& b) {
    Integer l = lcm(denominator(a), denominator(b));
    Integer ia = numerator(a) * (l / denominator(a));
    Integer ib = numerator(b) * (l / denominator(b));
    Integer g = gcd(abs(ia), abs(ib));
    if (g == 0)
        throw std::invalid_argument("primitive direction of the zero vector");
    return {ia / g, ib / g};
}

inline Rational apply(const IntVec2& functional, const Rational& x, const Rational& y) {
    return Rational(functional[0]) * x + Rational(functional[1]) * y;
}

} // namespace detail

struct VertexNormals {
    IntVec2 eta;   // normal of the ray toward the previous vertex (or the horizontal ray)
    IntVec2 zeta;  // normal of the ray toward the next vertex (or the vertical ray)
    Integer det;   // eta_1*zeta_2 - eta_2*zeta_1
};

struct PolygonScalars {
    Rational b_local;    // y of the bottom-right vertex = min defining y
    Rational r;          // min defining x
    Rational lambda0_x;  // x of the bottom-right vertex
    Rational s;          // 1 - slope ratio of the first edge; 1 for a single vertex
    int k = 0;           // vertex count minus one
};

struct BetaRay {
    IntVec2 can;          // primitive integral normal
    IntVec2 res;          // smallest multiple with integral value on its face
    Integer multiple = 1; // res = multiple * can
    Rational face_value;  // value of can on the face
};

struct DivisibilityEntry {
    std::string what;
    Rational value;
    bool integral = false;
    bool nonnegative = false;
};

struct DivisibilityReport {
    bool pass = true;
    std::vector<DivisibilityEntry> entries;
};

/// Convex hull of a union of shifted positive quadrants. The boundary is a
/// chain of vertices from bottom-right to top-left (x strictly decreasing,
/// y strictly increasing), closed off by a horizontal ray on the right and a
/// vertical ray on the top. Rays are indexed so that ray j and ray j+1 are
/// the two boundary pieces meeting at vertex j:
///   ray 0      horizontal, inner normal (0,1)
///   ray j      edge between vertex j-1 and vertex j, 1 <= j <= k
///   ray k+1    vertical, inner normal (1,0)
class NewtonPolygon {
public:
    const std::vector<std::pair<Rational, Rational>>& vertices() const { return vertices_; }
    const std::vector<IntVec2>& rays() const { return rays_; }
    const std::vector<WeightedPoint>& defining_points() const { return defining_; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int k() const { return vertex_count() - 1; }

    VertexNormals vertex_normals(int j) const {
        if (j < 0 || j >= vertex_count())
            throw std::invalid_argument("vertex index out of range");
        VertexNormals out;
        out.eta = rays_[static_cast<std::size_t>(j)];
        out.zeta = rays_[static_cast<std::size_t>(j) + 1];
        out.det = out.eta[0] * out.zeta[1] - out.eta[1] * out.zeta[0];
        return out;
    }

    PolygonScalars scalars() const {
        PolygonScalars out;
        out.b_local = vertices_.front().second;
        out.lambda0_x = vertices_.front().first;
        out.r = defining_.front().x;
        for (const auto& p : defining_) out.r = std::min(out.r, p.x);
        out.k = k();
        if (out.k >= 1) {
            const auto& [x0, y0] = vertices_[0];
            const auto& [x1, y1] = vertices_[1];
            out.s = Rational(1) - (x0 - x1) / (y0 - y1);
        } else {
            out.s = 1;
        }
        return out;
    }

    /// A vertex of each face (both faces of an edge share the face value).
    std::pair<Rational, Rational> face_vertex(int ray) const {
        if (ray < 0 || ray >= static_cast<int>(rays_.size()))
            throw std::invalid_argument("ray index out of range");
        return ray == 0 ? vertices_.front()
                        : vertices_[static_cast<std::size_t>(ray) - 1];
    }

    /// Per ray: the primitive normal and its smallest positive multiple whose
    /// value on the face is an integer. Notes flag the horizontal ray when
    /// this multiple differs from the bottom vertex's defining weight (an
    /// alternative labeling convention that we do not follow).
    std::vector<BetaRay> beta_vectors(std::vector<std::string>* notes = nullptr) const {
        std::vector<BetaRay> out;
        for (std::size_t i = 0; i < rays_.size(); ++i) {
            BetaRay b;
            b.can = rays_[i];
            auto [vx, vy] = face_vertex(static_cast<int>(i));
            b.face_value = detail::apply(b.can, vx, vy);
            Integer d = denominator(b.face_value);
            b.multiple = d;
            b.res = {b.can[0] * d, b.can[1] * d};
            out.push_back(b);
        }
        if (notes) {
            for (const auto& p : defining_) {
                if (p.x == vertices_.front().first && p.y == vertices_.front().second &&
                    Integer(p.weight) != out.front().multiple) {
                    notes->push_back(
                        "horizontal ray: resolving normal is the smallest multiple with "
                        "integral face value, (0," + out.front().multiple.str() +
                        "); the weight-based alternative (0," + p.weight.str() +
                        ") is not used");
                    break;
                }
            }
        }
        return out;
    }

    /// Lattice consistency of the polygon data. For every vertex v and each
    /// incident resolving functional beta: <beta, v> must be a non-negative
    /// integer. For every defining point p with weight e and every vertex v,
    /// writing p - v = a1*r1 + a2*r2 in the dual basis of the two incident
    /// resolving functionals, each e*a_i must be a non-negative integer.
    DivisibilityReport divisibility_check() const {
        DivisibilityReport report;
        auto betas = beta_vectors();
        auto record = [&](std::string what, const Rational& value) {
            DivisibilityEntry e{std::move(what), value, is_integer(value), value >= 0};
            report.pass = report.pass && e.integral && e.nonnegative;
            report.entries.push_back(std::move(e));
        };
        for (int j = 0; j < vertex_count(); ++j) {
            const auto& [vx, vy] = vertices_[static_cast<std::size_t>(j)];
            for (int ray : {j, j + 1}) {
                const auto& beta = betas[static_cast<std::size_t>(ray)].res;
                record("vertex " + std::to_string(j) + " ray " + std::to_string(ray),
                       detail::apply(beta, vx, vy));
            }
        }
        for (std::size_t pi = 0; pi < defining_.size(); ++pi) {
            const auto& p = defining_[pi];
            for (int j = 0; j < vertex_count(); ++j) {
                const auto& [vx, vy] = vertices_[static_cast<std::size_t>(j)];
                for (int ray : {j, j + 1}) {
                    const auto& beta = betas[static_cast<std::size_t>(ray)];
                    Rational a = detail::apply(beta.res, p.x - vx, p.y - vy);
                    record("point " + std::to_string(pi) + " vertex " + std::to_string(j) +
                               " ray " + std::to_string(ray),
                           Rational(p.weight) * a);
                }
            }
        }
        return report;
    }

    friend NewtonPolygon build_polygon(std::vector<WeightedPoint> points);

private:
    std::vector<std::pair<Rational, Rational>> vertices_;
    std::vector<IntVec2> rays_;
    std::vector<WeightedPoint> defining_;
};

/// Builds the hull. Dominated points (some other point weakly below-left of
/// them) land in the interior and are discarded; the survivors form a
/// staircase on which a single convexity sweep finds the vertex chain.
inline NewtonPolygon build_polygon(std::vector<WeightedPoint> points) {
    if (points.empty())
        throw std::invalid_argument("polygon needs at least one defining point");
    for (const auto& p : points)
        if (p.weight <= 0)
            throw std::invalid_argument("defining point with non-positive weight");

    NewtonPolygon out;
    out.defining_ = points;

    // Pareto-minimal staircase, bottom-right to top-left.
    std::sort(points.begin(), points.end(), [](const WeightedPoint& a, const WeightedPoint& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    std::vector<std::pair<Rational, Rational>> frontier;
    for (const auto& p : points) {
        if (!frontier.empty() && p.y >= frontier.back().second) continue;
        frontier.emplace_back(p.x, p.y);
    }
    std::reverse(frontier.begin(), frontier.end());

    // Convexity sweep: walking bottom-right to top-left the edge slopes must
    // strictly decrease; collinear middle points are not vertices.
    std::vector<std::pair<Rational, Rational>> chain;
    for (const auto& p : frontier) {
        while (chain.size() >= 2) {
            const auto& a = chain[chain.size() - 2];
            const auto& b = chain.back();
            Rational cross = (b.first - a.first) * (p.second - b.second) -
                             (b.second - a.second) * (p.first - b.first);
            if (cross >= 0) chain.pop_back();
            else break;
        }
        chain.push_back(p);
    }

    out.vertices_ = std::move(chain);
    out.rays_.push_back({0, 1});
    for (std::size_t j = 1; j < out.vertices_.size(); ++j) {
        const auto& [px, py] = out.vertices_[j - 1];
        const auto& [qx, qy] = out.vertices_[j];
        // Inner normal of the edge p -> q: rotate the direction (dx,dy),
        // dx < 0 < dy, to (dy, -dx), which has both entries positive.
        out.rays_.push_back(detail::primitive_direction(qy - py, px - qx));
    }
    out.rays_.push_back({1, 0});
    return out;
}

/// Polygon of the datum twisted n times: pointwise (x,y) -> ((x+n)/(2n+1),
/// (y+n)/(2n+1)) with weights scaled by 2n+1, then rebuilt.
inline NewtonPolygon shear(const NewtonPolygon& p, long long n) {
    if (n < 0)
        throw std::invalid_argument("shear requires n >= 0");
    Rational scale = make_rational(1, 2 * n + 1);
    std::vector<WeightedPoint> points;
    points.reserve(p.defining_points().size());
    for (const auto& q : p.defining_points())
        points.push_back({(q.x + n) * scale, (q.y + n) * scale, q.weight * (2 * n + 1)});
    return build_polygon(std::move(points));
}

} // namespace orbclass
