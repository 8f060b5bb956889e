// Acceptance gate: one line per criterion, [PASS] or [FAIL], exit code equal
// to the number of failed criteria. Every comparison is bit-exact.

#include <algorithm>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "orbclass/applications.hpp"
#include "orbclass/torus_orbit.hpp"
#include "support/generators.hpp"

using namespace orbclass;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, bool pass,
               const std::string& detail = "") {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << number << ": "
              << label;
    if (!pass && !detail.empty()) std::cout << " -- " << detail;
    std::cout << "\n";
    if (!pass) ++g_failures;
}

void info(int number, const std::string& line) {
    std::cout << "[INFO] criterion " << number << ": " << line << "\n";
}

struct FuzzInput {
    Representation rep;
    OrbitDatum datum;
    ClassResult result;
};

/// Fuzzed inputs restricted to summands with positive form degree <= 8.
Representation fuzz_rep() {
    while (true) {
        Representation rep = testgen::random_rep();
        bool ok = true;
        for (const auto& s : rep.summands) ok = ok && s.degree() > 0 && s.degree() <= 8;
        if (ok) return rep;
    }
}

Rational elliptic_prefactor(long long n) {
    return rational_pow(Rational(2), 4 * n + 3) * rational_pow(Rational(3), 6 * n + 1);
}

void partitions_into(long long remaining, long long cap, std::vector<long long>& stack,
                     std::vector<std::vector<long long>>& out) {
    if (remaining == 0) {
        out.push_back(stack);
        return;
    }
    for (long long next = std::min(cap, remaining); next >= 1; --next) {
        stack.push_back(next);
        partitions_into(remaining - next, next, stack, out);
        stack.pop_back();
    }
}

std::vector<std::vector<long long>> partitions(long long m) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> stack;
    partitions_into(m, m, stack, out);
    return out;
}

void run_criterion_1() {
    CharacterList cl;
    cl.d = 3;
    cl.chars = {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
    cl.support.assign(4, true);
    TorusClassResult res = torus_orbit_class(cl);
    criterion(1, "pointed cone orbit class equals x+y+2*z",
              res.pointed && res.cls.to_text() == "x+y+2*z",
              "got " + res.cls.to_text());
}

void run_criterion_2() {
    bool pass = true;
    std::string detail;
    for (long long n : {1LL, 2LL}) {
        Rational expect = elliptic_prefactor(n) * Rational(n) * Rational(4 * n * n * n);
        EllipticResult res = elliptic_result(n, {});
        if (res.degree != expect) {
            pass = false;
            detail = "n = " + std::to_string(n) + ": got " + to_string(res.degree) +
                     ", expected " + to_string(expect);
            break;
        }
        if (n == 1 && res.degree != Rational(1119744)) {
            pass = false;
            detail = "n = 1 degree is not 1119744";
            break;
        }
    }
    criterion(2, "generic elliptic degree matches the closed form at n = 1, 2", pass,
              detail);
}

void run_criterion_3() {
    bool pass = true;
    std::string detail;
    for (KodairaType t : kodaira_types()) {
        auto [oa, ob] = kodaira_witness(t);
        Rational c = kodaira_c(t);
        Rational expect =
            elliptic_prefactor(1) * (Rational(4) - c * c * (Rational(3) - c));
        EllipticResult res = elliptic_result(1, {{kodaira_label(t), oa, ob}});
        if (res.degree != expect) {
            pass = false;
            detail = "single fiber " + kodaira_label(t) + ": got " +
                     to_string(res.degree) + ", expected " + to_string(expect);
            break;
        }
    }
    for (long long n : {1LL, 2LL}) {
        if (!pass) break;
        for (int trial = 0; trial < 20 && pass; ++trial) {
            long long budget_a = 4 * n, budget_b = 6 * n;
            std::vector<FiberDatum> fibers;
            long long count = testgen::pick(1, 3);
            Rational deficit = 0;
            for (long long i = 0; i < count; ++i) {
                long long oa = testgen::pick(0, std::min<long long>(4, budget_a));
                long long ob = testgen::pick(0, std::min<long long>(6, budget_b));
                budget_a -= oa;
                budget_b -= ob;
                fibers.push_back({"f" + std::to_string(i + 1), oa, ob});
                Rational c = fiber_invariant(oa, ob);
                deficit += c * c * (Rational(3 * n) - c);
            }
            Rational expect =
                elliptic_prefactor(n) * Rational(n) * (Rational(4 * n * n * n) - deficit);
            EllipticResult res = elliptic_result(n, fibers);
            if (res.degree != expect) {
                pass = false;
                detail = "random configuration at n = " + std::to_string(n) +
                         " disagrees with the closed form";
            }
        }
    }
    criterion(3, "singular fiber configurations match the closed form", pass, detail);
}

void run_criterion_4() {
    bool pass = true;
    std::string detail;
    int cases = 0;
    for (long long n = 2; n <= 6; ++n) {
        Polynomial closed = ratmap_closed_class(n);
        Rational expect_degree(n * (n + 1) * (n - 1));
        for (const auto& profile : partitions(n + 1)) {
            ++cases;
            RatmapResult res = ratmap_result(n, profile);
            if (res.cls.poly != closed || res.degree != expect_degree) {
                pass = false;
                std::ostringstream msg;
                msg << "n = " << n << " profile (";
                for (long long j : profile) msg << " " << j;
                msg << " ) disagrees";
                detail = msg.str();
            }
        }
    }
    if (cases < 30) {
        pass = false;
        detail = "only " + std::to_string(cases) + " profiles enumerated";
    }
    criterion(4, "self-map class matches the closed product over all " +
                     std::to_string(cases) + " profiles",
              pass, detail);
}

void run_criterion_5(std::vector<FuzzInput>& pool) {
    bool pass = true;
    std::string detail;
    for (int trial = 0; trial < 200; ++trial) {
        Representation rep = fuzz_rep();
        OrbitDatum datum = testgen::random_datum(rep);
        try {
            ClassResult result = orbit_class(rep, datum);
            pool.push_back({std::move(rep), std::move(datum), std::move(result)});
        } catch (const nonzero_remainder_error& e) {
            pass = false;
            detail = std::string("division left a remainder: ") + e.what();
            break;
        }
    }
    criterion(5, "orbit class is a polynomial on 200 fuzzed inputs", pass, detail);
}

void run_criterion_6(std::vector<FuzzInput>& pool) {
    const int trials = 50;
    std::vector<FuzzInput> inputs;
    for (int trial = 0; trial < trials; ++trial) {
        Representation rep = fuzz_rep();
        OrbitDatum datum = testgen::random_datum(rep);
        ClassResult result = orbit_class(rep, datum);
        inputs.push_back({std::move(rep), std::move(datum), std::move(result)});
    }

    int stated_failures[4] = {0, 0, 0, 0};
    int corrected_failures = 0;
    int nonzero = 0;
    for (const FuzzInput& in : inputs) {
        if (!in.result.cls.poly.is_zero()) ++nonzero;
        for (long long n : {1LL, 2LL, 3LL}) {
            ClassResult twisted = orbit_class(twist_rep(in.rep, n), in.datum);
            Polynomial pulled = in.result.cls.poly.substitute(twist_substitution(n));
            if (pulled * Rational(n + 2) != twisted.cls.poly)
                ++stated_failures[n];
            if (pulled * Rational(2 * n + 1) != twisted.cls.poly)
                ++corrected_failures;
        }
    }
    bool stated_pass =
        stated_failures[1] + stated_failures[2] + stated_failures[3] == 0;
    std::ostringstream detail;
    detail << "factor n+2 fails on " << stated_failures[2] << "/" << trials
           << " inputs at n = 2 and " << stated_failures[3] << "/" << trials
           << " at n = 3; it matches at n = 1, and the " << trials - nonzero
           << " inputs with zero class match at any factor";
    criterion(6, "twist pullback scaled by the stated factor n+2 matches the "
                 "twisted input's class",
              stated_pass, detail.str());
    if (!stated_pass) {
        info(6, "the twisted action factors through a kernel of order 2n+1, and "
                "2n+1 = n+2 exactly at n = 1");
        info(6, corrected_failures == 0
                    ? "with factor 2n+1 the same " + std::to_string(trials) +
                          " inputs pass at every n in {1, 2, 3}; the verify "
                          "command checks this corrected relation"
                    : "UNEXPECTED: the corrected factor 2n+1 also fails on " +
                          std::to_string(corrected_failures) + " twisted runs");
    }
    for (FuzzInput& in : inputs) pool.push_back(std::move(in));
}

void run_criterion_7(std::vector<FuzzInput>& pool) {
    bool pass = true;
    std::string detail;
    for (int trial = 0; trial < 100; ++trial) {
        Representation rep = fuzz_rep();
        OrbitDatum datum = testgen::random_datum(rep);
        ClassResult main = orbit_class(rep, datum);
        ClassResult oracle = localization_class(rep, datum);
        if (main.cls.poly != oracle.cls.poly || main.cls.codim != oracle.cls.codim) {
            pass = false;
            detail = "fixed-point route disagrees on trial " + std::to_string(trial);
            break;
        }
        pool.push_back({std::move(rep), std::move(datum), std::move(main)});
    }
    criterion(7, "fixed-point route equals the main route on 100 fuzzed inputs", pass,
              detail);
}

void run_criterion_8(const std::vector<FuzzInput>& pool) {
    bool pass = true;
    std::string detail;
    for (const FuzzInput& in : pool) {
        const Polynomial& poly = in.result.cls.poly;
        if (!poly.is_symmetric()) {
            pass = false;
            detail = "class is not symmetric";
            break;
        }
        long long expect = static_cast<long long>(in.rep.dim()) - 4;
        if (!poly.is_zero() && (!poly.is_homogeneous() || poly.total_degree() != expect)) {
            pass = false;
            detail = "class is not homogeneous of degree N - 4";
            break;
        }
        OrbitDatum enlarged = in.datum;
        OrbitPoint pad;
        pad.label = "__probe";
        std::size_t live = 0;
        for (bool flag : enlarged.nonzero) live += flag ? 1 : 0;
        pad.orders.assign(live, 0);
        enlarged.points.push_back(std::move(pad));
        ClassResult again = orbit_class(in.rep, enlarged);
        if (again.cls.poly != poly || again.cls.codim != in.result.cls.codim) {
            pass = false;
            detail = "adding a vacuous marked point changed the class";
            break;
        }
    }
    criterion(8, "enlargement invariance, symmetry, and homogeneity hold on all " +
                     std::to_string(pool.size()) + " fuzzed inputs",
              pass, detail);
}

void run_criterion_9() {
    std::vector<WeightedPoint> points = {{Rational(2, 3), Rational(0), 3},
                                         {Rational(1, 4), Rational(1, 4), 4}};
    NewtonPolygon poly = build_polygon(points);
    bool pass = true;
    std::string detail;

    std::vector<std::pair<Rational, Rational>> expect_vertices = {
        {Rational(2, 3), Rational(0)}, {Rational(1, 4), Rational(1, 4)}};
    if (poly.vertices() != expect_vertices) {
        pass = false;
        detail = "vertices differ";
    }

    std::vector<std::string> notes;
    auto betas = poly.beta_vectors(&notes);
    std::vector<IntVec2> expect_can = {{0, 1}, {3, 5}, {1, 0}};
    if (betas.size() != 3) {
        pass = false;
        detail = "expected three boundary functionals";
    } else {
        for (std::size_t i = 0; i < 3; ++i)
            if (betas[i].can != expect_can[i]) {
                pass = false;
                detail = "canonical functionals differ";
            }
        if (betas[2].res != IntVec2{4, 0}) {
            pass = false;
            detail = "vertical-ray resolving functional is not (4,0)";
        }
        if (betas[1].res != IntVec2{3, 5}) {
            pass = false;
            detail = "edge resolving functional is not (3,5)";
        }
    }
    bool documented = false;
    for (const auto& n : notes)
        documented = documented || n.find("(0,3)") != std::string::npos;
    if (!documented) {
        pass = false;
        detail = "horizontal-ray note missing";
    }
    criterion(9, "hull fixture reproduces vertices and boundary functionals, with "
                 "the horizontal-ray choice documented as a note",
              pass, detail);
}

void run_criterion_10() {
    bool pass = true;
    std::string detail;
    for (int trial = 0; trial < 50 && pass; ++trial) {
        CharacterList cl = testgen::random_pointed_characters();
        TorusClassResult res = torus_orbit_class(cl);
        if (!res.pointed) {
            pass = false;
            detail = "generated cone not recognized as pointed";
            break;
        }

        CharacterList shuffled = cl;
        std::shuffle(shuffled.chars.begin(), shuffled.chars.end(), testgen::rng());
        TorusClassResult res2 = torus_orbit_class(shuffled);
        if (!same_function(res.e_sigma, res2.e_sigma) || res.cls != res2.cls) {
            pass = false;
            detail = "multiplicity depends on the generator order";
            break;
        }

        for (int probe = 0; probe < 10; ++probe) {
            auto lambda = testgen::random_positive_lambda(cl);
            if (res.e_sigma.evaluate(lambda) != volume_oracle(cl, lambda)) {
                pass = false;
                detail = "multiplicity disagrees with the volume oracle";
                break;
            }
        }

        CharacterList doubled = cl;
        std::vector<Integer> opposite;
        for (const Integer& e : doubled.chars.front()) opposite.push_back(-e);
        doubled.chars.push_back(std::move(opposite));
        doubled.support.push_back(true);
        TorusClassResult line = torus_orbit_class(doubled);
        if (line.pointed || !line.cls.is_zero()) {
            pass = false;
            detail = "cone containing a line did not give the zero class";
        }
    }
    criterion(10, "cone multiplicity is triangulation independent, matches the "
                  "volume oracle, and vanishes on lines",
              pass, detail);
}

} // namespace

int main() {
    std::vector<FuzzInput> pool;
    run_criterion_1();
    run_criterion_2();
    run_criterion_3();
    run_criterion_4();
    run_criterion_5(pool);
    run_criterion_6(pool);
    run_criterion_7(pool);
    run_criterion_8(pool);
    run_criterion_9();
    run_criterion_10();
    std::cout << "acceptance: " << (10 - g_failures) << " passed, " << g_failures
              << " failed\n";
    return g_failures;
}
