#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "orbclass/driver.hpp"

namespace {

using orbclass::io::json;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

json int_list(const std::string& s, char sep = ',') {
    json out = json::array();
    for (const auto& piece : split(s, sep)) out.push_back(std::stoll(piece));
    return out;
}

struct SubcommandState {
    std::string input;
    bool as_text = false;
    bool as_json = false;

    // convenience flags
    long long n = 0;
    bool n_set = false;
    std::vector<std::string> fibers;
    std::vector<std::string> types;
    std::string profile;
    std::string coeffs_f, coeffs_g, roots;
    long long d = 0;
    bool d_set = false;
    std::vector<std::string> chars;
    std::string support;
    std::vector<std::string> points;
    long long stabilizer_order = 0;
    std::string weights;
    bool corrupt_line_term = false;
};

json payload_from_input(const std::string& input) {
    std::string raw;
    if (input == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        raw = buf.str();
    } else {
        std::ifstream file(input);
        if (!file)
            throw orbclass::validation_error(orbclass::validation_error::code::schema,
                                             "cannot open input file '" + input + "'");
        std::ostringstream buf;
        buf << file.rdbuf();
        raw = buf.str();
    }
    try {
        return json::parse(raw);
    } catch (const json::parse_error& e) {
        throw orbclass::validation_error(orbclass::validation_error::code::schema,
                                         std::string("input is not valid JSON: ") + e.what());
    }
}

json build_payload(const std::string& command, const SubcommandState& st) {
    json payload = st.input.empty() ? json::object() : payload_from_input(st.input);
    if (st.n_set) payload["n"] = st.n;
    if (!st.fibers.empty()) {
        payload["fibers"] = json::array();
        for (const auto& f : st.fibers) {
            auto parts = split(f, ',');
            if (parts.size() != 2)
                throw orbclass::validation_error(
                    orbclass::validation_error::code::bad_argument,
                    "--fiber expects ordA,ordB");
            payload["fibers"].push_back(
                {{"ord_a", std::stoll(parts[0])}, {"ord_b", std::stoll(parts[1])}});
        }
    }
    if (!st.types.empty()) payload["types"] = st.types;
    if (!st.profile.empty()) payload["profile"] = int_list(st.profile);
    if (!st.coeffs_f.empty()) payload["F"] = split(st.coeffs_f, ',');
    if (!st.coeffs_g.empty()) payload["G"] = split(st.coeffs_g, ',');
    if (!st.roots.empty()) {
        payload["roots"] = json::array();
        for (const auto& r : split(st.roots, ',')) {
            auto parts = split(r, ':');
            if (parts.size() != 2)
                throw orbclass::validation_error(
                    orbclass::validation_error::code::bad_argument,
                    "--roots expects p:q,p:q,...");
            payload["roots"].push_back(json::array({parts[0], parts[1]}));
        }
    }
    if (st.d_set) payload["d"] = st.d;
    if (!st.chars.empty()) {
        payload["characters"] = json::array();
        for (const auto& c : st.chars) payload["characters"].push_back(int_list(c));
        if (st.support.empty()) {
            json sup = json::array();
            for (std::size_t i = 0; i < st.chars.size(); ++i) sup.push_back(true);
            payload["support"] = sup;
        }
    }
    if (!st.support.empty()) {
        json sup = json::array();
        for (const auto& piece : split(st.support, ','))
            sup.push_back(piece == "1" || piece == "true");
        payload["support"] = sup;
    }
    if (!st.points.empty()) {
        payload["points"] = json::array();
        for (const auto& p : st.points) {
            auto parts = split(p, ',');
            if (parts.size() != 2 && parts.size() != 3)
                throw orbclass::validation_error(
                    orbclass::validation_error::code::bad_argument,
                    "--point expects x,y[,weight]");
            json point = {{"x", parts[0]}, {"y", parts[1]}};
            if (parts.size() == 3) point["weight"] = parts[2];
            payload["points"].push_back(point);
        }
    }
    if (st.stabilizer_order > 0) payload["stabilizer_order"] = st.stabilizer_order;
    if (!st.weights.empty()) payload["projective_weights"] = int_list(st.weights);
    if (st.corrupt_line_term) payload["corrupt_line_term"] = true;
    (void)command;
    return payload;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"orbclass: equivariant classes of orbit closures"};
    app.require_subcommand(1);

    const std::map<std::string, std::string> commands = {
        {"class", "equivariant class of a GL(2) orbit closure"},
        {"elliptic", "Weierstrass data of twisted elliptic fibrations"},
        {"ratmap", "rational self-maps of the projective line"},
        {"torus", "torus orbit closures via equivariant multiplicities"},
        {"polygon", "rational Newton polygons and their lattice data"},
        {"verify", "consistency battery on one class input"}};
    std::map<std::string, SubcommandState> states;
    for (const auto& [name, description] : commands) {
        auto* sub = app.add_subcommand(name, description);
        auto& st = states[name];
        sub->add_option("--input", st.input, "JSON payload file, or - for stdin");
        sub->add_flag("--text", st.as_text, "human-readable output");
        sub->add_flag("--json", st.as_json, "JSON output (default)");
        if (name == "elliptic" || name == "ratmap") {
            sub->add_option("--n", st.n, "twist parameter / map degree")
                ->each([&st](const std::string&) { st.n_set = true; });
        }
        if (name == "elliptic") {
            sub->add_option("--fiber", st.fibers, "singular fiber as ordA,ordB (repeatable)");
            sub->add_option("--type", st.types, "singular fiber Kodaira type (repeatable)");
        }
        if (name == "ratmap") {
            sub->add_option("--profile", st.profile, "fixed-point profile j1,j2,...");
            sub->add_option("--F", st.coeffs_f, "coefficients of F, descending in x");
            sub->add_option("--G", st.coeffs_g, "coefficients of G, descending in x");
            sub->add_option("--roots", st.roots, "fixed points p:q,p:q,...");
        }
        if (name == "torus") {
            sub->add_option("--d", st.d, "torus rank")->each([&st](const std::string&) {
                st.d_set = true;
            });
            sub->add_option("--char", st.chars, "character e1,e2,... (repeatable)");
            sub->add_option("--support", st.support, "nonzero flags 1,0,... per character");
        }
        if (name == "polygon") {
            sub->add_option("--point", st.points, "defining point x,y[,weight] (repeatable)");
        }
        if (name == "class") {
            sub->add_option("--stabilizer-order", st.stabilizer_order,
                            "divide the class and degree by this order");
            sub->add_option("--weights", st.weights,
                            "projective weights w1,w2,... for the degree");
        }
        if (name == "verify") {
            sub->add_flag("--corrupt-line-term", st.corrupt_line_term,
                          "negative control: corrupt the main route's line term");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    const SubcommandState& st = states[name];

    orbclass::io::RunOutcome out;
    try {
        out = orbclass::io::run_job(name, build_payload(name, st));
    } catch (const orbclass::validation_error& e) {
        json body = {{"error", e.name()}, {"message", e.what()}};
        out = {std::move(body),
               std::string("error: ") + e.name() + ": " + e.what() + "\n", 1};
    }

    if (st.as_text && !st.as_json)
        std::cout << out.text;
    else
        std::cout << out.body.dump(2) << "\n";
    if (out.exit_code != 0)
        std::cerr << out.body.value("message", std::string("error")) << "\n";
    return out.exit_code;
}
