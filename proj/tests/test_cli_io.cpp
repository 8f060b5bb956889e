#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "orbclass/driver.hpp"

using orbclass::io::json;
using orbclass::io::run_job;
using orbclass::io::RunOutcome;

namespace {

json sample(const std::string& name) {
    std::ifstream file(std::string(SAMPLES_DIR) + "/" + name);
    REQUIRE(file.good());
    return json::parse(file);
}

json generic_elliptic_payload() {
    return {{"summands", {{{"a", 4}, {"b", 0}}, {{"a", 6}, {"b", 0}}}},
            {"nonzero", {true, true}},
            {"a_complete", true},
            {"projective_weights", {2, 3}}};
}

struct CliRun {
    int exit_code = -1;
    std::string out;
};

CliRun exec_cli(const std::string& args, const std::string& stdin_text = "") {
    namespace fs = std::filesystem;
    static int counter = 0;
    fs::path in = fs::temp_directory_path() /
                  ("orbclass_cli_stdin_" + std::to_string(++counter) + ".txt");
    {
        std::ofstream f(in);
        f << stdin_text;
    }
    std::string cmd = std::string("\"") + ORBCLASS_BIN + "\" " + args + " < " +
                      in.string() + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliRun run;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) run.out.append(buf, got);
    int status = pclose(pipe);
    fs::remove(in);
    REQUIRE(WIFEXITED(status));
    run.exit_code = WEXITSTATUS(status);
    return run;
}

} // namespace

TEST_CASE("ratmap job reports profile, class, and degree") {
    RunOutcome out = run_job("ratmap", sample("ratmap_profile.json"));
    REQUIRE(out.exit_code == 0);
    CHECK(out.body["n"] == 4);
    CHECK(out.body["profile"] == json::array({2, 3}));
    CHECK(out.body["codim"] == 6);
    CHECK(out.body["degree"] == "60");
    CHECK(out.body["stabilizer_weighted"] == false);
    CHECK(out.body["class"]["text"] ==
          "6480*v1^5*v2+32400*v1^4*v2^2+53460*v1^3*v2^3+32400*v1^2*v2^4+6480*v1*v2^5");
    CHECK(out.text.find("profile = 2 3\n") != std::string::npos);
    CHECK(out.text.find("degree = 60\n") != std::string::npos);
    CHECK(out.text.find("stabilizer_weighted = false\n") != std::string::npos);

    RunOutcome small = run_job("ratmap", {{"n", 2}, {"profile", {3}}});
    REQUIRE(small.exit_code == 0);
    CHECK(small.body["class"]["text"] == "6*v1*v2");
    CHECK(small.body["degree"] == "6");
}

TEST_CASE("ratmap job accepts a map given by coordinates and fixed points") {
    json payload = {{"n", 2},
                    {"F", {1, 0, 0}},
                    {"G", {0, 0, 1}},
                    {"roots", {{0, 1}, {1, 0}, {1, 1}}}};
    RunOutcome out = run_job("ratmap", payload);
    REQUIRE(out.exit_code == 0);
    CHECK(out.body["divergence"]["text"] == "2*x+2*y");
    CHECK(out.body["fixed_form"]["text"] == "x^2*y-x*y^2");
    CHECK(out.body["profile"] == json::array({1, 1, 1}));
    CHECK(out.body["degree"] == "6");
    CHECK(out.body["class"]["text"] == "6*v1*v2");
}

TEST_CASE("torus job pins the length-four cone in three variables") {
    RunOutcome out = run_job("torus", sample("torus_pointed.json"));
    REQUIRE(out.exit_code == 0);
    CHECK(out.body["pointed"] == true);
    CHECK(out.body["class"]["text"] == "x+y+2*z");
    CHECK(out.body["e_sigma"]["text"] ==
          "1/((z)*(y+z)*(x+y+z))+1/((z)*(x+z)*(x+y+z))");
    CHECK(out.body["notes"] == json::array());
    CHECK(out.text.find("class = x+y+2*z\n") != std::string::npos);

    const json& terms = out.body["e_sigma"]["terms"];
    REQUIRE(terms.size() == 2);
    for (const auto& t : terms) {
        CHECK(t["scalar"] == "1");
        CHECK(t["denominator"].size() == 3);
    }
}

TEST_CASE("elliptic job reports fibers with types and contributions") {
    RunOutcome generic = run_job("elliptic", sample("elliptic_generic.json"));
    REQUIRE(generic.exit_code == 0);
    CHECK(generic.body["n"] == 1);
    CHECK(generic.body["codim"] == 8);
    CHECK(generic.body["degree"] == "1119744");
    CHECK(generic.body["stabilizer_weighted"] == true);
    CHECK(generic.body["fibers"] == json::array());
    CHECK(generic.text.find("degree = 1119744\n") != std::string::npos);

    RunOutcome typed = run_job("elliptic", sample("elliptic_type3.json"));
    REQUIRE(typed.exit_code == 0);
    CHECK(typed.body["degree"] == "944784");
    REQUIRE(typed.body["fibers"].size() == 1);
    const json& fiber = typed.body["fibers"][0];
    CHECK(fiber["label"] == "f1");
    CHECK(fiber["ord_a"] == 1);
    CHECK(fiber["ord_b"] == 2);
    CHECK(fiber["c"] == "1/2");
    CHECK(fiber["type"] == "III");
    CHECK(typed.text.find("f1: ord = (1,2) c = 1/2 type = III") != std::string::npos);
}

TEST_CASE("polygon job round trips raw points byte for byte") {
    RunOutcome first = run_job("polygon", sample("polygon_points.json"));
    REQUIRE(first.exit_code == 0);
    const json& body = first.body;
    for (const char* key :
         {"points", "vertices", "rays", "normals", "scalars", "beta", "divisibility",
          "notes"})
        CHECK(body.contains(key));
    REQUIRE(body["vertices"].size() == 2);
    CHECK(body["vertices"][0] == json({{"x", "2/3"}, {"y", "0"}}));
    CHECK(body["vertices"][1] == json({{"x", "1/4"}, {"y", "1/4"}}));
    CHECK(body["rays"] == json({{0, 1}, {3, 5}, {1, 0}}));
    CHECK(body["scalars"]["s"] == "8/3");
    CHECK(body["divisibility"]["pass"] == true);
    REQUIRE(body["notes"].size() == 1);
    CHECK(body["notes"][0].get<std::string>().find("(0,3)") != std::string::npos);
    CHECK(first.text.find("divisibility = pass\n") != std::string::npos);

    RunOutcome second = run_job("polygon", json{{"points", body["points"]}});
    REQUIRE(second.exit_code == 0);
    CHECK(second.body.dump(2) == body.dump(2));
}

TEST_CASE("polygon job expands a class input to one polygon per point") {
    RunOutcome out = run_job("polygon", sample("verify_input.json"));
    REQUIRE(out.exit_code == 0);
    REQUIRE(out.body["polygons"].size() == 2);
    CHECK(out.body["polygons"][0]["label"] == "u1");
    CHECK(out.body["polygons"][1]["label"] == "u2");
    for (const auto& entry : out.body["polygons"])
        CHECK(entry["polygon"]["divisibility"]["pass"] == true);
    CHECK(out.text.find("point u1:\n") != std::string::npos);
    CHECK(out.text.find("point u2:\n") != std::string::npos);
    REQUIRE(out.body["notes"].size() == 1);
    CHECK(out.body["notes"][0] ==
          "input twisted by 1 so every summand has a nonnegative lower weight");

    json plain = {{"summands", {{{"a", 3}, {"b", 0}}, {{"a", 4}, {"b", 1}}}},
                  {"nonzero", {true, true}},
                  {"a_complete", true},
                  {"points", {{{"label", "p"}, {"orders", {1, 2}}}}}};
    RunOutcome untouched = run_job("polygon", plain);
    REQUIRE(untouched.exit_code == 0);
    CHECK(untouched.body["notes"] == json::array());
    REQUIRE(untouched.body["polygons"].size() == 1);
    CHECK(untouched.body["polygons"][0]["polygon"]["divisibility"]["pass"] == true);
}

TEST_CASE("verify job passes the battery on a clean input") {
    RunOutcome out = run_job("verify", sample("verify_input.json"));
    REQUIRE(out.exit_code == 0);
    const std::vector<std::string> expected = {
        "polynomiality",     "symmetry", "homogeneity",           "point_enlargement",
        "twist_1",           "twist_2",  "localization_equality", "divisibility"};
    REQUIRE(out.body["checks"].size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(out.body["checks"][i]["name"] == expected[i]);
        CHECK(out.body["checks"][i]["pass"] == true);
    }
    CHECK(out.body["all_pass"] == true);
    CHECK(out.text.find("all_pass = true\n") != std::string::npos);
}

TEST_CASE("corrupting the line term trips the oracle equality check") {
    json payload = sample("verify_input.json");
    payload["corrupt_line_term"] = true;
    RunOutcome out = run_job("verify", payload);
    REQUIRE(out.exit_code == 0);
    CHECK(out.body["all_pass"] == false);
    for (const auto& check : out.body["checks"]) {
        if (check["name"] == "localization_equality") {
            CHECK(check["pass"] == false);
            CHECK_FALSE(check["detail"].get<std::string>().empty());
        }
        if (check["name"] == "divisibility") CHECK(check["pass"] == true);
    }
    REQUIRE(out.body["notes"].size() == 1);
    CHECK(out.body["notes"][0] ==
          "the main route was deliberately corrupted (corrupt_line_term)");
    CHECK(out.text.find("localization_equality: fail") != std::string::npos);
}

TEST_CASE("schema violations name the offending json pointer") {
    struct Case {
        const char* command;
        json payload;
        const char* fragment;
    };
    const std::vector<Case> cases = {
        {"class",
         {{"summands", {{{"a", 4}, {"b", 0}}}}, {"nonzero", {true}}},
         "/a_complete: missing required field"},
        {"class",
         [] {
             json p = generic_elliptic_payload();
             p["stabilizer_order"] = 0;
             return p;
         }(),
         "/stabilizer_order: must be a positive integer"},
        {"elliptic",
         {{"n", 1}, {"fibers", json::array()}, {"types", {"II"}}},
         "/types: give either fibers or types, not both"},
        {"elliptic", {{"n", 1}, {"types", {"VII"}}}, "/types/0: unknown fiber type"},
        {"ratmap", {{"n", 3}}, "/profile: give either a profile or the pair F, G"},
        {"ratmap",
         {{"n", 2}, {"F", {1, 0, 0}}, {"G", {0, 0, 1}}, {"roots", {{1}}}},
         "/roots/0: expected a pair"},
        {"torus", {{"characters", {{1, 0}}}, {"support", {true}}},
         "/d: missing required field"},
        {"polygon",
         {{"points", {{{"x", "1/2"}, {"y", 0}, {"weight", 0}}}}},
         "/points/0/weight: must be a positive integer"},
    };
    for (const auto& c : cases) {
        INFO(c.command << " expecting " << c.fragment);
        RunOutcome out = run_job(c.command, c.payload);
        CHECK(out.exit_code == 1);
        CHECK(out.body["error"] == "Schema");
        CHECK(out.body["message"].get<std::string>().find(c.fragment) !=
              std::string::npos);
        CHECK(out.text.rfind("error: Schema: ", 0) == 0);
    }
}

TEST_CASE("validation failures map to exit 1 with the error name") {
    struct Case {
        const char* command;
        json payload;
        const char* error;
    };
    const std::vector<Case> cases = {
        {"class",
         {{"summands", {{{"a", 1}, {"b", 2}}}},
          {"nonzero", {true}},
          {"a_complete", true}},
         "BadArgument"},
        {"class",
         [] {
             json p = generic_elliptic_payload();
             p["projective_weights"] = {1, 1};
             return p;
         }(),
         "NonProportionalWeights"},
        {"elliptic",
         {{"n", 1}, {"fibers", {{{"ord_a", 5}, {"ord_b", 0}}}}},
         "OrderBudgetExceeded"},
        {"torus",
         {{"d", 2}, {"characters", {{0, 0}, {1, 0}}}, {"support", {true, true}}},
         "ZeroCharacter"},
        {"ratmap", {{"n", 3}, {"profile", {1, 1}}}, "ProfileSumMismatch"},
    };
    for (const auto& c : cases) {
        INFO(c.command << " expecting " << c.error);
        RunOutcome out = run_job(c.command, c.payload);
        CHECK(out.exit_code == 1);
        CHECK(out.body["error"] == c.error);
        CHECK_FALSE(out.body["message"].get<std::string>().empty());
    }

    RunOutcome unknown = run_job("flavor", json::object());
    CHECK(unknown.exit_code == 1);
    CHECK(unknown.body["error"] == "BadArgument");
    CHECK(unknown.body["message"].get<std::string>().find("unknown command") !=
          std::string::npos);
}

TEST_CASE("job output bytes are deterministic") {
    for (const char* name : {"torus_pointed.json", "class_generic.json",
                             "verify_input.json", "polygon_points.json"}) {
        const char* command = std::string(name).rfind("torus", 0) == 0    ? "torus"
                              : std::string(name).rfind("class", 0) == 0  ? "class"
                              : std::string(name).rfind("verify", 0) == 0 ? "verify"
                                                                          : "polygon";
        json payload = sample(name);
        RunOutcome first = run_job(command, payload);
        RunOutcome second = run_job(command, payload);
        CHECK(first.body.dump(2) == second.body.dump(2));
        CHECK(first.text == second.text);
        CHECK(first.exit_code == second.exit_code);
    }
}

TEST_CASE("a supplied stabilizer order divides the class and degree") {
    RunOutcome plain = run_job("class", generic_elliptic_payload());
    REQUIRE(plain.exit_code == 0);
    CHECK(plain.body["degree"] == "1119744");
    CHECK(plain.body["stabilizer_weighted"] == true);
    CHECK(plain.body["notes"] == json::array());

    json weighted_payload = generic_elliptic_payload();
    weighted_payload["stabilizer_order"] = 2;
    RunOutcome weighted = run_job("class", weighted_payload);
    REQUIRE(weighted.exit_code == 0);
    CHECK(weighted.body["degree"] == "559872");
    CHECK(weighted.body["stabilizer_weighted"] == false);
    REQUIRE(weighted.body["notes"].size() == 1);
    CHECK(weighted.body["notes"][0] ==
          "class and degree divided by the supplied stabilizer order 2");
    CHECK(weighted.body["codim"] == plain.body["codim"]);
}

TEST_CASE("binary runs end to end on the sample files") {
    const std::string samples = SAMPLES_DIR;

    CliRun elliptic = exec_cli("elliptic --input " + samples + "/elliptic_generic.json");
    REQUIRE(elliptic.exit_code == 0);
    json body = json::parse(elliptic.out);
    CHECK(body["degree"] == "1119744");

    CliRun ratmap =
        exec_cli("ratmap --input " + samples + "/ratmap_profile.json --text");
    REQUIRE(ratmap.exit_code == 0);
    CHECK(ratmap.out.find("profile = 2 3\n") != std::string::npos);
    CHECK(ratmap.out.find("degree = 60\n") != std::string::npos);

    CliRun torus = exec_cli("torus --input " + samples + "/torus_pointed.json --text");
    REQUIRE(torus.exit_code == 0);
    CHECK(torus.out.find("class = x+y+2*z\n") != std::string::npos);

    CliRun flags = exec_cli("torus --d 3 --char 0,0,1 --char 0,1,1 --char 1,0,1 "
                            "--char 1,1,1 --json");
    REQUIRE(flags.exit_code == 0);
    CHECK(json::parse(flags.out)["class"]["text"] == "x+y+2*z");

    CliRun polygon = exec_cli("polygon --input " + samples + "/polygon_points.json");
    REQUIRE(polygon.exit_code == 0);
    CHECK(json::parse(polygon.out)["divisibility"]["pass"] == true);

    CliRun verify = exec_cli("verify --input " + samples + "/verify_input.json");
    REQUIRE(verify.exit_code == 0);
    CHECK(json::parse(verify.out)["all_pass"] == true);

    CliRun corrupted = exec_cli("verify --input " + samples +
                                "/verify_input.json --corrupt-line-term");
    REQUIRE(corrupted.exit_code == 0);
    CHECK(json::parse(corrupted.out)["all_pass"] == false);

    CliRun cls = exec_cli("class --input " + samples + "/class_generic.json --text");
    REQUIRE(cls.exit_code == 0);
    CHECK(cls.out.find("degree = 1119744\n") != std::string::npos);
    CHECK(cls.out.find("stabilizer_weighted = true\n") != std::string::npos);
}

TEST_CASE("binary reads stdin and reports errors on exit code 1") {
    CliRun stdin_run = exec_cli("ratmap --input -", R"({"n": 2, "profile": [3]})");
    REQUIRE(stdin_run.exit_code == 0);
    CHECK(json::parse(stdin_run.out)["degree"] == "6");

    CliRun schema = exec_cli("elliptic --input -",
                             R"({"n": 1, "fibers": [], "types": ["II"]})");
    CHECK(schema.exit_code == 1);
    CHECK(schema.out.find("Schema") != std::string::npos);

    CliRun bad_json = exec_cli("torus --input -", "{not json");
    CHECK(bad_json.exit_code == 1);
    CHECK(bad_json.out.find("input is not valid JSON") != std::string::npos);

    CliRun bad_subcommand = exec_cli("flavor");
    CHECK(bad_subcommand.exit_code == 1);
}
