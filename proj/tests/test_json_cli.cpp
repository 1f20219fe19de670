#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "eigenbound/json_io.hpp"
#include "eigenbound/presets.hpp"

using namespace eigenbound;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string command =
        env_prefix + std::string(EIGENBOUND_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buffer{};
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buffer.data(), buffer.size(), pipe)) result.output += buffer.data();
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

json extract_json(const std::string& text) {
    const auto start = text.find('{');
    REQUIRE(start != std::string::npos);
    return json::parse(text.substr(start));
}

// Minimal structural validator for the draft-07 subset the shipped schemas
// use: type, properties, required, items.
bool validate_against(const json& schema, const json& value, std::string& why);

bool check_type(const std::string& type, const json& value, std::string& why) {
    if (type == "object") return value.is_object() || (why = "expected object", false);
    if (type == "array") return value.is_array() || (why = "expected array", false);
    if (type == "string") return value.is_string() || (why = "expected string", false);
    if (type == "number") return value.is_number() || (why = "expected number", false);
    if (type == "integer") return value.is_number_integer() || (why = "expected integer", false);
    if (type == "boolean") return value.is_boolean() || (why = "expected boolean", false);
    why = "unknown schema type " + type;
    return false;
}

bool validate_against(const json& schema, const json& value, std::string& why) {
    if (schema.contains("type")) {
        const auto& t = schema["type"];
        if (t.is_string()) {
            if (!check_type(t.get<std::string>(), value, why)) return false;
        } else if (t.is_array()) {
            bool any = false;
            for (const auto& option : t)
                if (std::string ignore; check_type(option.get<std::string>(), value, ignore))
                    any = true;
            if (!any) {
                why = "value matches none of the allowed types";
                return false;
            }
        }
    }
    if (schema.contains("required"))
        for (const auto& key : schema["required"])
            if (!value.contains(key.get<std::string>())) {
                why = "missing required key " + key.get<std::string>();
                return false;
            }
    if (schema.contains("properties") && value.is_object())
        for (const auto& [key, sub] : schema["properties"].items())
            if (value.contains(key) && !validate_against(sub, value.at(key), why)) {
                why = key + ": " + why;
                return false;
            }
    if (schema.contains("items") && value.is_array())
        for (const auto& item : value)
            if (!validate_against(schema["items"], item, why)) return false;
    return true;
}

json load_schema(const std::string& name) {
    const std::string path = std::string(EIGENBOUND_SOURCE_DIR) + "/schemas/" + name;
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "missing schema ", path);
    json schema;
    in >> schema;
    return schema;
}

}  // namespace

TEST_CASE("cli: preset bounds") {
    const RunResult dp6 = run_cli("bound toric --preset dp6 --json");
    CHECK(dp6.exit_code == 0);
    const json report = extract_json(dp6.output);
    CHECK(report["result"]["bound_exact"] == "672/127");

    const RunResult cp2 = run_cli("bound toric --preset cp2");
    CHECK(cp2.exit_code == 0);
    CHECK(cp2.output.find("16/3") != std::string::npos);

    const RunResult scaled = run_cli("bound toric --preset cp1 --lambda 2 --json");
    CHECK(scaled.exit_code == 0);
    CHECK(extract_json(scaled.output)["result"]["bound_exact"] == "12");
}

TEST_CASE("cli: bound report validates against the shipped schema") {
    const json schema = load_schema("bound_result.schema.json");
    for (const std::string preset : {"cp1", "dp6", "disc"}) {
        const RunResult r = run_cli("bound toric --preset " + preset + " --json");
        REQUIRE(r.exit_code == 0);
        std::string why;
        const bool ok = validate_against(schema, extract_json(r.output), why);
        INFO("preset ", preset, ": ", why);
        CHECK(ok);
    }
}

TEST_CASE("cli: koiso-sakane commands") {
    const RunResult exact = run_cli("bound ks-family --N 1 --q 1 --json");
    CHECK(exact.exit_code == 0);
    CHECK(extract_json(exact.output)["result"]["bound_exact"] == "2530/443");

    const RunResult table = run_cli("bound ks-family --table --json");
    CHECK(table.exit_code == 0);
    const json rows = extract_json(table.output)["result"];
    REQUIRE(rows.size() == 5);
    CHECK(std::abs(rows[0]["bound"].get<double>() - 5.7526) < 1e-4);

    const RunResult warn = run_cli("bound ks --n 0,1,0 --p 0,2,0 --q 1,1,1");
    CHECK(warn.exit_code == 0);
    CHECK(warn.output.find("obstruction") != std::string::npos);
}

TEST_CASE("cli: moments command emits rational strings") {
    const RunResult r = run_cli("moments --preset dp6 --max-degree 2");
    CHECK(r.exit_code == 0);
    const json report = extract_json(r.output);
    CHECK(report["result"]["vol"] == "3");
    CHECK(report["result"]["gram"][0][0] == "5/6");
    CHECK_FALSE(report["result"].contains("t3"));
    std::string why;
    CHECK(validate_against(load_schema("run_report.schema.json"), report, why));
}

TEST_CASE("cli: check command") {
    const RunResult r = run_cli("check --preset cp2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("Fano-normalized: yes") != std::string::npos);
    CHECK(r.output.find("(0, 0)") != std::string::npos);
}

TEST_CASE("cli: table1") {
    const RunResult r = run_cli("table1 --json");
    CHECK(r.exit_code == 0);
    const json rows = extract_json(r.output)["result"];
    REQUIRE(rows.size() == 6);  // five manifolds, threefold via both routes
    CHECK(rows[0]["bound_exact"] == "6");
    CHECK(rows[1]["bound_exact"] == "16/3");
    CHECK(rows[2]["bound_exact"] == "32/7");
    CHECK(rows[3]["bound_exact"] == "672/127");
    CHECK(rows[5]["bound_exact"] == "2530/443");
}

TEST_CASE("cli: exit codes") {
    CHECK(run_cli("bound toric /nonexistent.json").exit_code == 1);
    CHECK(run_cli("bound toric").exit_code == 1);  // no input given
    CHECK(run_cli("nonsense").exit_code == 1);

    // shifted segment: mathematically invalid without recentering
    const std::string path = "/tmp/eigenbound_shifted.json";
    {
        std::ofstream out(path);
        out << R"({"dimension":1,"facets":[{"v":[1],"c":0},{"v":[-1],"c":2}]})";
    }
    CHECK(run_cli("bound toric " + path).exit_code == 2);
    const RunResult recentered = run_cli("bound toric " + path + " --recenter --json");
    CHECK(recentered.exit_code == 0);
    CHECK(extract_json(recentered.output)["result"]["bound_exact"] == "6");
}

TEST_CASE("cli: every emitted preset re-parses to an identical polytope") {
    const json schema = load_schema("polytope.schema.json");
    for (const auto& name : polytope_preset_names()) {
        const std::string path = "/tmp/eigenbound_emitted_" + name + ".json";
        const RunResult first =
            run_cli("bound toric --preset " + name + " --emit-polytope " + path + " --json");
        REQUIRE(first.exit_code == 0);
        const RunResult second = run_cli("bound toric " + path + " --json");
        REQUIRE(second.exit_code == 0);
        CHECK(extract_json(first.output)["result"]["bound"] ==
              extract_json(second.output)["result"]["bound"]);

        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        std::string why;
        const bool schema_ok = validate_against(schema, json::parse(ss.str()), why);
        INFO(name, ": ", why);
        CHECK(schema_ok);
        const Polytope P = parse_polytope(ss.str());
        const Polytope Q = polytope_preset(name);
        REQUIRE(P.facets().size() == Q.facets().size());
        for (std::size_t k = 0; k < P.facets().size(); ++k) {
            CHECK(P.facets()[k].normal == Q.facets()[k].normal);
            CHECK(P.facets()[k].constant == Q.facets()[k].constant);
        }
        CHECK(P.name() == Q.name());
    }
}

TEST_CASE("cli: EIGENBOUND_THREADS mirrors --threads") {
    const RunResult env_run = run_cli(
        "spectrum --preset dp6 --potential doran-dp6 --degree 2 --json",
        "EIGENBOUND_THREADS=2 ");
    const RunResult flag_run =
        run_cli("--threads 2 spectrum --preset dp6 --potential doran-dp6 --degree 2 --json");
    REQUIRE(env_run.exit_code == 0);
    REQUIRE(flag_run.exit_code == 0);
    CHECK(extract_json(env_run.output)["result"]["eigenvalues"] ==
          extract_json(flag_run.output)["result"]["eigenvalues"]);
}

TEST_CASE("cli: spectrum runs and validates") {
    const RunResult r = run_cli("spectrum --preset cp1 --degree 1 --json");
    CHECK(r.exit_code == 0);
    const json report = extract_json(r.output);
    REQUIRE(report["result"]["eigenvalues"].size() == 2);
    CHECK(std::abs(report["result"]["eigenvalues"][0].get<double>()) < 1e-6);
    std::string why;
    const bool ok = validate_against(load_schema("spectrum.schema.json"), report["result"], why);
    INFO(why);
    CHECK(ok);
}

TEST_CASE("cli: disc raw-moment preset") {
    const RunResult r = run_cli("bound toric --preset disc --json");
    CHECK(r.exit_code == 0);
    CHECK(extract_json(r.output)["result"]["bound_exact"] == "16/3");
}

TEST_CASE("cli: identical invocations produce identical reports") {
    const RunResult a = run_cli("bound toric --preset dp6 --json");
    const RunResult b = run_cli("bound toric --preset dp6 --json");
    CHECK(a.output == b.output);
}

TEST_CASE("moments json round-trip through the raw-moments parser") {
    const MomentTensor M = moment_tensors(polytope_preset("cp2"));
    const MomentTensor N = parse_moments(moments_to_json(M));
    CHECK(N.vol == M.vol);
    CHECK(N.gram(0, 1) == M.gram(0, 1));
    CHECK(N.t4(0, 0, 1, 1) == M.t4(0, 0, 1, 1));
}

TEST_CASE("shipped preset documents match the compiled-in data") {
    for (const auto& name : polytope_preset_names()) {
        std::ifstream in(std::string(EIGENBOUND_SOURCE_DIR) + "/data/presets/" + name + ".json");
        REQUIRE(in.good());
        std::stringstream ss;
        ss << in.rdbuf();
        const Polytope P = parse_polytope(ss.str());
        const Polytope Q = polytope_preset(name);
        REQUIRE(P.facets().size() == Q.facets().size());
        for (std::size_t k = 0; k < P.facets().size(); ++k) {
            CHECK(P.facets()[k].normal == Q.facets()[k].normal);
            CHECK(P.facets()[k].constant == Q.facets()[k].constant);
        }
    }
    std::ifstream in(std::string(EIGENBOUND_SOURCE_DIR) + "/data/presets/disc_moments.json");
    REQUIRE(in.good());
    json doc;
    in >> doc;
    const MomentTensor M = parse_moments(doc);
    const MomentTensor D = disc_moments();
    CHECK(M.vol == D.vol);
    CHECK(M.gram(0, 0) == D.gram(0, 0));
    CHECK(M.t4(0, 0, 1, 1) == D.t4(0, 0, 1, 1));
}

TEST_CASE("cli: hexagon spectrum example") {
    const RunResult r =
        run_cli("spectrum --preset dp6 --potential doran-dp6 --degree 2 --json");
    REQUIRE(r.exit_code == 0);
    const json evs = extract_json(r.output)["result"]["eigenvalues"];
    REQUIRE(evs.size() == 6);
    CHECK(std::abs(evs[1].get<double>() - 2.0) < 0.02);
    CHECK(std::abs(evs[5].get<double>() - 6.3288) < 0.02);
}

TEST_CASE("potential json parses") {
    const SymplecticPotential S = parse_potential_text(
        R"({"poly_correction":[{"alpha":[2,0],"coeff":"-0.5"},{"alpha":[0,2],"coeff":-0.25}],
            "log_terms":[{"a":[1,0],"b":1.5,"coeff":-0.5}]})",
        2);
    CHECK(S.poly_correction.coefficient({2, 0}) == Rational(-1, 2));
    CHECK(S.poly_correction.coefficient({0, 2}) == Rational(-1, 4));
    REQUIRE(S.log_terms.size() == 1);
    CHECK(S.log_terms[0].offset == 1.5);
}
