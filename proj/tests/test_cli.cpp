#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gfl/canon.hpp"
#include "gfl/charfn.hpp"
#include "gfl/cli.hpp"
#include "gfl/factor.hpp"
#include "gfl/graph_io.hpp"
#include "gfl/philox.hpp"
#include "gfl/sampler.hpp"
#include "json.hpp"

using namespace gfl;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    RunResult res;
    res.exit_code = run_command(args, out, err);
    res.out = out.str();
    res.err = err.str();
    return res;
}

json outputs_of(const RunResult& res) {
    json doc = json::parse(res.out);
    REQUIRE(doc.contains("outputs"));
    return doc["outputs"];
}

std::string data_file(const std::string& name) { return std::string(GFL_DATA_DIR) + "/" + name; }

std::string temp_path(const std::string& name) {
    return std::string("/tmp/gfl_cli_test_") + name;
}

// minimal structural validator for the published schema: type, required,
// properties, items, enum
void check_schema(const json& value, const json& schema, const std::string& where) {
    INFO("at ", where);
    if (schema.contains("type")) {
        const std::string type = schema["type"];
        if (type == "object") CHECK(value.is_object());
        else if (type == "array") CHECK(value.is_array());
        else if (type == "string") CHECK(value.is_string());
        else if (type == "boolean") CHECK(value.is_boolean());
        else if (type == "integer") CHECK(value.is_number_integer());
        else if (type == "number") CHECK(value.is_number());
        else FAIL("unknown schema type ", type);
    }
    if (schema.contains("enum")) {
        bool hit = false;
        for (const json& option : schema["enum"]) hit = hit || option == value;
        CHECK(hit);
    }
    if (schema.contains("required") && value.is_object())
        for (const json& key : schema["required"]) {
            INFO("missing key ", key.get<std::string>());
            CHECK(value.contains(key.get<std::string>()));
        }
    if (schema.contains("properties") && value.is_object())
        for (const auto& [key, sub] : schema["properties"].items())
            if (value.contains(key)) check_schema(value[key], sub, where + "." + key);
    if (schema.contains("items") && value.is_array())
        for (std::size_t i = 0; i < value.size(); ++i)
            check_schema(value[i], schema["items"], where + "[" + std::to_string(i) + "]");
}

json load_schema() {
    std::ifstream f(std::string(GFL_DOCS_DIR) + "/cli-schema.json");
    REQUIRE(f.good());
    return json::parse(f);
}

void check_envelope(const RunResult& res, const std::string& command) {
    json doc = json::parse(res.out);
    json schema = load_schema();
    check_schema(doc, schema["envelope"], command + " envelope");
    CHECK(doc["command"] == command);
    REQUIRE(schema["outputs"].contains(command));
    check_schema(doc["outputs"], schema["outputs"][command], command + " outputs");
}

std::vector<double> csv_numbers(const std::string& csv) {
    std::vector<double> out;
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                std::size_t used = 0;
                double v = std::stod(cell, &used);
                if (used == cell.size()) out.push_back(v);
            } catch (const std::exception&) {
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("decompose command prints the factor expansion") {
    RunResult res = run({"decompose", "--named", "K3"});
    CHECK(res.exit_code == 0);
    check_envelope(res, "decompose");

    json out = outputs_of(res);
    CHECK(out["ell"] == 3);
    CHECK(out["mode"] == "subgraph");
    // same content as the library call
    json direct = json::parse(factor_expression_json(subgraph_decomposition(named_graph("K3"))));
    CHECK(out["terms"] == direct);

    // induced flag switches the expansion
    RunResult ind = run({"decompose", "--named", "K3", "--induced"});
    CHECK(ind.exit_code == 0);
    json ind_direct =
        json::parse(factor_expression_json(induced_decomposition(named_graph("K3"))));
    CHECK(outputs_of(ind)["terms"] == ind_direct);

    // edge-list grammar reaches the same pattern
    RunResult by_list = run({"decompose", "--graph", "3;0-1,0-2,1-2"});
    CHECK(outputs_of(by_list) == outputs_of(res));

    // CSV rows carry one line per term plus the header
    RunResult csv = run({"decompose", "--named", "K3", "--format", "csv"});
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.rfind("class,scalar,sqrtp,sqrt1mp,binom_v,binom_ell,qpoly\n", 0) == 0);
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 1 + long(out["terms"].size()));
}

TEST_CASE("critical command lists densities") {
    RunResult res = run({"critical", "--named", "P2"});
    CHECK(res.exit_code == 0);
    check_envelope(res, "critical");
    json densities = outputs_of(res)["densities"];
    REQUIRE(densities.size() == 1);
    CHECK(densities[0]["exact"] == true);
    CHECK(densities[0]["p"] == "1/3");
    CHECK(densities[0]["level"] == 3);

    CHECK(outputs_of(run({"critical", "--named", "K4"}))["densities"].empty());
}

TEST_CASE("simulate is reproducible byte for byte") {
    std::vector<std::string> args{"simulate", "--model", "gnm",      "--n",    "5",
                                  "--m",      "3",       "--stat",   "triangle", "--samples",
                                  "10",       "--seed",  "7"};
    RunResult a = run(args), b = run(args);
    CHECK(a.exit_code == 0);
    check_envelope(a, "simulate");
    CHECK(json::parse(a.out)["outputs"].dump() == json::parse(b.out)["outputs"].dump());
    CHECK(json::parse(a.out)["seed"] == 7);

    // csv twice: the whole payload is deterministic
    std::vector<std::string> csv_args = args;
    csv_args.push_back("--format");
    csv_args.push_back("csv");
    RunResult c = run(csv_args), d = run(csv_args);
    CHECK(c.out == d.out);
    CHECK(c.out.rfind("value,count\n", 0) == 0);

    // and matches the library route exactly
    StatisticSpec stat{StatisticKind::subgraph, named_graph("K3"), 0};
    ModelSpec model;
    model.kind = ModelKind::gnm;
    model.n = 5;
    model.m = 3;
    model.seed = 7;
    CHECK(c.out == pmf_to_csv(run_simulation(model, stat, 10, 1)));
}

TEST_CASE("simulate handles subset statistics") {
    RunResult res = run({"simulate", "--model", "slice", "--n", "13", "--m", "6", "--stat",
                         "kap:3", "--samples", "200", "--seed", "11"});
    CHECK(res.exit_code == 0);
    json pmf = outputs_of(res)["pmf"];
    CHECK(pmf["model"]["kind"] == "subset_fixed_size");
    CHECK(pmf["statistic"] == "kap(3)");
    CHECK(pmf["total_samples"] == 200);

    RunResult ind = run({"simulate", "--model", "gnp", "--n", "13", "--p", "1/3", "--stat",
                         "kap:3", "--samples", "50", "--seed", "11"});
    CHECK(outputs_of(ind)["pmf"]["model"]["kind"] == "subset_independent");
    CHECK(outputs_of(ind)["pmf"]["model"]["p"] == "1/3");
}

TEST_CASE("csv and json variants carry the same numbers") {
    std::vector<std::string> base{"k2k2", "--n-list", "8,10", "--samples", "3000", "--seed", "5"};
    RunResult j = run(base);
    CHECK(j.exit_code == 0);
    check_envelope(j, "k2k2");
    std::vector<std::string> csv_args = base;
    csv_args.push_back("--format");
    csv_args.push_back("csv");
    RunResult c = run(csv_args);

    std::vector<double> numbers = csv_numbers(c.out);
    json rows = outputs_of(j)["rows"];
    REQUIRE(rows.size() == 2);
    REQUIRE(numbers.size() == 8);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(numbers[4 * i + 0] == rows[i]["n"].get<double>());
        CHECK(numbers[4 * i + 1] == rows[i]["sigma_hat"].get<double>());
        CHECK(numbers[4 * i + 2] == rows[i]["max_point_prob"].get<double>());
        CHECK(numbers[4 * i + 3] == rows[i]["scaled"].get<double>());
    }
}

TEST_CASE("lclt-check emits the law and the distances") {
    SUBCASE("triangles under independent edges use the exact law") {
        RunResult res = run({"lclt-check", "--model", "gnp", "--n", "12", "--p", "1/2", "--stat",
                             "triangle", "--samples", "20000", "--seed", "4", "--sup-tol", "0.2"});
        CHECK(res.exit_code == 0);
        check_envelope(res, "lclt-check");
        json out = outputs_of(res);
        CHECK(out["law"]["source"] == "exact");
        CHECK(out["law"]["mean"].get<double>() == doctest::Approx(220.0 / 8).epsilon(1e-12));
        CHECK(out["checks"]["sup"]["pass"] == true);
        CHECK(out["total_samples"] == 20000);
    }

    SUBCASE("progressions on a slice use the exact conditioned moments") {
        RunResult res = run({"lclt-check", "--model", "slice", "--n", "13", "--m", "6", "--stat",
                             "kap:3", "--samples", "5000", "--seed", "9"});
        CHECK(res.exit_code == 0);
        json law = outputs_of(res)["law"];
        CHECK(law["source"] == "exact");
        CHECK(law["mean"].get<double>() > 0);
        CHECK(!law.contains("multiplier"));
    }

    SUBCASE("theta law attaches the multiplier") {
        RunResult res = run({"lclt-check", "--model", "gnp", "--n", "13", "--p", "1/2", "--stat",
                             "kap:3", "--samples", "2000", "--seed", "2", "--law", "theta"});
        CHECK(res.exit_code == 0);
        json law = outputs_of(res)["law"];
        REQUIRE(law.contains("multiplier"));
        CHECK(law["multiplier"]["comb_width"].get<double>() > 0);
    }

    SUBCASE("statistics without a closed form fall back to sample moments") {
        RunResult res = run({"lclt-check", "--model", "gnp", "--n", "10", "--p", "1/2", "--stat",
                             "subgraph:C4", "--samples", "3000", "--seed", "6"});
        CHECK(res.exit_code == 0);
        CHECK(outputs_of(res)["law"]["source"] == "empirical");
    }

    SUBCASE("curve export writes plot-ready rows") {
        std::string curve = temp_path("curve.csv");
        RunResult res = run({"lclt-check", "--model", "gnp", "--n", "10", "--p", "1/2", "--stat",
                             "triangle", "--samples", "2000", "--seed", "8", "--curve", curve});
        CHECK(res.exit_code == 0);
        std::ifstream f(curve);
        REQUIRE(f.good());
        std::string header;
        std::getline(f, header);
        CHECK(header == "z,predicted_mass,empirical_mass");
        std::remove(curve.c_str());
    }

    SUBCASE("failing tolerance flips the exit code") {
        RunResult res = run({"lclt-check", "--model", "gnp", "--n", "10", "--p", "1/2", "--stat",
                             "triangle", "--samples", "500", "--seed", "1", "--sup-tol", "0"});
        CHECK(res.exit_code == 1);
        CHECK(outputs_of(res)["checks"]["sup"]["pass"] == false);
    }

    SUBCASE("theta over a non-progression statistic is a usage error") {
        RunResult res = run({"lclt-check", "--model", "gnp", "--n", "10", "--p", "1/2", "--stat",
                             "triangle", "--samples", "100", "--seed", "1", "--law", "theta"});
        CHECK(res.exit_code == 2);
        CHECK(res.out.empty());
    }
}

TEST_CASE("charfn verify commands run their checks") {
    SUBCASE("slice bound") {
        RunResult res = run({"charfn", "verify-slice", "--n", "6", "--s", "3", "--weights",
                             "0,1,0,1,0,1", "--ts", "0.5,1.0"});
        CHECK(res.exit_code == 0);
        check_envelope(res, "charfn verify-slice");
        json out = outputs_of(res);
        REQUIRE(out["points"].size() == 2);
        CHECK(out["pass"] == true);
        // same rows as the library
        SliceSpec spec{6, 3, {0, 1, 0, 1, 0, 1}};
        json direct = json::parse(bound_report_json(verify_pointwise_bounds(spec, {0.5, 1.0})));
        CHECK(out["points"] == direct);
    }

    SUBCASE("decoupling inequality") {
        RunResult res = run({"charfn", "verify-decoupling", "--n", "4", "--sum", "2", "--blocks",
                             "0,0,1,1", "--coeffs", "3:1,12:-2", "--ts", "0.7,1.9"});
        CHECK(res.exit_code == 0);
        check_envelope(res, "charfn verify-decoupling");
        json out = outputs_of(res);
        REQUIRE(out["rows"].size() == 2);
        CHECK(out["pass"] == true);
        CHECK(out["rows"][0]["lhs"].get<double>() <= out["rows"][0]["rhs"].get<double>() + 1e-12);
    }

    SUBCASE("inversion bound on a point mass and a binomial") {
        RunResult point = run({"charfn", "verify-inversion", "--dist", "point"});
        CHECK(point.exit_code == 0);
        check_envelope(point, "charfn verify-inversion");
        // 1 - N(0): the known gap for a unit point mass on a unit lattice
        CHECK(outputs_of(point)["lhs"].get<double>() ==
              doctest::Approx(1 - 0.3989422804014327).epsilon(1e-9));

        RunResult bin = run({"charfn", "verify-inversion", "--dist", "binomial", "--trials",
                             "64"});
        CHECK(bin.exit_code == 0);
        json out = outputs_of(bin);
        CHECK(out["pass"] == true);
        CHECK(out["lhs"].get<double>() <= 0.01);
    }
}

TEST_CASE("verify-ce reports the shipped census") {
    RunResult res = run({"verify-ce", "--input", data_file("counterexample64.txt")});
    CHECK(res.exit_code == 0);
    check_envelope(res, "verify-ce");
    json out = outputs_of(res);
    CHECK(out["num_vertices"] == 64);
    CHECK(out["num_edges"] == 976);
    CHECK(out["pass"] == true);
    CHECK(out["matches_reference"] == true);
    CHECK(out["phi"]["edge_value"] == "-121024");

    RunResult csv = run({"verify-ce", "--input", data_file("counterexample64.txt"), "--format",
                         "csv"});
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.find("num_edges,976\n") != std::string::npos);
    CHECK(csv.out.find("pass,1\n") != std::string::npos);

    SUBCASE("a graph that is no counterexample fails with exit 1") {
        std::string path = temp_path("k5.txt");
        BitGraph k5(5);
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) k5.set_edge(i, j);
        write_adjacency_file(k5, path);
        RunResult bad = run({"verify-ce", "--input", path});
        CHECK(bad.exit_code == 1);
        CHECK(outputs_of(bad)["pass"] == false);
        std::remove(path.c_str());
    }
}

TEST_CASE("search-ce recovers a planted census") {
    // plant a small random graph and ask for its exact census
    ModelSpec model;
    model.kind = ModelKind::gnp;
    model.n = 8;
    model.seed = 77;
    BitGraph planted = sample_graph(model, 0).graph;
    Ind4Vector target = ind4_vector(planted);
    std::string target_text;
    for (int i = 0; i < 11; ++i)
        target_text += (i ? "," : "") + std::to_string(target[i]);

    std::string graph_out = temp_path("found.txt");
    RunResult res = run({"search-ce", "--target", target_text, "--v", "8", "--seed", "13",
                         "--steps", "20000", "--restarts", "4", "--graph-out", graph_out});
    CHECK(res.exit_code == 0);
    check_envelope(res, "search-ce");
    json out = outputs_of(res);
    CHECK(out["found"] == true);
    CHECK(out["best_objective"] == 0);

    // both emitted graphs carry the requested census
    std::istringstream matrix(out["adjacency"].get<std::string>());
    CHECK(ind4_vector(load_adjacency_text(matrix)) == target);
    CHECK(ind4_vector(load_adjacency_file(graph_out)) == target);
    std::remove(graph_out.c_str());

    // trace CSV is monotone and ends at zero
    RunResult csv = run({"search-ce", "--target", target_text, "--v", "8", "--seed", "13",
                         "--steps", "20000", "--restarts", "4", "--format", "csv"});
    std::vector<double> numbers = csv_numbers(csv.out);
    REQUIRE(numbers.size() >= 4);
    CHECK(numbers.back() == 0);

    SUBCASE("an infeasible target is a domain error") {
        RunResult bad = run({"search-ce", "--target", "1,0,0,0,0,0,0,0,0,0,0", "--v", "8",
                             "--seed", "1"});
        CHECK(bad.exit_code == 1);
        json doc = json::parse(bad.out);
        CHECK(doc["error"]["type"] == "domain");
        check_schema(doc, load_schema()["error"], "search-ce error");
    }
}

TEST_CASE("usage errors exit with code two") {
    CHECK(run({"bogus"}).exit_code == 2);
    CHECK(run({}).exit_code == 2);
    CHECK(run({"decompose"}).exit_code == 2);                               // no pattern
    CHECK(run({"decompose", "--named", "K3", "--graph", "3;0-1"}).exit_code == 2);  // both
    CHECK(run({"decompose", "--named", "K3", "--format", "yaml"}).exit_code == 2);
    CHECK(run({"simulate", "--model", "gnp", "--n", "5", "--m", "3", "--stat", "triangle",
               "--samples", "1"})
              .exit_code == 2);  // m under gnp
    CHECK(run({"simulate", "--model", "gnm", "--n", "5", "--stat", "triangle", "--samples",
               "1"})
              .exit_code == 2);  // missing m
    CHECK(run({"simulate", "--model", "gnp", "--n", "5", "--p", "0.5", "--stat", "triangle",
               "--samples", "1"})
              .exit_code == 2);  // float p
    CHECK(run({"simulate", "--model", "gnp", "--n", "5", "--stat", "pentagon", "--samples",
               "1"})
              .exit_code == 2);  // unknown statistic
    CHECK(run({"search-ce", "--target", "1,2,3", "--v", "5", "--seed", "1"}).exit_code == 2);
    CHECK(run({"charfn"}).exit_code == 2);

    // usage failures print nothing on stdout and a message on stderr
    RunResult res = run({"simulate", "--model", "gnm", "--n", "5", "--stat", "triangle",
                         "--samples", "1"});
    CHECK(res.out.empty());
    CHECK(res.err.find("--m") != std::string::npos);
}

TEST_CASE("domain errors exit with code one and structured json") {
    RunResult res = run({"simulate", "--model", "gnm", "--n", "5", "--m", "11", "--stat",
                         "triangle", "--samples", "1", "--seed", "1"});
    CHECK(res.exit_code == 1);
    json doc = json::parse(res.out);
    CHECK(doc["command"] == "simulate");
    CHECK(doc["error"]["type"] == "domain");
    check_schema(doc, load_schema()["error"], "simulate error");

    RunResult missing = run({"verify-ce", "--input", temp_path("does_not_exist.txt")});
    CHECK(missing.exit_code == 1);
    CHECK(json::parse(missing.out)["error"]["type"] == "format");

    RunResult bad_name = run({"decompose", "--named", "K99"});
    CHECK(bad_name.exit_code == 1);
    CHECK(json::parse(bad_name.out)["error"]["type"] == "capability");
}

TEST_CASE("out flag writes the payload to a file") {
    std::string path = temp_path("envelope.json");
    RunResult res = run({"verify-ce", "--input", data_file("counterexample64.txt"), "--out",
                         path});
    CHECK(res.exit_code == 0);
    CHECK(res.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    json doc = json::parse(f);
    CHECK(doc["outputs"]["num_edges"] == 976);
    std::remove(path.c_str());
}

TEST_CASE("help is reachable") {
    RunResult res = run({"--help"});
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("decompose") != std::string::npos);
    CHECK(res.out.find("search-ce") != std::string::npos);
}
