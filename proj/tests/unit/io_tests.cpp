#include <doctest.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ethics2vec/config.hpp"
#include "ethics2vec/csv.hpp"
#include "ethics2vec/errors.hpp"
#include "ethics2vec/harness.hpp"
#include "ethics2vec/report.hpp"
#include "ethics2vec/rng.hpp"

using namespace e2v;

namespace {

std::string scratch(const std::string& name) {
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "e2v_io_tests";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("shortest float formatting round-trips every value") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(3.0) == "3");
    CHECK(format_double(-0.25) == "-0.25");
    Rng rng(101);
    for (int i = 0; i < 100; ++i) {
        const double x = rng.normal(0.0, 1.0) * std::pow(10.0, rng.uniform() * 12.0 - 6.0);
        const std::string s = format_double(x);
        double back = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), back);
        REQUIRE(res.ec == std::errc{});
        CHECK(back == x);
    }
}

TEST_CASE("decision logs survive a file round trip bit for bit") {
    Rng rng(102);
    DecisionLog log;
    for (int i = 0; i < 500; ++i) {
        Record r;
        r.score = rng.normal(0.0, 2.0);
        r.truth = rng.bernoulli(0.4) ? 1 : 0;
        r.action = rng.bernoulli(0.5) ? 1 : 0;
        log.records.push_back(r);
    }
    const std::string path = scratch("roundtrip.csv");
    write_decision_log(path, log);

    CHECK(read_bytes(path).rfind("score,action,truth\n", 0) == 0);

    const DecisionLog back = read_decision_log(path);
    REQUIRE(back.size() == log.size());
    for (std::size_t i = 0; i < log.size(); ++i) {
        CHECK(back.records[i].score == log.records[i].score);
        CHECK(back.records[i].action == log.records[i].action);
        CHECK(back.records[i].truth == log.records[i].truth);
    }
}

TEST_CASE("log reader pinpoints malformed input") {
    const std::string path = scratch("bad.csv");

    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_decision_log(scratch("nope.csv")), ParseError);
        try {
            read_decision_log(scratch("nope.csv"));
        } catch (const ParseError& e) {
            CHECK(e.line() == 0);
        }
    }
    SUBCASE("renamed column") {
        write_text(path, "score,act,truth\n");
        try {
            read_decision_log(path);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 1);
            CHECK(std::string(e.what()).find("'action'") != std::string::npos);
            CHECK(std::string(e.what()).find("'act'") != std::string::npos);
        }
    }
    SUBCASE("dropped column") {
        write_text(path, "score,action\n");
        try {
            read_decision_log(path);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("missing column 'truth'") != std::string::npos);
        }
    }
    SUBCASE("extra column") {
        write_text(path, "score,action,truth,weight\n");
        try {
            read_decision_log(path);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("extra column 'weight'") != std::string::npos);
        }
    }
    SUBCASE("short row carries its line number") {
        write_text(path, "score,action,truth\n0.5,1,0\n1.5,0\n");
        try {
            read_decision_log(path);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
            CHECK(std::string(e.what()).find("expected 3 fields") != std::string::npos);
        }
    }
    SUBCASE("unparsable score") {
        write_text(path, "score,action,truth\nabc,0,1\n");
        CHECK_THROWS_WITH_AS(read_decision_log(path),
                             doctest::Contains("bad value for column 'score'"), ParseError);
    }
    SUBCASE("out-of-alphabet action") {
        write_text(path, "score,action,truth\n0.5,2,1\n");
        CHECK_THROWS_WITH_AS(read_decision_log(path),
                             doctest::Contains("'action' must be 0 or 1"), ParseError);
    }
    SUBCASE("windows line endings are fine") {
        write_text(path, "score,action,truth\r\n0.5,1,0\r\n");
        const DecisionLog log = read_decision_log(path);
        REQUIRE(log.size() == 1);
        CHECK(log.records[0].score == 0.5);
        CHECK(log.records[0].action == 1);
    }
    SUBCASE("header-only file parses to an empty log") {
        write_text(path, "score,action,truth\n");
        const DecisionLog log = read_decision_log(path);
        CHECK(log.size() == 0);
        CHECK_THROWS_AS(log.validate(), DomainError);
    }
    SUBCASE("blank lines are skipped") {
        write_text(path, "score,action,truth\n0.5,1,0\n\n1.5,0,1\n");
        CHECK(read_decision_log(path).size() == 2);
    }
}

TEST_CASE("roc files list one threshold per row") {
    RocCurve roc;
    roc.points = {{-1.0, 1.0, 1.0}, {0.5, 0.25, 0.75}, {2.0, 0.0, 0.0}};
    const std::string path = scratch("roc.csv");
    write_roc_csv(path, roc);
    CHECK(read_bytes(path) == "tau,fpr,tpr\n-1,1,1\n0.5,0.25,0.75\n2,0,0\n");
}

TEST_CASE("trajectories survive a file round trip") {
    const ControlLaw cruise{0, [](double) { return 62.5; }};
    const Trajectory traj = simulate_trajectory(cruise, 1.0, 0.25, 250.0);
    const std::string path = scratch("traj.csv");
    write_trajectory_csv(path, traj);

    const Trajectory back = read_trajectory_csv(path, 250.0);
    REQUIRE(back.size() == traj.size());
    CHECK(back.dt == traj.dt);
    CHECK(back.destination == 250.0);
    for (std::size_t k = 0; k < traj.size(); ++k) {
        CHECK(back.steps[k].t == traj.steps[k].t);
        CHECK(back.steps[k].x == traj.steps[k].x);
        CHECK(back.steps[k].u == traj.steps[k].u);
    }
    CHECK_NOTHROW(back.validate());
}

TEST_CASE("trace files carry one column per risk") {
    const ControlLaw cruise{0, [](double) { return 62.5; }};
    const Trajectory traj = simulate_trajectory(cruise, 1.0, 0.25, 250.0);
    const std::vector<RiskModel> risks = {accident_risk_model(),
                                          lateness_risk_model(250.0, 1.0)};
    const EthicsTrace trace = ethics_trace(traj, risks);

    const std::string path = scratch("trace.csv");
    write_trace_csv(path, traj, trace);
    const std::string text = read_bytes(path);
    CHECK(text.rfind("t,x,u,E1,E2\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + long(traj.size()));

    EthicsTrace stale = trace;
    stale.n_steps -= 1;
    stale.values.resize(stale.n_steps * stale.n_risks());
    CHECK_THROWS_AS(write_trace_csv(path, traj, stale), DomainError);
}

TEST_CASE("config json round trips and merges over defaults") {
    const RunConfig defaults;
    const nlohmann::json j = config_to_json(defaults);
    const RunConfig back = config_from_json(j, "mem");
    CHECK(config_to_json(back).dump(2) == j.dump(2));

    const nlohmann::json partial = {{"seed", 7}, {"binary", {{"mu1", 2.5}}}};
    const RunConfig merged = config_from_json(partial, "mem");
    CHECK(merged.seed == 7);
    CHECK(merged.binary.mu1 == 2.5);
    CHECK(merged.binary.sigma1 == 1.0);
    CHECK(merged.method == "parametric");
    CHECK(merged.car.dt == 0.01);
}

TEST_CASE("configs reject unknown keys and bad values") {
    CHECK_THROWS_WITH_AS(config_from_json({{"typo", 1}}, "mem"),
                         doctest::Contains("unknown config key 'typo'"), ParseError);
    CHECK_THROWS_WITH_AS(config_from_json({{"car", {{"typo", 1}}}}, "mem"),
                         doctest::Contains("unknown config key 'car.typo'"), ParseError);
    CHECK_THROWS_WITH_AS(config_from_json({{"binary", {{"mu0", "zero"}}}}, "mem"),
                         doctest::Contains("'mu0'"), ParseError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::array(), "mem"), ParseError);

    CHECK_THROWS_AS(load_config(scratch("missing.json")), ParseError);
    const std::string path = scratch("broken.json");
    write_text(path, "{ not json");
    CHECK_THROWS_AS(load_config(path), ParseError);

    const std::string good = scratch("override.json");
    write_text(good, "{\"method\": \"nonparametric\", \"car\": {\"n_laws\": 4}}");
    const RunConfig loaded = load_config(good);
    CHECK(loaded.method == "nonparametric");
    CHECK(loaded.car.n_laws == 4);
    CHECK(loaded.seed == RunConfig{}.seed);
}

TEST_CASE("printed config is complete and reparses") {
    const RunConfig defaults;
    const std::string text = config_text(defaults);
    REQUIRE(!text.empty());
    CHECK(text.back() == '\n');
    for (const char* key : {"seed", "method", "out_dir", "threads", "n_per_agent",
                            "slope_formula", "consistency_tol", "accident_u0", "lateness_a"})
        CHECK(text.find(std::string("\"") + key + "\"") != std::string::npos);

    const RunConfig back = config_from_json(nlohmann::json::parse(text), "mem");
    CHECK(config_text(back) == text);
}

TEST_CASE("audit reports serialize deterministically") {
    AuditReport r;
    r.agent_id = "ratio_2.00";
    r.method = "parametric";
    r.recovered_ratio = 1.98;
    r.ethics = EthicsVector2D{-0.39, -0.19, 1.19};
    r.diagnostics = {{"n_records", 100000.0}, {"p_positive", 0.5}};
    r.config_echo = config_to_json(RunConfig{});
    r.seed = 20240817;

    const nlohmann::json j = report_to_json(r);
    CHECK(j.at("rng_algorithm").get<std::string>() == rng_algorithm_id);
    CHECK(j.at("ethics_vector").at("tau_star").get<double>() == 1.19);
    CHECK(j.at("diagnostics").at("n_records").get<double>() == 100000.0);
    CHECK(j.at("config_echo").at("seed").get<std::uint64_t>() == 20240817);
    CHECK(!j.contains("weight_ratio_of_sums"));

    const std::string a = scratch("report_a.json");
    const std::string b = scratch("report_b.json");
    write_json_file(a, j);
    write_json_file(b, report_to_json(r));
    const std::string bytes = read_bytes(a);
    CHECK(bytes == read_bytes(b));
    CHECK(bytes.back() == '\n');

    AuditReport cont = r;
    cont.aggregate = {0.012, -0.034};
    cont.weight_ratio_sums = 0.35;
    cont.weight_ratio_per_step = 0.36;
    const nlohmann::json jc = report_to_json(cont);
    CHECK(jc.at("ethics_vector").is_array());
    CHECK(jc.at("ethics_vector").size() == 2);
    CHECK(jc.at("weight_ratio_of_sums").get<double>() == 0.35);
    CHECK(jc.at("weight_sum_of_ratios").get<double>() == 0.36);
}

} // TEST_SUITE
