#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ethics2vec/config.hpp"
#include "ethics2vec/csv.hpp"
#include "ethics2vec/errors.hpp"
#include "ethics2vec/harness.hpp"
#include "ethics2vec/report.hpp"
#include "ethics2vec/rng.hpp"
#include "ethics2vec/threading.hpp"

namespace {

using namespace e2v;

struct GlobalFlags {
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> method;
    std::optional<std::string> out_dir;
    std::optional<int> threads;

    RunConfig resolve() const {
        RunConfig rc;
        if (config_path) rc = load_config(*config_path, rc);
        if (seed) rc.seed = *seed;
        if (method) rc.method = *method;
        if (out_dir) rc.out_dir = *out_dir;
        if (threads) rc.threads = *threads;
        if (rc.threads > 0) set_thread_cap(rc.threads);
        return rc;
    }
};

std::string joined_path(const std::string& out_dir, const std::string& name) {
    std::filesystem::path p(name);
    if (p.is_absolute()) return name;
    return (std::filesystem::path(out_dir) / p).string();
}

void ensure_out_dir(const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw ParseError(out_dir, 0, "cannot create output directory: " + ec.message());
}

int parse_law_spec(const std::string& spec, int n_laws) {
    std::string digits = spec;
    if (digits.rfind("law=", 0) == 0) digits = digits.substr(4);
    int law = 0;
    try {
        std::size_t used = 0;
        law = std::stoi(digits, &used);
        if (used != digits.size()) throw std::invalid_argument(digits);
    } catch (const std::exception&) {
        throw ParseError("--emit-trace", 0, "expected a law index like '3' or 'law=3'");
    }
    if (law < 1 || law > n_laws)
        throw ParseError("--emit-trace", 0,
                         "law index must be between 1 and " + std::to_string(n_laws));
    return law;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

void run_audit_binary(const GlobalFlags& globals, const std::string& log_path,
                      const std::string& agent_id, const std::optional<std::string>& emit_roc,
                      const std::optional<double>& bandwidth) {
    RunConfig rc = globals.resolve();
    if (bandwidth) rc.binary.bandwidth = *bandwidth;
    ensure_out_dir(rc.out_dir);

    const DecisionLog log = read_decision_log(log_path);
    const AuditConfig ac = rc.audit();
    const AuditResult res = audit_binary_agent(log, ac);

    AuditReport report;
    report.agent_id = agent_id;
    report.method = rc.method;
    report.recovered_ratio = res.recovered_ratio;
    report.ethics = res.ethics;
    report.seed = rc.seed;
    report.config_echo = config_to_json(rc);
    report.diagnostics = {
        {"n_records", static_cast<double>(log.size())},
        {"p_positive", res.priors.p_p},
        {"tau_star_estimate", res.tau_star_estimate},
    };
    if (ac.method == AuditMethod::nonparametric)
        report.diagnostics.emplace_back("bandwidth",
                                        ac.bandwidth ? *ac.bandwidth : default_bandwidth(log));

    write_json_file(joined_path(rc.out_dir, "audit_" + agent_id + ".json"),
                    report_to_json(report));
    if (emit_roc) write_roc_csv(joined_path(rc.out_dir, *emit_roc), build_empirical_roc(log));

    std::cout << "agent " << agent_id << ": recovered L_FP/L_FN = "
              << format_double(res.recovered_ratio)
              << " (threshold " << format_double(res.tau_star_estimate) << ", " << rc.method
              << ")\n";
}

void run_experiment_binary(const GlobalFlags& globals) {
    RunConfig rc = globals.resolve();
    ensure_out_dir(rc.out_dir);

    const std::vector<BinaryAgentRow> rows = run_binary_experiment(rc.binary_experiment(), rc.audit());

    std::vector<std::vector<double>> recovery, points;
    std::vector<double> truths, recovered;
    nlohmann::json agents = nlohmann::json::array();
    for (const BinaryAgentRow& r : rows) {
        recovery.push_back({r.true_ratio, r.recovered_ratio});
        points.push_back({r.true_ratio, r.ethics.d_tpr_d_tau, r.ethics.d_fpr_d_tau,
                          r.ethics.tau_star});
        truths.push_back(r.true_ratio);
        recovered.push_back(r.recovered_ratio);
        agents.push_back({{"true_ratio", r.true_ratio},
                          {"true_tau_star", r.true_tau_star},
                          {"recovered_ratio", r.recovered_ratio},
                          {"tau_star_estimate", r.tau_star_estimate},
                          {"d_tpr_d_tau", r.ethics.d_tpr_d_tau},
                          {"d_fpr_d_tau", r.ethics.d_fpr_d_tau}});
    }
    const double corr = pearson(truths, recovered);

    write_csv(joined_path(rc.out_dir, "ratio_recovery.csv"), "true_ratio,recovered_ratio",
              recovery);
    write_csv(joined_path(rc.out_dir, "binary_ethics_points.csv"),
              "true_ratio,d_tpr_d_tau,d_fpr_d_tau,tau_star", points);
    write_json_file(joined_path(rc.out_dir, "experiment_binary_report.json"),
                    nlohmann::json{{"agents", agents},
                                   {"pearson_correlation", corr},
                                   {"seed", rc.seed},
                                   {"rng_algorithm", rng_algorithm_id},
                                   {"config_echo", config_to_json(rc)}});

    std::cout << "true_ratio -> recovered_ratio (" << rc.method << ", n="
              << rc.binary.n_per_agent << " per agent)\n";
    for (const BinaryAgentRow& r : rows)
        std::cout << "  " << format_double(r.true_ratio) << " -> "
                  << format_double(r.recovered_ratio) << "\n";
    std::cout << "pearson correlation: " << format_double(corr) << "\n";
}

void run_experiment_car(const GlobalFlags& globals, const std::vector<std::string>& trace_specs) {
    RunConfig rc = globals.resolve();
    ensure_out_dir(rc.out_dir);
    const CarExperimentConfig cfg = rc.car_experiment();

    const std::vector<CarLawRow> rows = run_car_experiment(cfg);

    std::vector<std::vector<double>> points;
    nlohmann::json laws = nlohmann::json::array();
    for (const CarLawRow& r : rows) {
        points.push_back({static_cast<double>(r.law_id), r.aggregate[0], r.aggregate[1],
                          r.ratio_of_sums, r.sum_of_ratios, r.final_x});
        laws.push_back({{"law", r.law_id},
                        {"aggregate", r.aggregate},
                        {"aggregate_hourly", r.aggregate_hourly},
                        {"weight_ratio_of_sums", r.ratio_of_sums},
                        {"weight_sum_of_ratios", r.sum_of_ratios},
                        {"final_x", r.final_x}});
    }
    write_csv(joined_path(rc.out_dir, "car_ethics_points.csv"),
              "law,e_accident,e_lateness,ratio_of_sums,sum_of_ratios,final_x", points);
    write_json_file(joined_path(rc.out_dir, "experiment_car_report.json"),
                    nlohmann::json{{"laws", laws},
                                   {"seed", rc.seed},
                                   {"rng_algorithm", rng_algorithm_id},
                                   {"config_echo", config_to_json(rc)}});

    const std::vector<ControlLaw> all_laws = default_control_laws(cfg);
    const std::vector<RiskModel> risks = {
        accident_risk_model(cfg.accident_k, cfg.accident_u0),
        lateness_risk_model(cfg.destination, cfg.horizon_T, cfg.lateness_a)};
    for (const std::string& spec : trace_specs) {
        const int law = parse_law_spec(spec, cfg.n_laws);
        const Trajectory traj = simulate_trajectory(all_laws[static_cast<std::size_t>(law - 1)],
                                                    cfg.horizon_T, cfg.dt, cfg.destination,
                                                    cfg.u_cap);
        const EthicsTrace trace = ethics_trace(traj, risks);
        write_trace_csv(joined_path(rc.out_dir, "car_trace_law" + std::to_string(law) + ".csv"),
                        traj, trace);
    }

    std::cout << "law  E[d accident/du]  E[d lateness/du]  w1/w2 (ratio of sums)\n";
    for (const CarLawRow& r : rows)
        std::cout << "  " << r.law_id << "  " << format_double(r.aggregate[0]) << "  "
                  << format_double(r.aggregate[1]) << "  " << format_double(r.ratio_of_sums)
                  << "\n";
}

void run_simulate_car(const GlobalFlags& globals, int law, bool emit_trace) {
    RunConfig rc = globals.resolve();
    ensure_out_dir(rc.out_dir);
    const CarExperimentConfig cfg = rc.car_experiment();
    if (law < 1 || law > cfg.n_laws)
        throw ParseError("--law", 0, "law index must be between 1 and " + std::to_string(cfg.n_laws));

    const std::vector<ControlLaw> laws = default_control_laws(cfg);
    const Trajectory traj = simulate_trajectory(laws[static_cast<std::size_t>(law - 1)],
                                                cfg.horizon_T, cfg.dt, cfg.destination, cfg.u_cap);
    write_trajectory_csv(joined_path(rc.out_dir, "car_trajectory_law" + std::to_string(law) + ".csv"),
                         traj);
    if (emit_trace) {
        const std::vector<RiskModel> risks = {
            accident_risk_model(cfg.accident_k, cfg.accident_u0),
            lateness_risk_model(cfg.destination, cfg.horizon_T, cfg.lateness_a)};
        write_trace_csv(joined_path(rc.out_dir, "car_trace_law" + std::to_string(law) + ".csv"),
                        traj, ethics_trace(traj, risks));
    }

    const TrajectoryStep& last = traj.steps.back();
    std::cout << "law " << law << ": final position " << format_double(last.x) << " km at t="
              << format_double(last.t) << " h\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ethics-audit: recover the implicit decision weights of black-box agents"};
    app.require_subcommand(1);

    GlobalFlags globals;
    app.add_option("--config", globals.config_path, "JSON config file (defaults otherwise)");
    app.add_option("--seed", globals.seed, "master RNG seed");
    app.add_option("--method", globals.method, "slope estimation method")
        ->check(CLI::IsMember({"parametric", "nonparametric"}));
    app.add_option("--out-dir", globals.out_dir, "directory for output files");
    app.add_option("--threads", globals.threads, "cap on worker threads (0 = automatic)");

    auto* audit = app.add_subcommand("audit-binary", "audit one thresholding agent from a log");
    std::string log_path;
    std::string agent_id = "agent";
    std::optional<std::string> emit_roc;
    std::optional<double> bandwidth;
    audit->add_option("log", log_path, "decision log CSV (score,action,truth)")->required();
    audit->add_option("--agent-id", agent_id, "name used in the report");
    audit->add_option("--emit-roc", emit_roc, "also write the empirical ROC points (tau,fpr,tpr)");
    audit->add_option("--bandwidth", bandwidth, "window half-width for the nonparametric slope");
    audit->callback([&] { run_audit_binary(globals, log_path, agent_id, emit_roc, bandwidth); });

    auto* exp_bin = app.add_subcommand("experiment-binary",
                                       "generate and audit one agent per configured loss ratio");
    exp_bin->callback([&] { run_experiment_binary(globals); });

    auto* exp_car = app.add_subcommand("experiment-car",
                                       "profile the speed-law family against both risks");
    std::vector<std::string> trace_specs;
    exp_car->add_option("--emit-trace", trace_specs,
                        "write the per-step trace of a law, e.g. 3 or law=3");
    exp_car->callback([&] { run_experiment_car(globals, trace_specs); });

    auto* sim = app.add_subcommand("simulate-car", "integrate one speed law and write t,x,u");
    int law = 1;
    bool sim_trace = false;
    sim->add_option("--law", law, "law index (1 = most aggressive)");
    sim->add_flag("--emit-trace", sim_trace, "also write the per-step derivative trace");
    sim->callback([&] { run_simulate_car(globals, law, sim_trace); });

    auto* print_cfg = app.add_subcommand("print-config", "print the fully resolved configuration");
    print_cfg->callback([&] { std::cout << config_text(globals.resolve()); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const e2v::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const e2v::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
