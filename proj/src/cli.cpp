#include "kemeny/cli.hpp"

#include "kemeny/json_writer.hpp"
#include "kemeny/markov_mc.hpp"
#include "kemeny/torus_mc.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace kemeny::cli {
namespace {

Json vec_json(const Vector& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Json mat_json(const Matrix& m) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        a.push_back(std::move(row));
    }
    return a;
}

Json chain_block(const ChainFile& file, const Chain& chain) {
    Json labels = Json::array();
    for (std::size_t i = 0; i < chain.size(); ++i) labels.push_back(chain.label(i));
    return Json{{"name", file.name}, {"n", chain.size()}, {"labels", labels}};
}

double z_score(double mean, double target, double se) {
    if (se > 0.0) return (mean - target) / se;
    return mean == target ? 0.0 : std::numeric_limits<double>::infinity();
}

bool write_output(const std::string& path, const std::string& text, std::ostream& out, std::ostream& err) {
    if (path.empty()) {
        out << text;
        return true;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "error: cannot write " << path << "\n";
        return false;
    }
    f << text;
    return static_cast<bool>(f);
}

std::optional<Chain> load_validated(const std::string& path, ChainFile& file, std::ostream& err) {
    try {
        file = load_chain_file(path);
        return validate_chain(file.p, file.states);
    } catch (const ChainError& e) {
        err << e.what() << "\n";
    } catch (const ChainFileError& e) {
        err << e.what() << "\n";
    }
    return std::nullopt;
}

std::optional<std::size_t> resolve_state(const Chain& chain, const std::string& token) {
    for (std::size_t i = 0; i < chain.labels().size(); ++i) {
        if (chain.labels()[i] == token) return i;
    }
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(token, &used);
        if (used == token.size() && v < chain.size()) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    return std::nullopt;
}

std::string csv_path_for(const std::string& out) {
    std::filesystem::path p(out);
    p.replace_extension(".csv");
    return p.string();
}

int cmd_analyze(const std::string& chain_path, const std::string& out_path, std::ostream& out,
                std::ostream& err) {
    ChainFile file;
    const auto chain = load_validated(chain_path, file, err);
    if (!chain) return kExitInvalid;
    try {
        const ChainInvariants inv = analyze_chain(*chain);
        const ChainDiagnostics diag = compute_diagnostics(*chain, inv);
        if (!inv.kemeny.eigen_converged) err << "warning: EigenFailure, spectral Kemeny value absent\n";
        Json report{{"schema", kReportSchema}, {"command", "analyze"}};
        const Json body = analyze_report(file, *chain, inv, diag);
        for (const auto& el : body.items()) report[el.key()] = el.value();
        return write_output(out_path, dump_json(report), out, err) ? kExitOk : kExitInvalid;
    } catch (const SingularSystem& e) {
        err << e.what() << "\n";
        return kExitInvalid;
    }
}

int cmd_simulate(const std::string& chain_path, const SimulateRequest& req_in, const std::string& state_token,
                 const std::string& out_path, std::ostream& out, std::ostream& err) {
    ChainFile file;
    const auto chain = load_validated(chain_path, file, err);
    if (!chain) return kExitInvalid;
    SimulateRequest req = req_in;
    const auto state = resolve_state(*chain, state_token);
    if (!state) {
        err << "error: unknown state \"" << state_token << "\"\n";
        return kExitInvalid;
    }
    req.state = *state;
    if (req.episodes < 1000) {
        err << "error: --episodes must be at least 1000\n";
        return kExitInvalid;
    }
    const ChainInvariants inv = analyze_chain(*chain);
    const McOptions opts{req.episodes, req.seed, 0};
    const McEstimate est = req.game == "I" ? play_game(*chain, GameI{req.state}, opts)
                                           : play_game(*chain, GameII{req.state}, opts);
    Json report{{"schema", kReportSchema}, {"command", "simulate"}};
    const Json body = simulate_report(file, *chain, inv, req, est);
    for (const auto& el : body.items()) report[el.key()] = el.value();
    if (!write_output(out_path, dump_json(report), out, err)) return kExitInvalid;
    if (est.horizon_hits > 0) {
        err << "error: " << est.horizon_hits << " episodes hit the safety cap\n";
        return kExitTruncated;
    }
    return kExitOk;
}

int cmd_torus(const TorusRequest& req, const std::string& out_path, std::ostream& out, std::ostream& err) {
    std::optional<FlatTorus> torus;
    try {
        torus.emplace(req.l1, req.l2);
    } catch (const InvalidGeometry& e) {
        err << e.what() << "\n";
        return kExitInvalid;
    }
    const TorusInvariants inv = torus_invariants(*torus);
    std::vector<TorusMcRow> rows;
    std::size_t truncated = 0;
    if (req.eps) {
        const TorusGreen green(*torus);
        for (const double eps : {*req.eps, *req.eps / 2.0}) {
            BmConfig cfg;
            cfg.epsilon = eps;
            cfg.step = bm_step_for(eps);
            cfg.episodes = req.episodes;
            cfg.seed = req.seed;
            McEstimate est;
            try {
                est = play_torus_game(*torus, TorusGameI{{0.0, 0.0}}, cfg);
            } catch (const InvalidBmConfig& e) {
                err << e.what() << "\n";
                return kExitInvalid;
            }
            truncated += est.horizon_hits;
            rows.push_back({eps, cfg.step, est, game_duration_prediction(green, eps)});
        }
    }
    Json report{{"schema", kReportSchema}, {"command", "torus"}};
    const Json body = torus_report(*torus, inv, rows);
    for (const auto& el : body.items()) report[el.key()] = el.value();
    if (!rows.empty() && !out_path.empty()) {
        const std::string csv = csv_path_for(out_path);
        report["csv"] = std::filesystem::path(csv).filename().string();
        std::ofstream f(csv, std::ios::binary);
        f << torus_csv(rows);
        if (!f) {
            err << "error: cannot write " << csv << "\n";
            return kExitInvalid;
        }
    }
    if (!write_output(out_path, dump_json(report), out, err)) return kExitInvalid;
    if (truncated > 0) {
        err << "error: " << truncated << " episodes hit the safety cap\n";
        return kExitTruncated;
    }
    return kExitOk;
}

}  // namespace

Json mc_record(const McEstimate& est) {
    return Json{{"mean", est.mean},
                {"stderr", est.std_error},
                {"episodes", est.episodes},
                {"seed", est.seed},
                {"horizon_hits", est.horizon_hits}};
}

Json analyze_report(const ChainFile& file, const Chain& chain, const ChainInvariants& inv,
                    const ChainDiagnostics& diag) {
    const auto& k = inv.kemeny;
    Json eig = Json::array();
    for (const auto& v : k.eigenvalues) eig.push_back(Json::array({v.real(), v.imag()}));
    Json kemeny{{"by_start", vec_json(k.by_start)},
                {"trace", k.trace},
                {"spectral", k.spectral ? Json(*k.spectral) : Json(nullptr)},
                {"density", vec_json(k.density)}};
    Json diagnostics{
        {"residuals",
         {{"null_right", diag.null_right},
          {"null_left", diag.null_left},
          {"stationary_mass", diag.stationary_mass},
          {"z_row_sums", diag.z_row_sums},
          {"wz", diag.wz},
          {"wg", diag.wg},
          {"green_equation", diag.green_equation},
          {"hitting_system", diag.hitting_system},
          {"return_time_relation", diag.return_time_relation},
          {"trace_vs_start0", diag.trace_vs_start0},
          {"trace_vs_spectral", diag.trace_vs_spectral},
          {"spectral_imaginary", k.spectral_imaginary},
          {"density_vs_hitting", diag.density_vs_hitting},
          {"density_mass", diag.density_mass}}},
        {"kemeny_spread", diag.kemeny_spread},
        {"tolerances",
         {{"row_sum", kStochasticTolerance},
          {"kemeny_spread_rel", 1e-9},
          {"trace_vs_spectral_rel", 1e-7},
          {"green_equation", 1e-9},
          {"wg", 1e-10},
          {"hitting_system", 1e-9}}},
        {"eigen", {{"converged", k.eigen_converged}, {"iterations", k.eigen_iterations}}}};
    return Json{{"chain", chain_block(file, chain)},
                {"stationary", vec_json(inv.stationary.w)},
                {"kemeny", kemeny},
                {"hitting_times", mat_json(inv.hitting)},
                {"fundamental", mat_json(inv.fundamental)},
                {"green", mat_json(inv.green)},
                {"eigenvalues", eig},
                {"diagnostics", diagnostics}};
}

Json simulate_report(const ChainFile& file, const Chain& chain, const ChainInvariants& inv,
                     const SimulateRequest& req, const McEstimate& est) {
    const bool game_one = req.game == "I";
    const double target = game_one ? inv.kemeny.trace
                                   : inv.kemeny.density(static_cast<Eigen::Index>(req.state));
    Json rec = mc_record(est);
    rec["game"] = req.game;
    rec["state"] = req.state;
    rec["label"] = chain.label(req.state);
    rec["target"] = target;
    rec["target_kind"] = game_one ? "kemeny" : "density";
    rec["z"] = z_score(est.mean, target, est.std_error);
    return Json{{"chain", chain_block(file, chain)},
                {"kemeny", {{"trace", inv.kemeny.trace}, {"density", vec_json(inv.kemeny.density)}}},
                {"mc", Json::array({rec})}};
}

Json torus_report(const FlatTorus& torus, const TorusInvariants& inv, const std::vector<TorusMcRow>& rows) {
    Json t{{"L1", torus.l1()},
           {"L2", torus.l2()},
           {"volume", torus.volume()},
           {"m", inv.robins_mass},
           {"scale_factor", inv.reg_trace.scale},
           {"m_at_4pi", inv.identity.mass},
           {"reg_trace", inv.reg_trace.value},
           {"identity_rhs", inv.identity.rhs},
           {"identity_residual", inv.identity.residual}};
    Json report{{"torus", t}};
    if (!rows.empty()) {
        Json mc = Json::array();
        for (const auto& r : rows) {
            Json rec = mc_record(r.est);
            rec["game"] = "I";
            rec["start"] = Json::array({0.0, 0.0});
            rec["eps"] = r.eps;
            rec["step"] = r.step;
            rec["formula"] = r.formula;
            rec["z"] = z_score(r.est.mean, r.formula, r.est.std_error);
            rec["relative_error"] = (r.est.mean - r.formula) / r.formula;
            mc.push_back(std::move(rec));
        }
        report["mc"] = std::move(mc);
    }
    return report;
}

std::string torus_csv(const std::vector<TorusMcRow>& rows) {
    std::string out = "eps,mc_mean,mc_stderr,formula\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.eps, r.est.mean, r.est.std_error, r.formula);
        out += buf;
    }
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kemeny's constant, Robin's mass and hide-and-seek simulations", "kemeny_lab"};
    app.require_subcommand(1);

    std::string chain_path;
    std::string out_path;

    auto* analyze = app.add_subcommand("analyze", "Exact invariants of a Markov chain");
    analyze->add_option("--chain", chain_path, "Chain file (JSON or CSV edge list)")->required();
    analyze->add_option("--out", out_path, "Report path (default: stdout)");

    SimulateRequest sim;
    std::string state_token;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo hide-and-seek on a Markov chain");
    simulate->add_option("--chain", chain_path, "Chain file (JSON or CSV edge list)")->required();
    simulate->add_option("--game", sim.game, "I (fixed seeker) or II (fixed hider)")
        ->required()
        ->check(CLI::IsMember({"I", "II"}));
    simulate->add_option("--state", state_token, "Fixed state (index or label)")->required();
    simulate->add_option("--episodes", sim.episodes, "Episodes (>= 1000)")->required();
    simulate->add_option("--seed", sim.seed, "Seed")->required();
    simulate->add_option("--out", out_path, "Report path (default: stdout)");

    TorusRequest tor;
    double eps = 0.0;
    auto* torus = app.add_subcommand("torus", "Robin's mass and regularized trace of a flat torus");
    torus->add_option("--L1", tor.l1, "First side length")->required();
    torus->add_option("--L2", tor.l2, "Second side length")->required();
    auto* eps_opt = torus->add_option("--eps", eps, "Target radius for the Brownian Game I run");
    torus->add_option("--episodes", tor.episodes, "Episodes per radius")->needs(eps_opt);
    torus->add_option("--seed", tor.seed, "Seed")->needs(eps_opt);
    torus->add_option("--out", out_path, "Report path (default: stdout); the CSV goes next to it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, err, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    if (*analyze) return cmd_analyze(chain_path, out_path, out, err);
    if (*simulate) return cmd_simulate(chain_path, sim, state_token, out_path, out, err);
    if (eps_opt->count() > 0) tor.eps = eps;
    return cmd_torus(tor, out_path, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"kemeny_lab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace kemeny::cli
