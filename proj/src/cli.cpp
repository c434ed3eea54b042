#include "toruswell/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include "toruswell/adapted.hpp"
#include "toruswell/embeddings.hpp"
#include "toruswell/expression.hpp"
#include "toruswell/integrator.hpp"
#include "toruswell/report.hpp"
#include "toruswell/turing.hpp"
#include "toruswell/version.hpp"

namespace toruswell::cli {

namespace {

using report::json;
using report::num;

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitIo = 4;

struct ProjectedExpr {
    spectral::ScalarField field;
    double residual = 0.0;
    std::string source;
};

ProjectedExpr project_torus_expression(const std::string& src, int max_mode) {
    const auto e = expr::Expression::parse(src, {"x", "y"});
    auto projected = spectral::project(
        [&e](double x, double y) {
            const double vars[2] = {x, y};
            return e.evaluate(vars);
        },
        max_mode);
    return {std::move(projected.field), projected.residual, src};
}

wells::Potential potential_from_expression(const std::string& src, int dimension) {
    std::vector<std::string> vars;
    vars.reserve(static_cast<std::size_t>(dimension));
    for (int i = 1; i <= dimension; ++i) vars.push_back("q" + std::to_string(i));
    auto e = std::make_shared<expr::Expression>(
        expr::Expression::parse(src, vars, /*allow_norm_q=*/true));
    auto V = wells::closed_form_potential(
        dimension,
        [e](std::span<const double> q) { return e->evaluate(q); },
        [e](std::span<const double> q) { return e->gradient(q); }, src);
    return V;
}

std::vector<double> parse_csv_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

std::optional<std::string> opt_path(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return s;
}

// ---------------------------------------------------------------------------
// Shared option bundles
// ---------------------------------------------------------------------------

struct TorusOptions {
    std::string f_expr = "sin(2*pi*y)+2";
    std::string theta_dx = "1";
    std::string theta_dy = "0";
    int max_mode = 32;
    int grid_n = 0;
    double tol = spectral::kDefaultTol;
    std::string out_path;
};

void add_torus_flags(CLI::App* cmd, TorusOptions& opt, bool with_theta) {
    cmd->add_option("--f", opt.f_expr, "flow profile f(y) for X = f(y) d/dx");
    if (with_theta) {
        cmd->add_option("--theta-dx", opt.theta_dx, "dx component of theta");
        cmd->add_option("--theta-dy", opt.theta_dy, "dy component of theta");
    }
    cmd->add_option("--max-mode", opt.max_mode, "spectral truncation")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--grid-n", opt.grid_n, "positivity grid (0 = auto)");
    cmd->add_option("--tol", opt.tol, "tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--out", opt.out_path, "write the report here instead of stdout");
}

json torus_inputs(const TorusOptions& opt, const ProjectedExpr& f,
                  const ProjectedExpr* t1, const ProjectedExpr* t2) {
    json in;
    in["f"] = opt.f_expr;
    in["f_projection_residual"] = num(f.residual);
    if (t1 != nullptr) {
        in["theta_dx"] = t1->source;
        in["theta_dx_projection_residual"] = num(t1->residual);
    }
    if (t2 != nullptr) {
        in["theta_dy"] = t2->source;
        in["theta_dy_projection_residual"] = num(t2->residual);
    }
    in["max_mode"] = opt.max_mode;
    in["tol"] = num(opt.tol);
    return in;
}

// ---------------------------------------------------------------------------
// Subcommand handlers
// ---------------------------------------------------------------------------

int run_adapted_check(const TorusOptions& opt, std::ostream& out) {
    const auto f = project_torus_expression(opt.f_expr, opt.max_mode);
    if (!f.field.is_y_only(1e-9))
        throw std::invalid_argument("adapted check: --f must depend on y only");
    const auto t1 = project_torus_expression(opt.theta_dx, opt.max_mode);
    const auto t2 = project_torus_expression(opt.theta_dy, opt.max_mode);

    const auto X = spectral::product_flow(f.field);
    const spectral::OneForm theta(t1.field, t2.field);
    const auto rep = adapted::check_adapted(X, theta, opt.tol, opt.grid_n);

    json doc = report::make_report("adapted.check",
                                   rep.strongly_adapted ? "satisfied" : "violated",
                                   torus_inputs(opt, f, &t1, &t2),
                                   report::adapted_report_to_json(rep));
    report::emit(doc, opt_path(opt.out_path), out);
    return rep.strongly_adapted ? kExitOk : kExitViolated;
}

int run_adapted_search(const TorusOptions& opt, std::ostream& out) {
    const auto f = project_torus_expression(opt.f_expr, opt.max_mode);
    if (!f.field.is_y_only(1e-9))
        throw std::invalid_argument("adapted search: --f must depend on y only");
    const auto X = spectral::product_flow(f.field);

    const auto outcome = adapted::search_adapted(
        X, opt.max_mode, adapted::SearchConstraint::strongly_adapted, opt.grid_n);

    json inputs = torus_inputs(opt, f, nullptr, nullptr);
    int code = kExitOk;
    std::string status;
    json result;
    if (const auto* w = std::get_if<adapted::SearchWitness>(&outcome)) {
        status = "satisfied";
        result["witness_theta"] = report::one_form_to_json(w->theta);
        result["equality_residual"] = num(w->equality_residual);
        result["pairing_min"] = num(w->pairing_min);
    } else if (const auto* cert = std::get_if<adapted::InfeasibilityCertificate>(&outcome)) {
        status = "violated";
        result["certificate"] = report::certificate_to_json(*cert);
        code = kExitViolated;
    } else {
        const auto& inc = std::get<adapted::Inconclusive>(outcome);
        status = "inconclusive";
        result["reason"] = inc.reason;
        result["equality_residual"] = num(inc.equality_residual);
        code = kExitInconclusive;
    }
    report::emit(report::make_report("adapted.search", status, std::move(inputs),
                                     std::move(result)),
                 opt_path(opt.out_path), out);
    return code;
}

struct ConditionOptions : TorusOptions {
    std::string kind = "spherical";
    double k = 2.0;
    std::string r_expr = "1";
    bool search = false;
    double y0 = 0.25;
};

int run_condition_check(const ConditionOptions& opt, std::ostream& out) {
    const auto f = project_torus_expression(opt.f_expr, opt.max_mode);
    if (!f.field.is_y_only(1e-9))
        throw std::invalid_argument("condition check: --f must depend on y only");
    const auto X = spectral::product_flow(f.field);

    json inputs = torus_inputs(opt, f, nullptr, nullptr);
    inputs["kind"] = opt.kind;
    inputs["k"] = num(opt.k);

    if (opt.search) {
        if (opt.kind != "homwell2")
            throw std::invalid_argument("condition check: --search applies to --kind homwell2");
        const auto outcome = adapted::search_adapted(
            X, opt.max_mode, adapted::SearchConstraint::homwell2_joint, opt.grid_n);
        int code = kExitOk;
        std::string status;
        json result;
        if (const auto* w = std::get_if<adapted::SearchWitness>(&outcome)) {
            status = "satisfied";
            result["witness_theta"] = report::one_form_to_json(w->theta);
            if (w->r.has_value()) result["witness_r"] = report::scalar_field_to_json(*w->r);
            result["equality_residual"] = num(w->equality_residual);
            result["pairing_min"] = num(w->pairing_min);
        } else if (const auto* cert =
                       std::get_if<adapted::InfeasibilityCertificate>(&outcome)) {
            status = "violated";
            result["certificate"] = report::certificate_to_json(*cert);
            code = kExitViolated;
        } else {
            const auto& inc = std::get<adapted::Inconclusive>(outcome);
            status = "inconclusive";
            result["reason"] = inc.reason;
            result["equality_residual"] = num(inc.equality_residual);
            code = kExitInconclusive;
        }
        report::emit(report::make_report("condition.check", status, std::move(inputs),
                                         std::move(result)),
                     opt_path(opt.out_path), out);
        return code;
    }

    const auto t1 = project_torus_expression(opt.theta_dx, opt.max_mode);
    const auto t2 = project_torus_expression(opt.theta_dy, opt.max_mode);
    const spectral::OneForm theta(t1.field, t2.field);
    inputs["theta_dx"] = opt.theta_dx;
    inputs["theta_dy"] = opt.theta_dy;

    if (opt.kind == "homwell0") {
        inputs["y0"] = num(opt.y0);
        const auto cert = adapted::check_homwell0_impossible(X, theta, opt.y0, opt.tol);
        json result;
        result["certificate"] = report::certificate_to_json(cert);
        report::emit(report::make_report("condition.check", "violated", std::move(inputs),
                                         std::move(result)),
                     opt_path(opt.out_path), out);
        return kExitViolated;
    }

    adapted::HomwellKind kind;
    if (opt.kind == "homwell_k") kind = adapted::HomwellKind::homwell_k;
    else if (opt.kind == "homwell2") kind = adapted::HomwellKind::homwell2;
    else if (opt.kind == "spherical") kind = adapted::HomwellKind::spherical;
    else throw std::invalid_argument("condition check: unknown --kind " + opt.kind);

    const auto R = project_torus_expression(opt.r_expr, opt.max_mode);
    inputs["R"] = opt.r_expr;

    const double k = kind == adapted::HomwellKind::homwell2 ? 2.0 : opt.k;
    const auto rep = adapted::check_homwell_condition(X, theta, R.field, k, kind, opt.tol);
    json result = report::condition_report_to_json(rep);
    if (rep.satisfied) {
        result["witness_theta"] = report::one_form_to_json(theta);
        if (kind != adapted::HomwellKind::spherical)
            result["witness_R"] = report::scalar_field_to_json(R.field);
    }
    report::emit(report::make_report("condition.check",
                                     rep.satisfied ? "satisfied" : "violated",
                                     std::move(inputs), std::move(result)),
                 opt_path(opt.out_path), out);
    return rep.satisfied ? kExitOk : kExitViolated;
}

struct SimulateOptions {
    std::string v_expr;
    std::string q0 = "1";
    std::string p0 = "0";
    double dt = 1e-3;
    long steps = 1000;
    double escape_radius = 1e6;
    std::string csv_path;
    std::string report_path;
};

int run_well_simulate(const SimulateOptions& opt, std::ostream& out) {
    const auto q0 = parse_csv_doubles(opt.q0);
    const auto p0 = parse_csv_doubles(opt.p0);
    if (q0.empty() || q0.size() != p0.size())
        throw std::invalid_argument("well simulate: --q0 and --p0 need equal nonzero length");
    const int m = static_cast<int>(q0.size());
    const auto V = potential_from_expression(opt.v_expr, m);

    const auto traj =
        wells::integrate(V, wells::PhaseState{q0, p0}, opt.dt, opt.steps, opt.escape_radius);
    if (!opt.csv_path.empty()) {
        std::ofstream csv(opt.csv_path);
        if (!csv) throw report::IoError("cannot open " + opt.csv_path + " for writing");
        wells::write_csv(traj, csv);
        if (!csv) throw report::IoError("write failed for " + opt.csv_path);
    }

    json inputs;
    inputs["V"] = opt.v_expr;
    inputs["q0"] = opt.q0;
    inputs["p0"] = opt.p0;
    inputs["dt"] = num(opt.dt);
    inputs["steps"] = opt.steps;
    inputs["escape_radius"] = num(opt.escape_radius);

    json result = report::trajectory_summary_to_json(traj);
    const auto identity = wells::symplectic_identity_check(traj, V);
    result["kinetic_pairing_residual"] = num(identity.kinetic_pairing_residual);
    if (!opt.csv_path.empty()) result["csv"] = opt.csv_path;

    const bool errored = traj.status == wells::TrajectoryStatus::non_finite;
    report::emit(report::make_report("well.simulate", errored ? "error" : "satisfied",
                                     std::move(inputs), std::move(result)),
                 opt_path(opt.report_path), out);
    return errored ? kExitViolated : kExitOk;
}

struct EulerCheckOptions {
    std::string v_expr;
    int dim = 1;
    double k = 2.0;
    double tol = 1e-9;
    int samples = 100;
    double r_lo = 0.1;
    double r_hi = 10.0;
    std::string out_path;
};

int run_well_euler_check(const EulerCheckOptions& opt, std::ostream& out) {
    const auto V = potential_from_expression(opt.v_expr, opt.dim);
    const double residual =
        wells::euler_residual(V, opt.k, opt.samples, {opt.r_lo, opt.r_hi});
    const double grad_fd = wells::gradient_consistency(V, 32, opt.r_hi);

    json inputs;
    inputs["V"] = opt.v_expr;
    inputs["dim"] = opt.dim;
    inputs["k"] = num(opt.k);
    inputs["samples"] = opt.samples;
    inputs["radius_range"] = json::array({num(opt.r_lo), num(opt.r_hi)});
    inputs["tol"] = num(opt.tol);

    json result;
    result["euler_residual"] = num(residual);
    result["gradient_fd_consistency"] = num(grad_fd);
    const bool ok = residual <= opt.tol;
    report::emit(report::make_report("well.euler_check", ok ? "satisfied" : "violated",
                                     std::move(inputs), std::move(result)),
                 opt_path(opt.out_path), out);
    return ok ? kExitOk : kExitViolated;
}

struct EmbedOptions {
    std::string kind = "kronecker";
    double alpha = std::numbers::sqrt2;
    double c1 = 1.0;
    double c2 = 1.0;
    int n = 1;
    int grid_n = 64;
    double t_max = 10.0;
    double dt = 1e-3;
    std::string start = "";
    double max_deviation = 0.0;  // 0 disables the gate
    std::string out_path;
};

embeddings::ExplicitEmbedding build_embedding(const EmbedOptions& opt) {
    if (opt.kind == "kronecker")
        return embeddings::kronecker_embedding(opt.alpha, opt.c1, opt.c2);
    if (opt.kind == "circles") return embeddings::circle_product_embedding(opt.n);
    throw std::invalid_argument("embed: unknown kind " + opt.kind);
}

json embedding_inputs(const EmbedOptions& opt) {
    json in;
    in["kind"] = opt.kind;
    if (opt.kind == "kronecker") {
        in["alpha"] = num(opt.alpha);
        in["c1"] = num(opt.c1);
        in["c2"] = num(opt.c2);
    } else {
        in["n"] = opt.n;
    }
    return in;
}

json embedding_summary(const embeddings::ExplicitEmbedding& emb,
                       const embeddings::EmbeddingInvariants& inv) {
    json result;
    result["source"] = emb.source;
    result["ambient_dim"] = emb.ambient_dim;
    result["scale"] = num(emb.scale);
    result["potential"] = emb.potential.description;
    json diag = json::array();
    for (int i = 0; i < emb.potential.dimension; ++i)
        diag.push_back(num(
            emb.potential.quadratic[static_cast<std::size_t>(i) * emb.potential.dimension + i]));
    result["potential_matrix_diagonal"] = std::move(diag);
    result["p_equals_yq_residual"] = num(inv.p_equals_yq);
    result["yp_plus_grad_v_residual"] = num(inv.yp_plus_grad_v);
    result["q_min_norm"] = num(inv.q_min_norm);
    result["euler_degree2_residual"] = num(inv.euler_degree2);
    return result;
}

int run_embed_build(const EmbedOptions& opt, std::ostream& out) {
    const auto emb = build_embedding(opt);
    const auto inv = embeddings::check_embedding_invariants(emb, opt.grid_n);
    const bool ok = inv.p_equals_yq <= 1e-8 && inv.yp_plus_grad_v <= 1e-10 &&
                    inv.q_min_norm > 0.0 && inv.euler_degree2 <= 1e-12;
    report::emit(report::make_report("embed.build", ok ? "satisfied" : "violated",
                                     embedding_inputs(opt), embedding_summary(emb, inv)),
                 opt_path(opt.out_path), out);
    return ok ? kExitOk : kExitViolated;
}

int run_embed_verify(const EmbedOptions& opt, std::ostream& out) {
    const auto emb = build_embedding(opt);
    std::vector<double> start(static_cast<std::size_t>(emb.source_dim), 0.0);
    if (!opt.start.empty()) {
        start = parse_csv_doubles(opt.start);
        if (start.size() != static_cast<std::size_t>(emb.source_dim))
            throw std::invalid_argument("embed verify: --start has wrong dimension");
    }
    const double dev = embeddings::verify_conjugacy(emb, start, opt.t_max, opt.dt);

    json inputs = embedding_inputs(opt);
    inputs["t_max"] = num(opt.t_max);
    inputs["dt"] = num(opt.dt);
    if (opt.max_deviation > 0.0) inputs["max_deviation"] = num(opt.max_deviation);

    json result;
    result["conjugacy_deviation"] = num(dev);

    const bool gated = opt.max_deviation > 0.0;
    const bool ok = !gated || dev <= opt.max_deviation;
    report::emit(report::make_report("embed.verify", ok ? "satisfied" : "violated",
                                     std::move(inputs), std::move(result)),
                 opt_path(opt.out_path), out);
    return ok ? kExitOk : kExitViolated;
}

struct TmOptions {
    std::string machine_path;
    std::string tape;
    long max_steps = 10000;
    std::string t0 = "0";
    std::string t = "1";
    std::string out_path;
};

turing::Configuration configuration_from_tape(const turing::TuringMachine& tm,
                                              const std::string& tape) {
    std::vector<int> symbols;
    for (char c : tape) {
        const int id = tm.symbol_id(std::string(1, c));
        if (id < 0)
            throw std::invalid_argument(std::string("tm: tape symbol '") + c +
                                        "' not in the alphabet");
        symbols.push_back(id);
    }
    return turing::initial_configuration(tm, symbols);
}

json tape_to_json(const turing::TuringMachine& tm, const turing::Configuration& c) {
    json cells = json::array();
    for (const auto& [pos, sym] : c.support()) {
        json rec = json::array();
        rec.push_back(pos);
        rec.push_back(tm.symbols[static_cast<std::size_t>(sym)]);
        cells.push_back(std::move(rec));
    }
    return cells;
}

int run_tm_run(const TmOptions& opt, std::ostream& out) {
    const auto tm = turing::TuringMachine::parse_file(opt.machine_path);
    auto c0 = configuration_from_tape(tm, opt.tape);
    const auto res = turing::tm_run(tm, std::move(c0), opt.max_steps);

    json inputs;
    inputs["machine"] = opt.machine_path;
    inputs["tape"] = opt.tape;
    inputs["max_steps"] = opt.max_steps;

    json result;
    result["halted"] = res.halted;
    result["steps"] = res.steps;
    result["reached"] = res.halted;
    if (res.halted) result["first_time"] = num(static_cast<double>(res.steps));
    result["state"] = tm.state_names[static_cast<std::size_t>(res.final_config.state)];
    result["tape"] = tape_to_json(tm, res.final_config);

    report::emit(report::make_report("tm.run", "satisfied", std::move(inputs),
                                     std::move(result)),
                 opt_path(opt.out_path), out);
    return kExitOk;
}

int run_tm_suspend(const TmOptions& opt, std::ostream& out) {
    const auto tm = turing::TuringMachine::parse_file(opt.machine_path);
    auto c0 = configuration_from_tape(tm, opt.tape);
    const auto t0 = turing::Rational::from_decimal(opt.t0);
    const auto t = turing::Rational::from_decimal(opt.t);
    const auto pt = turing::suspension_flow_at(tm, {std::move(c0), t0}, t);
    const auto cert = turing::geodesible_certificate(tm);

    json inputs;
    inputs["machine"] = opt.machine_path;
    inputs["tape"] = opt.tape;
    inputs["t0"] = opt.t0;
    inputs["t"] = opt.t;

    json result;
    result["state"] = tm.state_names[static_cast<std::size_t>(pt.config.state)];
    result["fiber_time"] = std::to_string(pt.time.num) + "/" + std::to_string(pt.time.den);
    result["fiber_time_decimal"] = num(pt.time.to_double());
    result["tape"] = tape_to_json(tm, pt.config);
    json cj;
    cj["pairing_value"] = num(cert.pairing_value);
    cj["lie_derivative_zero"] = cert.lie_derivative_zero;
    cj["torus_cross_check"] = cert.torus_cross_check;
    result["geodesible_certificate"] = std::move(cj);

    report::emit(report::make_report("tm.suspend", "satisfied", std::move(inputs),
                                     std::move(result)),
                 opt_path(opt.out_path), out);
    return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"verification and simulation toolkit for torus flows and potential wells"};
    app.set_config("--config", "", "read options from an INI file");
    app.require_subcommand(1);

    TorusOptions adapted_check_opt;
    TorusOptions adapted_search_opt;
    ConditionOptions condition_opt;
    SimulateOptions simulate_opt;
    EulerCheckOptions euler_opt;
    EmbedOptions embed_build_opt;
    EmbedOptions embed_verify_opt;
    TmOptions tm_run_opt;
    TmOptions tm_suspend_opt;

    auto* adapted_cmd = app.add_subcommand("adapted", "adapted 1-form checks");
    auto* adapted_check = adapted_cmd->add_subcommand("check", "check a (flow, theta) pair");
    add_torus_flags(adapted_check, adapted_check_opt, true);
    auto* adapted_search = adapted_cmd->add_subcommand("search", "search for a witness theta");
    add_torus_flags(adapted_search, adapted_search_opt, false);

    auto* condition_cmd = app.add_subcommand("condition", "homogeneous-well conditions");
    auto* condition_check = condition_cmd->add_subcommand("check", "evaluate one condition");
    add_torus_flags(condition_check, condition_opt, true);
    condition_check->add_option("--kind", condition_opt.kind,
                                "homwell_k | homwell2 | spherical | homwell0");
    condition_check->add_option("--k", condition_opt.k, "homogeneity degree");
    condition_check->add_option("--R", condition_opt.r_expr, "radial function R(x,y)");
    condition_check->add_flag("--search", condition_opt.search,
                              "search for (theta, r) instead of checking a witness");
    condition_check->add_option("--y0", condition_opt.y0, "orbit selector for homwell0");

    auto* well_cmd = app.add_subcommand("well", "potential well simulation");
    auto* well_sim = well_cmd->add_subcommand("simulate", "integrate q' = p, p' = -grad V");
    well_sim->add_option("--V", simulate_opt.v_expr, "potential in q1..qm, norm(q)")
        ->required();
    well_sim->add_option("--q0", simulate_opt.q0, "initial position, comma separated");
    well_sim->add_option("--p0", simulate_opt.p0, "initial momentum, comma separated");
    well_sim->add_option("--dt", simulate_opt.dt)->check(CLI::PositiveNumber);
    well_sim->add_option("--steps", simulate_opt.steps)->check(CLI::PositiveNumber);
    well_sim->add_option("--escape-radius", simulate_opt.escape_radius);
    well_sim->add_option("--out", simulate_opt.csv_path, "trajectory CSV path");
    well_sim->add_option("--report", simulate_opt.report_path,
                         "write the report here instead of stdout");

    auto* well_euler = well_cmd->add_subcommand("euler-check", "Euler homogeneity residual");
    well_euler->add_option("--V", euler_opt.v_expr)->required();
    well_euler->add_option("--dim", euler_opt.dim)->check(CLI::PositiveNumber);
    well_euler->add_option("--k", euler_opt.k);
    well_euler->add_option("--tol", euler_opt.tol)->check(CLI::PositiveNumber);
    well_euler->add_option("--samples", euler_opt.samples)->check(CLI::PositiveNumber);
    well_euler->add_option("--r-lo", euler_opt.r_lo)->check(CLI::PositiveNumber);
    well_euler->add_option("--r-hi", euler_opt.r_hi)->check(CLI::PositiveNumber);
    well_euler->add_option("--out", euler_opt.out_path);

    auto* embed_cmd = app.add_subcommand("embed", "explicit embeddings");
    auto* embed_kron = embed_cmd->add_subcommand("kronecker", "T^2 Kronecker flow");
    embed_kron->add_option("--alpha", embed_build_opt.alpha);
    embed_kron->add_option("--c1", embed_build_opt.c1)->check(CLI::PositiveNumber);
    embed_kron->add_option("--c2", embed_build_opt.c2)->check(CLI::PositiveNumber);
    embed_kron->add_option("--grid-n", embed_build_opt.grid_n);
    embed_kron->add_option("--out", embed_build_opt.out_path);
    auto* embed_circles = embed_cmd->add_subcommand("circles", "(S^1)^n rotation");
    embed_circles->add_option("--n", embed_build_opt.n)->check(CLI::PositiveNumber);
    embed_circles->add_option("--grid-n", embed_build_opt.grid_n);
    embed_circles->add_option("--out", embed_build_opt.out_path);
    auto* embed_verify = embed_cmd->add_subcommand("verify", "conjugacy deviation");
    embed_verify->add_option("--kind", embed_verify_opt.kind, "kronecker | circles");
    embed_verify->add_option("--alpha", embed_verify_opt.alpha);
    embed_verify->add_option("--c1", embed_verify_opt.c1)->check(CLI::PositiveNumber);
    embed_verify->add_option("--c2", embed_verify_opt.c2)->check(CLI::PositiveNumber);
    embed_verify->add_option("--n", embed_verify_opt.n)->check(CLI::PositiveNumber);
    embed_verify->add_option("--t-max", embed_verify_opt.t_max);
    embed_verify->add_option("--dt", embed_verify_opt.dt)->check(CLI::PositiveNumber);
    embed_verify->add_option("--start", embed_verify_opt.start, "source start point");
    embed_verify->add_option("--max-deviation", embed_verify_opt.max_deviation,
                             "fail when the deviation exceeds this");
    embed_verify->add_option("--out", embed_verify_opt.out_path);

    auto* tm_cmd = app.add_subcommand("tm", "Turing machines and suspensions");
    auto* tm_run_cmd = tm_cmd->add_subcommand("run", "simulate a machine");
    tm_run_cmd->add_option("--machine", tm_run_opt.machine_path)->required();
    tm_run_cmd->add_option("--tape", tm_run_opt.tape, "symbols from cell 0 rightwards");
    tm_run_cmd->add_option("--max-steps", tm_run_opt.max_steps)->check(CLI::PositiveNumber);
    tm_run_cmd->add_option("--out", tm_run_opt.out_path);
    auto* tm_suspend_cmd = tm_cmd->add_subcommand("suspend", "evaluate the suspension flow");
    tm_suspend_cmd->add_option("--machine", tm_suspend_opt.machine_path)->required();
    tm_suspend_cmd->add_option("--tape", tm_suspend_opt.tape);
    tm_suspend_cmd->add_option("--t0", tm_suspend_opt.t0, "initial fiber time (decimal)");
    tm_suspend_cmd->add_option("--t", tm_suspend_opt.t, "flow time (decimal)");
    tm_suspend_cmd->add_option("--out", tm_suspend_opt.out_path);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help() << std::flush;
            return kExitOk;
        }
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (adapted_check->parsed()) return run_adapted_check(adapted_check_opt, out);
        if (adapted_search->parsed()) return run_adapted_search(adapted_search_opt, out);
        if (condition_check->parsed()) return run_condition_check(condition_opt, out);
        if (well_sim->parsed()) return run_well_simulate(simulate_opt, out);
        if (well_euler->parsed()) return run_well_euler_check(euler_opt, out);
        if (embed_kron->parsed()) {
            embed_build_opt.kind = "kronecker";
            return run_embed_build(embed_build_opt, out);
        }
        if (embed_circles->parsed()) {
            embed_build_opt.kind = "circles";
            return run_embed_build(embed_build_opt, out);
        }
        if (embed_verify->parsed()) return run_embed_verify(embed_verify_opt, out);
        if (tm_run_cmd->parsed()) return run_tm_run(tm_run_opt, out);
        if (tm_suspend_cmd->parsed()) return run_tm_suspend(tm_suspend_opt, out);
        err << "usage error: missing subcommand\n";
        return kExitUsage;
    } catch (const expr::ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const expr::EvalError& e) {
        err << "evaluation error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const report::IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitViolated;
    }
}

}  // namespace toruswell::cli
