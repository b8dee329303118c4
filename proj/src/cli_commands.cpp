#include "involution/cli.hpp"

#include "involution/brackets.hpp"
#include "involution/errors.hpp"
#include "involution/integrators.hpp"
#include "involution/observables.hpp"
#include "involution/operator_identities.hpp"
#include "involution/quartic.hpp"
#include "involution/trajectory_io.hpp"

#include "CLI11.hpp"
#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>

namespace involution::cli {

using nlohmann::ordered_json;

namespace {

// Alphas from the config: explicit list, or 1,2,4,... of length n.
Parameters resolve_parameters(const RunConfig& cfg, std::size_t default_n = 3)
{
    std::vector<Rational> alphas;
    if (!cfg.alphas.empty()) {
        for (const auto& a : cfg.alphas) alphas.push_back(parse_rational(a));
        if (cfg.n && *cfg.n != alphas.size())
            throw ConfigError(fmt::format("--n {} does not match {} alphas", *cfg.n, alphas.size()));
    } else {
        const std::size_t n = cfg.n.value_or(default_n);
        if (n > kMaxCoordinates) throw TooFewCoordinates(fmt::format("n = {} exceeds {}", n, kMaxCoordinates));
        for (std::size_t i = 0; i < n; ++i) alphas.emplace_back(1L << i);
    }
    return make_parameters(std::move(alphas), parse_rational(cfg.alpha));
}

ordered_json alphas_json(const Parameters& params)
{
    ordered_json a = ordered_json::array();
    for (const auto& r : params.exact_alphas()) a.push_back(to_string(r));
    return a;
}

std::vector<double> parse_vector(const std::vector<std::string>& items)
{
    std::vector<double> v;
    for (const auto& s : items) v.push_back(to_double(parse_rational(s)));
    return v;
}

std::vector<Observable> resolve_family(const RunConfig& cfg, const Parameters& params)
{
    const std::string prefix = "mixed:";
    if (cfg.family.rfind(prefix, 0) == 0) {
        std::vector<Observable> members;
        std::string rest = cfg.family.substr(prefix.size());
        std::size_t start = 0;
        while (start <= rest.size()) {
            const std::size_t comma = std::min(rest.find(',', start), rest.size());
            members.push_back(make_named(rest.substr(start, comma - start), params));
            start = comma + 1;
        }
        if (members.size() < 2) throw ConfigError("a mixed family needs at least two members");
        return members;
    }
    const auto kind = parse_family_tag(cfg.family);
    if (!kind) throw ConfigError(fmt::format("unknown family '{}'", cfg.family));
    return make_family(*kind, params);
}

BracketSpec resolve_bracket(const std::string& name, const Parameters& params)
{
    if (name == "poisson") return BracketSpec::poisson();
    if (name == "dirac-sphere") return BracketSpec::dirac(ConstraintPair::sphere(params.n()));
    if (name == "dirac-ellipsoid") return BracketSpec::dirac(ConstraintPair::ellipsoid(params));
    throw ConfigError(fmt::format("unknown bracket '{}'", name));
}

// "[H1,H2]" style ids of bare commutators.
bool is_bare_commutator(const std::string& id)
{
    static const std::regex re(R"(\[[A-Za-z]+\d+,[A-Za-z]+\d+\])");
    return std::regex_match(id, re);
}

}  // namespace

Outcome cmd_verify_brackets(const RunConfig& cfg)
{
    const Parameters params = resolve_parameters(cfg);
    const std::vector<Observable> family = resolve_family(cfg, params);
    const BracketSpec bracket = resolve_bracket(cfg.bracket, params);

    const auto reports = cfg.serial ? verify_commuting_family_serial(family, bracket, cfg.trials, cfg.seed, cfg.tol)
                                    : verify_commuting_family(family, bracket, cfg.trials, cfg.seed, cfg.tol);
    const auto pairs = summarize(reports);

    Outcome out;
    out.report["command"] = "verify brackets";
    out.report["config"] = {{"family", cfg.family},    {"bracket", bracket.label()}, {"n", params.n()},
                            {"alphas", alphas_json(params)}, {"alpha", to_string(params.exact_alpha())},
                            {"trials", cfg.trials},   {"tol", cfg.tol},             {"seed", cfg.seed}};
    ordered_json results = ordered_json::array();
    bool all = true;
    for (const auto& p : pairs) {
        const std::string id = fmt::format("{{{},{}}}", family[p.i].name(), family[p.k].name());
        results.push_back({{"id", id},
                           {"residual", p.worst_residual},
                           {"relative", p.worst_relative},
                           {"failures", p.failures},
                           {"passed", p.passed}});
        all = all && p.passed;
        out.messages.push_back(fmt::format("{} worst {:.3e} (relative {:.3e}) {}", id, p.worst_residual,
                                           p.worst_relative, p.passed ? "ok" : fmt::format("FAIL at {} points", p.failures)));
    }
    for (const auto& r : reports)
        if (!r.error.empty()) {
            out.messages.push_back(fmt::format("first evaluation error: {}", r.error));
            break;
        }
    out.report["results"] = std::move(results);
    out.report["passed"] = all;
    out.exit_code = all ? kPass : kFail;
    return out;
}

Outcome cmd_verify_operators(const RunConfig& cfg)
{
    const std::string& rel = cfg.relation;
    ops::IdentityReport report;
    ordered_json config = {{"relation", rel}};
    if (rel == "son" || rel == "aux") {
        const std::size_t n = cfg.alphas.empty() ? cfg.n.value_or(3) : cfg.alphas.size();
        if (n > kMaxCoordinates) throw TooFewCoordinates(fmt::format("n = {} exceeds {}", n, kMaxCoordinates));
        config["n"] = n;
        report = rel == "son" ? ops::verify_soN(n) : ops::verify_aux_relations(n);
    } else {
        const Parameters params = resolve_parameters(cfg);
        config["n"] = params.n();
        config["alphas"] = alphas_json(params);
        config["alpha"] = to_string(params.exact_alpha());
        if (rel == "hk")
            report = ops::verify_hk(params);
        else if (rel == "xpj")
            report = ops::verify_xpJ_symmetry(params);
        else if (rel == "dilation")
            report = ops::verify_dilation_identity(params);
        else if (rel == "naive")
            report = ops::verify_naive_noncommute(params);
        else
            throw ConfigError(fmt::format("unknown relation '{}'", rel));
    }

    Outcome out;
    out.report["command"] = "verify operators";
    out.report["config"] = std::move(config);
    ordered_json results = ordered_json::array();
    std::vector<std::string> zero_commutators;
    const bool vanishing = rel == "hk" || rel == "xpj" || rel == "naive";  // bare [A,B] ids assert [A,B] = 0 here
    std::size_t held = 0;
    for (const auto& c : report.checks) {
        if (c.asserted && c.passed) ++held;
        results.push_back({{"id", c.id},
                           {"term_count", c.term_count},
                           {"asserted", c.asserted},
                           {"passed", c.passed},
                           {"detail", c.detail}});
        if (vanishing && c.asserted && c.passed && c.term_count == 0 && is_bare_commutator(c.id))
            zero_commutators.push_back(c.id);
        else if (!c.passed || !c.asserted || vanishing)
            out.messages.push_back(fmt::format("{}: {}{}", c.id,
                                               c.passed ? "ok" : (c.asserted ? "FAIL" : "differs"),
                                               c.passed && c.term_count == 0 ? "" : fmt::format(" ({} terms)", c.term_count)));
    }
    if (!zero_commutators.empty()) {
        std::string line;
        for (const auto& id : zero_commutators) line += id + "=";
        out.messages.insert(out.messages.begin(), line + "0 (exact)");
    }
    out.messages.insert(out.messages.begin(),
                        fmt::format("{}: {} of {} asserted checks hold exactly", rel, held, report.asserted_count()));
    ordered_json notes = ordered_json::array();
    for (const auto& n : report.notes) {
        notes.push_back(n);
        out.messages.push_back("note: " + n);
    }
    out.report["results"] = std::move(results);
    out.report["notes"] = std::move(notes);
    out.report["passed"] = report.passed();
    out.exit_code = report.passed() ? kPass : kFail;
    return out;
}

namespace {

struct SimulationSetup {
    dyn::Trajectory traj;
    std::vector<Observable> conserved;
    std::optional<ConstraintPair> constraint;
    std::function<dyn::Trajectory(double, std::size_t)> rerun;
};

// Deterministic default start: x_i = 1 + i/2, p alternating in sign.
PhasePoint default_start(std::size_t n)
{
    PhasePoint pt(n);
    for (std::size_t i = 0; i < n; ++i) {
        pt.x[i] = 1.0 + 0.5 * static_cast<double>(i);
        pt.p[i] = (i % 2 == 0 ? 0.3 : -0.2) * static_cast<double>(i + 1);
    }
    return pt;
}

PhasePoint start_point(const RunConfig& cfg, std::size_t n)
{
    PhasePoint pt = default_start(n);
    if (!cfg.x0.empty()) pt.x = parse_vector(cfg.x0);
    if (!cfg.p0.empty()) pt.p = parse_vector(cfg.p0);
    if (pt.x.size() != n || pt.p.size() != n)
        throw ConfigError(fmt::format("start point must have {} coordinates and {} momenta", n, n));
    return pt;
}

}  // namespace

Outcome cmd_simulate(const RunConfig& cfg)
{
    if (!(cfg.h > 0.0)) throw ConfigError("--h must be positive");
    Outcome out;
    ordered_json config = {{"system", cfg.system}, {"h", cfg.h}, {"steps", cfg.steps}};
    SimulationSetup setup;
    std::optional<dyn::QuarticSolution> quartic;

    if (cfg.system == "neumann" || cfg.system == "ellipsoid") {
        const Parameters params = resolve_parameters(cfg);
        const auto kind = cfg.system == "neumann" ? dyn::ConstrainedKind::Sphere : dyn::ConstrainedKind::Ellipsoid;
        PhasePoint start = start_point(cfg, params.n());
        if (!dyn::on_surface(kind, params, start)) {
            start = dyn::project_to_surface(kind, params, start);
            out.messages.push_back("warning: start point is off the constraint surface; projected onto it");
        }
        config["alphas"] = alphas_json(params);
        setup.constraint = dyn::constraint_for(kind, params);
        setup.conserved = make_family(kind == dyn::ConstrainedKind::Sphere ? FamilyKind::G : FamilyKind::F, params);
        setup.conserved.push_back(dyn::hamiltonian_for(kind, params));
        setup.rerun = [kind, params, start](double h, std::size_t steps) {
            return dyn::integrate_constrained(kind, params, start, h, steps);
        };
    } else if (cfg.system == "hsum") {
        // Flow of sum_k H_k/alpha_k; every H_k should stay constant.
        const Parameters params = resolve_parameters(cfg);
        const PhasePoint start = start_point(cfg, params.n());
        config["alphas"] = alphas_json(params);
        config["alpha"] = to_string(params.exact_alpha());
        const Observable ham = make_weighted_H_sum(params);
        setup.conserved = make_family(FamilyKind::H, params);
        setup.conserved.push_back(ham);
        setup.rerun = [ham, start](double h, std::size_t steps) { return dyn::integrate_flat(ham, start, h, steps); };
    } else if (cfg.system == "quartic") {
        dyn::QuarticParams qp{cfg.P, cfg.mu, cfg.E, cfg.q0, 0.0, cfg.qdot_sign};
        quartic.emplace(qp);
        const Parameters params = dyn::quartic_parameters(cfg.mu);
        const Observable ham = make_hamiltonian(HamiltonianKind::QuarticN2, params);
        const PhasePoint start = quartic->initial_point();
        config["P"] = cfg.P;
        config["mu"] = cfg.mu;
        config["E"] = cfg.E;
        config["q0"] = cfg.q0;
        config["qdot_sign"] = cfg.qdot_sign;
        setup.conserved = {ham};
        setup.rerun = [ham, start](double h, std::size_t steps) {
            dyn::FlatOptions opts;
            opts.escaped = [](const PhasePoint& pt) { return std::abs(pt.x[1] - pt.x[0]) > 1e6; };
            return dyn::integrate_flat(ham, start, h, steps, opts);
        };
    } else {
        throw ConfigError(fmt::format("unknown system '{}'", cfg.system));
    }
    config["output"] = cfg.output;
    config["drift_tol"] = cfg.drift_tol;

    setup.traj = setup.rerun(cfg.h, cfg.steps);
    // Near a quartic blow-up no fixed-step solution tracks q; compare and
    // measure drift on the first half of the time to escape.
    dyn::Trajectory measured = setup.traj;
    if (quartic && std::isfinite(quartic->interval().second)) {
        const double window = 0.5 * quartic->interval().second;
        std::size_t keep = 0;
        while (keep < measured.times.size() && measured.times[keep] <= window) ++keep;
        measured.times.resize(keep);
        measured.states.resize(keep);
        config["comparison_window"] = window;
    }
    dyn::DriftReport drift = dyn::measure_drift(measured, setup.conserved, setup.constraint);
    bool passed = drift.max_relative_drift() <= cfg.drift_tol;
    if (setup.constraint)
        passed = passed && drift.max_constraint_violation <= 1e-10 && drift.max_tangency_violation <= 1e-10;

    // Order estimate from a second run at h/2 (not meaningful once truncated).
    if (!setup.traj.truncated) {
        const dyn::ConvergenceStudy study =
            dyn::step_halving_study(setup.rerun, cfg.h, cfg.steps, setup.conserved, setup.constraint);
        drift.drift_ratio = study.overall_ratio;
        drift.order_estimate = study.order_estimate;
    }

    ordered_json results = ordered_json::array();
    for (const auto& e : drift.entries)
        results.push_back({{"id", "drift " + e.name},
                           {"residual", e.relative_drift},
                           {"passed", e.relative_drift <= cfg.drift_tol}});
    if (setup.constraint) {
        results.push_back({{"id", "constraint"},
                           {"residual", drift.max_constraint_violation},
                           {"passed", drift.max_constraint_violation <= 1e-10}});
        results.push_back({{"id", "tangency"},
                           {"residual", drift.max_tangency_violation},
                           {"passed", drift.max_tangency_violation <= 1e-10}});
    }
    if (quartic) {
        double worst = 0.0;
        for (std::size_t s = 0; s < measured.states.size(); ++s) {
            const double t = measured.times[s];
            const auto& st = measured.states[s];
            const double exact = quartic->q(t);
            worst = std::max(worst, std::abs((st.x[1] - st.x[0]) - exact) / std::max(1.0, std::abs(exact)));
        }
        const bool ok = worst <= 1e-6;
        results.push_back({{"id", "max |q_numeric - q_exact| / max(1, |q_exact|)"}, {"residual", worst}, {"passed", ok}});
        passed = passed && ok;
        out.messages.push_back(fmt::format("max |q_numeric - q_exact| / max(1, |q_exact|) = {:.3e}", worst));
        const auto [lo, hi] = quartic->interval();
        out.messages.push_back(fmt::format("existence interval ({}, {})", lo, hi));
    }

    {
        std::ofstream csv(cfg.output);
        if (!csv) throw ConfigError(fmt::format("cannot write '{}'", cfg.output));
        dyn::write_trajectory_csv(csv, setup.traj, setup.conserved);
    }
    if (setup.traj.truncated) out.messages.push_back("trajectory truncated: " + setup.traj.note);
    out.messages.push_back(fmt::format("max relative drift {:.3e}; {} rows written to {}", drift.max_relative_drift(),
                                       setup.traj.states.size(), cfg.output));

    out.report["command"] = "simulate";
    out.report["config"] = std::move(config);
    out.report["results"] = std::move(results);
    out.report["drift"] = dyn::drift_report_json(drift);
    out.report["truncated"] = setup.traj.truncated;
    out.report["passed"] = passed;
    out.exit_code = passed ? kPass : kFail;
    return out;
}

Outcome cmd_identity_cyclic(const RunConfig& cfg)
{
    if (cfg.alphas.size() < 3) throw ConfigError("the cyclic identity needs at least 3 alphas");
    const Parameters params = resolve_parameters(cfg);
    const std::size_t n = params.n();

    Outcome out;
    out.report["command"] = "identity cyclic";
    out.report["config"] = {{"alphas", alphas_json(params)}};
    ordered_json results = ordered_json::array();
    bool all = true;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k + 1; l < n; ++l) {
                const Rational r = cyclic_identity_residual(params, i, k, l);
                const bool ok = sgn(r) == 0;
                all = all && ok;
                ++count;
                results.push_back({{"id", fmt::format("({},{},{})", i + 1, k + 1, l + 1)},
                                   {"residual", to_string(r)},
                                   {"passed", ok}});
            }
    out.messages.push_back(fmt::format("{} triples, {}", count, all ? "all residuals exactly 0" : "NONZERO residual found"));
    out.report["results"] = std::move(results);
    out.report["passed"] = all;
    out.exit_code = all ? kPass : kFail;
    return out;
}

// ---------------------------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Checks commuting families of observables and operators, and integrates their flows", "involution"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string report_path;
    std::optional<std::size_t> n;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--n", n, "number of coordinates");
        sub->add_option("--alphas", cfg.alphas, "distinct alpha_i, exact rationals (p/q or decimal)")->delimiter(',');
        sub->add_option("--alpha", cfg.alpha, "scalar alpha (exact rational)");
        sub->add_option("--report", report_path, "write the JSON report here instead of stdout");
    };

    auto* verify = app.add_subcommand("verify", "verify commutativity");
    verify->require_subcommand(1);
    auto* brackets = verify->add_subcommand("brackets", "pairwise brackets of a family at sampled points");
    common(brackets);
    brackets->add_option("--family", cfg.family, "F|G|Jalpha|Htilde|H|sqrtL-tails|mixed:A,B,...");
    brackets->add_option("--bracket", cfg.bracket, "poisson|dirac-sphere|dirac-ellipsoid");
    brackets->add_option("--trials", cfg.trials, "points per pair");
    brackets->add_option("--tol", cfg.tol, "relative tolerance");
    brackets->add_option("--seed", cfg.seed, "sampling seed");
    brackets->add_flag("--serial", cfg.serial, "single-threaded reference path");

    auto* operators = verify->add_subcommand("operators", "exact operator identities");
    common(operators);
    operators->add_option("--relation", cfg.relation, "son|hk|aux|xpj|dilation|naive");

    auto* simulate = app.add_subcommand("simulate", "integrate a flow and report conservation drift");
    common(simulate);
    simulate->set_help_flag("--help", "print this help message and exit");  // -h would clash with --h
    simulate->add_option("--system", cfg.system, "neumann|ellipsoid|hsum|quartic");
    simulate->add_option("--h", cfg.h, "step size");
    simulate->add_option("--steps", cfg.steps, "number of steps");
    simulate->add_option("--x0", cfg.x0, "start coordinates")->delimiter(',');
    simulate->add_option("--p0", cfg.p0, "start momenta")->delimiter(',');
    simulate->add_option("--output", cfg.output, "trajectory CSV path");
    simulate->add_option("--drift-tol", cfg.drift_tol, "allowed relative drift");
    simulate->add_option("--P", cfg.P, "quartic: total momentum");
    simulate->add_option("--mu", cfg.mu, "quartic: alpha_1 alpha_2");
    simulate->add_option("--E", cfg.E, "quartic: energy");
    simulate->add_option("--q0", cfg.q0, "quartic: initial separation");
    simulate->add_option("--qdot-sign", cfg.qdot_sign, "quartic: sign of the initial velocity")->check(CLI::IsMember({-1, 1}));

    auto* identity = app.add_subcommand("identity", "exact algebraic identities");
    identity->require_subcommand(1);
    auto* cyclic = identity->add_subcommand("cyclic", "1/(a_ik a_kl) + cyclic = 0 over all triples");
    common(cyclic);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kConfig;
    }
    cfg.n = n;

    Outcome outcome;
    try {
        if (brackets->parsed())
            outcome = cmd_verify_brackets(cfg);
        else if (operators->parsed())
            outcome = cmd_verify_operators(cfg);
        else if (simulate->parsed())
            outcome = cmd_simulate(cfg);
        else
            outcome = cmd_identity_cyclic(cfg);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const IntegratorError& e) {
        err << "integrator failure: " << e.what() << '\n';
        return kRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntime;
    }

    for (const auto& m : outcome.messages) err << m << '\n';
    const std::string text = outcome.report.dump(2) + "\n";
    if (report_path.empty()) {
        out << text;
    } else {
        std::ofstream f(report_path);
        if (!f) {
            err << "config error: cannot write '" << report_path << "'\n";
            return kConfig;
        }
        f << text;
    }
    return outcome.exit_code;
}

}  // namespace involution::cli
