#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lcu/analog/algorithms.hpp"
#include "lcu/apps/gsp.hpp"
#include "lcu/apps/hamsim.hpp"
#include "lcu/apps/oracles.hpp"
#include "lcu/apps/qls.hpp"
#include "lcu/core/parallel.hpp"
#include "lcu/decomp/chebyshev.hpp"
#include "lcu/decomp/gaussian.hpp"
#include "lcu/decomp/inverse.hpp"
#include "lcu/harness/config.hpp"
#include "lcu/walks/search.hpp"

namespace lcu::harness {

using json = nlohmann::json;

inline constexpr const char* kToolName = "lcu_lab";
inline constexpr const char* kVersion = "1.0.0";

/// Experiment ids for streams the harness derives on top of the estimator's.
inline constexpr std::uint64_t kSweepExperiment = 4;
inline constexpr std::uint64_t kSearchExperiment = 5;

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitPrecondition = 3, kExitConvergence = 4 };

/// Typed echo of the resolved configuration.
inline json config_json(const ExperimentConfig& cfg)
{
    json j = json::object();
    for (const auto& k : cfg.keys()) {
        switch (k.type) {
        case KeyType::integer:
            j[k.name] = cfg.integer(k.name);
            break;
        case KeyType::real:
            j[k.name] = cfg.real(k.name);
            break;
        case KeyType::flag:
            j[k.name] = cfg.flag(k.name);
            break;
        case KeyType::text:
            j[k.name] = cfg.text(k.name);
            break;
        }
    }
    return j;
}

inline Mode parse_mode(const std::string& m)
{
    if (m == "expectation") {
        return Mode::expectation;
    }
    if (m == "shot") {
        return Mode::shot;
    }
    throw ConfigError("mode must be 'shot' or 'expectation', got '" + m + "'");
}

inline EstimatorConfig estimator_config(const ExperimentConfig& cfg)
{
    EstimatorConfig e;
    e.epsilon = cfg.real("eps");
    e.delta = cfg.real("delta");
    e.mode = parse_mode(cfg.text("mode"));
    e.master_seed = static_cast<std::uint64_t>(cfg.integer("seed"));
    const auto reps = cfg.integer("repetitions");
    if (reps < 0) {
        throw ConfigError("repetitions must be nonnegative");
    }
    if (reps > 0) {
        e.repetitions_override = reps;
    }
    const auto th = cfg.integer("threads");
    if (th < 1) {
        throw ConfigError("threads must be at least 1");
    }
    e.threads = static_cast<unsigned>(th);
    return e;
}

inline PauliHamiltonian parse_hamiltonian(const std::string& text)
{
    try {
        return PauliHamiltonian::parse(text);
    } catch (const PreconditionError& e) {
        throw ConfigError(std::string("bad Pauli text: ") + e.what());
    }
}

inline DenseOperator parse_observable(const std::string& text) { return ham_to_dense(parse_hamiltonian(text)); }

inline json report_json(const EstimateReport& r)
{
    return {
        {"mu", r.mu},
        {"ell_tilde", r.ell_tilde},
        {"ratio", r.ratio},
        {"T_used", r.T_used},
        {"T_mu", r.T_mu},
        {"T_norm", r.T_norm},
        {"T_required", r.T_required},
        {"tau_max", r.tau_max},
        {"avg_cost", r.avg_cost},
        {"empirical_avg_cost", r.empirical_avg_cost},
        {"empirical_std", r.empirical_std},
        {"seed", r.seed},
        {"l1_norm", r.l1_norm},
        {"norm_o", r.norm_o},
        {"ell_star", r.ell_star},
        {"normalized", r.normalized},
    };
}

inline json grid_json(const analog::GridInfo& g) { return {{"kind", analog::to_string(g.kind)}, {"n", g.n}, {"z_max", g.z_max}}; }

/// Per-sample rows: index, term ids, value, cost.
inline std::string trace_csv(const std::vector<SampleRecord>& rows)
{
    std::string out = "index,term_id_1,term_id_2,value,cost\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%ld,%llu,%llu,%.17g,%.17g\n", r.index, static_cast<unsigned long long>(r.term_ids.first),
            static_cast<unsigned long long>(r.term_ids.second), r.value, r.cost);
        out += buf;
    }
    return out;
}

struct RunOutput {
    json results;
    std::vector<SampleRecord> trace;
};

inline apps::GspProblem gsp_problem(const ExperimentConfig& cfg)
{
    apps::GspProblem p;
    p.hamiltonian = parse_hamiltonian(cfg.text("hamiltonian"));
    p.gap = cfg.real("gap");
    p.eta = cfg.real("eta");
    p.e0 = cfg.real("e0");
    p.eps_g = cfg.real("eps_g");
    p.initial_state = StateVector::from_label(cfg.text("state"));
    p.validate();
    return p;
}

inline apps::QlsProblem qls_problem(const ExperimentConfig& cfg)
{
    apps::QlsProblem p;
    p.hamiltonian = parse_hamiltonian(cfg.text("hamiltonian"));
    p.kappa = cfg.real("kappa");
    p.b = StateVector::from_label(cfg.text("state"));
    p.validate();
    return p;
}

inline analog::GridSpec grid_spec(const ExperimentConfig& cfg)
{
    analog::GridSpec g;
    g.n_points = cfg.integer("n_points");
    g.z_max = cfg.real("z_max");
    g.grid_tol = cfg.real("grid_tol");
    g.check_convergence = cfg.flag("check_convergence");
    g.threads = static_cast<unsigned>(std::max<std::int64_t>(1, cfg.integer("threads")));
    if (g.n_points < 3) {
        throw ConfigError("n_points must be at least 3");
    }
    return g;
}

inline RunOutput run_hamsim(const ExperimentConfig& cfg)
{
    const EstimatorConfig ec = estimator_config(cfg);
    const PauliHamiltonian h = parse_hamiltonian(cfg.text("hamiltonian"));
    const DenseOperator o = parse_observable(cfg.text("observable"));
    const StateVector psi0 = StateVector::from_label(cfg.text("state"));
    const double t = cfg.real("time");
    RunOutput out;
    const apps::HamsimResult r = apps::hamsim_estimate(h, t, Observable(o), psi0, ec, cfg.flag("trace") ? &out.trace : nullptr);
    const double exact = apps::hamsim_exact(h, t, o, psi0);
    const CostSummary cs = cost_summary(r.report);
    out.results = {
        {"estimate", report_json(r.report)},
        {"segments", r.segments},
        {"order", r.order},
        {"gamma", r.gamma},
        {"segment_l1", r.segment_l1},
        {"oracle", exact},
        {"abs_error", std::abs(r.report.mu - exact)},
        {"total_cost", cs.total},
    };
    return out;
}

inline RunOutput run_gsp(const ExperimentConfig& cfg)
{
    const EstimatorConfig ec = estimator_config(cfg);
    const apps::GspProblem p = gsp_problem(cfg);
    const DenseOperator o = parse_observable(cfg.text("observable"));
    RunOutput out;
    const bool imperfect = cfg.flag("imperfect");
    const apps::GspResult r = imperfect ? apps::gsp_estimate_imperfect(p, Observable(o), ec)
                                        : apps::gsp_estimate(p, Observable(o), ec, cfg.flag("trace") ? &out.trace : nullptr);
    const double exact = apps::gsp_exact(p, o);
    out.results = {
        {"estimate", report_json(r.report)},
        {"filter_time", r.plan.t},
        {"gamma", r.plan.gamma},
        {"scale", r.plan.scale},
        {"normalized_gap", r.plan.gap},
        {"m", r.m},
        {"delta_t", r.delta_t},
        {"imperfect", imperfect},
        {"perturbation", r.perturbation},
        {"oracle", exact},
        {"abs_error", std::abs(r.report.ratio - exact)},
        {"oracle_overlap2", apps::ground_overlap2(ham_to_dense(p.hamiltonian), p.initial_state)},
    };
    return out;
}

inline RunOutput run_qls(const ExperimentConfig& cfg)
{
    const EstimatorConfig ec = estimator_config(cfg);
    const apps::QlsProblem p = qls_problem(cfg);
    const DenseOperator o = parse_observable(cfg.text("observable"));
    RunOutput out;
    const apps::QlsResult r = apps::qls_estimate(p, Observable(o), ec, cfg.flag("trace") ? &out.trace : nullptr);
    const double exact = apps::qls_exact(p, o);
    out.results = {
        {"estimate", report_json(r.report)},
        {"gamma", r.gamma},
        {"j_count", r.j_count},
        {"k_count", r.k_count},
        {"y_max", r.y_max},
        {"z_max", r.z_max},
        {"scalar_sup_error", r.scalar_sup_error},
        {"n_terms", r.n_terms},
        {"oracle", exact},
        {"abs_error", std::abs(r.report.ratio - exact)},
        {"oracle_ell2", apps::qls_solution(p).squaredNorm()},
    };
    return out;
}

inline RunOutput run_analog_gsp(const ExperimentConfig& cfg)
{
    const apps::GspProblem p = gsp_problem(cfg);
    const double eps = cfg.real("eps");
    const analog::AnalogGspResult r = analog::analog_gsp(p, eps, grid_spec(cfg));
    const DenseOperator h = ham_to_dense(p.hamiltonian);
    const StateVector v0 = apps::ground_projection(h, p.initial_state);
    const Vector filtered = apply_function(eigensystem(ham_to_dense(r.normalized)), [t = r.t](double x) { return std::exp(-t * x * x); })
        * p.initial_state.amplitudes();
    const double fid = apps::fidelity(r.state.amplitudes(), v0.amplitudes());
    RunOutput out;
    out.results = {
        {"bigT", r.bigT},
        {"t", r.t},
        {"success_prob", r.success_prob},
        {"oracle_success_prob", filtered.squaredNorm()},
        {"fidelity_or_error", fid},
        {"state_error", apps::phase_aligned_distance(r.state.amplitudes(), v0.amplitudes())},
        {"grid", grid_json(r.grid)},
        {"converged", r.converged},
        {"convergence_change", r.convergence_change},
    };
    return out;
}

inline RunOutput run_analog_qls(const ExperimentConfig& cfg)
{
    const apps::QlsProblem p = qls_problem(cfg);
    const std::string a = cfg.text("ancilla");
    if (a != "ring" && a != "gaussian") {
        throw ConfigError("ancilla must be 'ring' or 'gaussian', got '" + a + "'");
    }
    const analog::QlsAncilla kind = a == "ring" ? analog::QlsAncilla::ring : analog::QlsAncilla::gaussian;
    const analog::AnalogQlsResult r = analog::analog_qls(p, cfg.real("eps"), kind, grid_spec(cfg));
    json grids = json::array();
    for (const auto& g : r.grids) {
        grids.push_back(grid_json(g));
    }
    RunOutput out;
    out.results = {
        {"ancilla", a},
        {"bigT", r.bigT},
        {"success_prob", r.success_prob},
        {"fidelity_or_error", r.error_vs_oracle},
        {"error_bound", 2.0 * cfg.real("eps") / r.bigT},
        {"truncation_error", r.truncation_error},
        {"grid_error", r.grid_error},
        {"grid", grids.front()},
        {"grids", grids},
        {"converged", r.converged},
        {"convergence_change", r.convergence_change},
    };
    return out;
}

/// cycle:N, complete:N or file:<path> with "u v weight" lines.
inline walks::MarkovChain parse_graph(const std::string& spec)
{
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw ConfigError("graph must be cycle:N, complete:N or file:<path>");
    }
    const std::string kind = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    if (kind == "cycle" || kind == "complete") {
        const auto n = parse_integer(arg, "graph");
        return kind == "cycle" ? walks::MarkovChain::cycle(n) : walks::MarkovChain::complete(n);
    }
    if (kind != "file") {
        throw ConfigError("unknown graph kind '" + kind + "'");
    }
    std::ifstream f(arg);
    if (!f) {
        throw ConfigError("cannot open edge list '" + arg + "'");
    }
    std::vector<std::tuple<Index, Index, double>> edges;
    Index n = 0;
    std::string line;
    while (std::getline(f, line)) {
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        std::istringstream ls(t);
        Index u = 0;
        Index v = 0;
        double w = 0.0;
        if (!(ls >> u >> v >> w)) {
            throw ConfigError("edge list line is not 'u v weight': " + t);
        }
        edges.emplace_back(u, v, w);
        n = std::max(n, std::max(u, v) + 1);
    }
    return walks::MarkovChain::from_weights(walks::weights_from_edges(n, edges));
}

inline std::vector<Index> parse_nodes(const std::string& text)
{
    std::vector<Index> out;
    for (const auto& s : split(text, ',')) {
        out.push_back(parse_integer(s, "marked"));
    }
    return out;
}

inline RunOutput run_walks_search(const ExperimentConfig& cfg)
{
    const walks::MarkovChain chain = parse_graph(cfg.text("graph"));
    const auto algo_id = cfg.integer("algo");
    if (algo_id != 1 && algo_id != 2) {
        throw ConfigError("algo must be 1 or 2");
    }
    const auto algo = algo_id == 1 ? walks::SearchAlgo::power : walks::SearchAlgo::exp;
    walks::SearchConfig sc;
    sc.c_t = cfg.real("c_t");
    if (cfg.real("bigT") > 0.0) {
        sc.bigT = cfg.real("bigT");
    }
    const auto trials = cfg.integer("trials");
    if (trials < 1) {
        throw ConfigError("trials must be at least 1");
    }
    const walks::SpatialSearch search(chain, parse_nodes(cfg.text("marked")), algo, sc);
    const auto seed = static_cast<std::uint64_t>(cfg.integer("seed"));
    std::vector<walks::SearchOutcome> runs(static_cast<std::size_t>(trials));
    parallel_for(runs.size(), static_cast<unsigned>(cfg.integer("threads")), [&](std::size_t i) {
        Stream rng(seed, kSearchExperiment, i);
        runs[i] = search.run(rng);
    });
    long found = 0;
    long premeasured = 0;
    CompensatedSum steps;
    for (const auto& r : runs) {
        found += r.found ? 1 : 0;
        premeasured += r.premeasured ? 1 : 0;
        steps.add(static_cast<double>(r.walk_steps_applied));
    }
    const double n = static_cast<double>(trials);
    const double predicted = search.predicted_success();
    const auto& sp = search.params();
    RunOutput out;
    out.results = {
        {"HT", sp.hitting_time},
        {"T", sp.bigT},
        {"t_max", sp.t_max},
        {"d", sp.d},
        {"dprime", sp.dprime},
        {"s_values", sp.s_values},
        {"trials", trials},
        {"found", found},
        {"premeasured", premeasured},
        {"empirical_success", static_cast<double>(found) / n},
        {"oracle_success", predicted},
        {"oracle_sigma", std::sqrt(predicted * (1.0 - predicted) / n)},
        {"walk_success_floor", search.oracle_success()},
        {"premeasure_probability", search.premeasure_probability()},
        {"mean_walk_steps", steps.value() / n},
        {"theorem1_slack", cfg.flag("slack") ? json(search.ancilla_free_slack()) : json(nullptr)},
    };
    return out;
}

/// Sup of |target(x) - approximation(x)| over a grid.
template <class F, class G>
double grid_sup(const std::vector<double>& xs, F&& target, G&& approx)
{
    double worst = 0.0;
    for (double x : xs) {
        worst = std::max(worst, std::abs(target(x) - approx(x)));
    }
    return worst;
}

inline RunOutput run_decomp_check(const ExperimentConfig& cfg)
{
    const std::string kind = cfg.text("kind");
    const double eps = cfg.real("eps");
    const double t = cfg.real("t");
    const int n = static_cast<int>(cfg.integer("grid"));
    if (n < 2) {
        throw ConfigError("grid must be at least 2");
    }
    const std::vector<double> unit = sup_grid({{-1.0, 1.0}}, n);
    const std::string htext = cfg.text("hamiltonian");
    json r;
    r["kind"] = kind;
    json params;
    if (kind == "gaussian") {
        const GaussianLcu g = gaussian_lcu(t, eps);
        params = {{"t", t}, {"gamma", eps}, {"m", g.m}, {"delta_t", g.delta_t}};
        r["l1_norm"] = g.lcu.l1_norm();
        r["n_terms"] = g.lcu.size();
        r["tau_max"] = g.tau_max;
        r["scalar_sup_error"] = grid_sup(unit, [t](double x) { return cplx(std::exp(-t * x * x)); }, [&](double x) { return lcu_scalar(g.lcu, x); });
        if (!htext.empty()) {
            const PauliHamiltonian h = parse_hamiltonian(htext);
            const DenseOperator hn = ham_to_dense(h.scaled(1.0 / h.beta()));
            const Eigensystem es = eigensystem(hn);
            r["matrix_sup_error"] = spectral_norm(realize_sum(g.lcu, es) - apply_function(es, [t](double x) { return std::exp(-t * x * x); }));
        }
    } else if (kind == "inverse") {
        const double kappa = cfg.real("kappa");
        const InverseLcu inv = inverse_lcu(kappa, eps, n);
        params = {{"kappa", kappa}, {"gamma", eps}, {"j_count", inv.j_count}, {"k_count", inv.k_count}, {"delta_y", inv.delta_y},
            {"delta_z", inv.delta_z}, {"y_max", inv.y_max}, {"z_max", inv.z_max}, {"calibration_rounds", inv.calibration_rounds}};
        r["l1_norm"] = inv.lcu.l1_norm();
        r["n_terms"] = inv.lcu.size();
        r["tau_max"] = inv.tau_max;
        r["scalar_sup_error"] = inv.sup_error;
        if (!htext.empty()) {
            const Eigensystem es = eigensystem(ham_to_dense(parse_hamiltonian(htext)));
            r["matrix_sup_error"] = spectral_norm(realize_sum(inv.lcu, es) - apply_function(es, [](double x) { return 1.0 / x; }));
        }
    } else if (kind == "power") {
        const long tp = std::lround(t);
        if (tp < 0 || std::abs(t - static_cast<double>(tp)) > 0.0) {
            throw ConfigError("power kind needs a nonnegative integer t");
        }
        const long d = power_degree(tp, 2.0 / eps);
        const auto c = chebyshev_power_coeffs(tp, d);
        const LcuDecomposition lcu = power_walk_lcu(tp, d, eps);
        params = {{"t", tp}, {"d", d}, {"eps", eps}};
        r["l1_norm"] = lcu.l1_norm();
        r["n_terms"] = lcu.size();
        r["tau_max"] = static_cast<double>(matched_degree(tp, d));
        r["scalar_sup_error"] = grid_sup(unit, [tp](double x) { return std::pow(x, static_cast<double>(tp)); },
            [&](double x) { return chebyshev_power_eval(tp, c, x); });
    } else if (kind == "exp" || kind == "gaussian_poly") {
        const bool gauss = kind == "gaussian_poly";
        const ExpPoly q = gauss ? gaussian_poly(t, eps) : exp_poly_coeffs(t, eps);
        const LcuDecomposition lcu = exp_walk_lcu(q, eps);
        params = {{"t", t}, {"eps", eps}, {"d", q.d}, {"dprime", q.dprime}};
        r["l1_norm"] = q.l1_norm();
        r["n_terms"] = lcu.size();
        r["tau_max"] = static_cast<double>(std::get<WalkPower>(lcu.terms().back().unitary.kind).exponent);
        r["scalar_sup_error"] = gauss ? grid_sup(unit, [t](double x) { return std::exp(-t * x * x); }, [&](double x) { return q.eval(1.0 - 2.0 * x * x); })
                                      : grid_sup(unit, [t](double x) { return std::exp(-t * (1.0 - x)); }, [&](double x) { return q.eval(x); });
    } else if (kind == "taylor") {
        const PauliHamiltonian h = parse_hamiltonian(htext.empty() ? "0.3*X + 0.4*Z" : htext);
        const long r_seg = cfg.integer("segments");
        const auto order = static_cast<int>(cfg.integer("order"));
        if (r_seg < 1 || order < 0) {
            throw ConfigError("segments must be positive and order nonnegative");
        }
        const TaylorSegment seg = taylor_segment(h, t, r_seg, order);
        params = {{"t", t}, {"segments", r_seg}, {"order", order}, {"beta", h.beta()}};
        r["l1_norm"] = seg.l1_norm();
        r["n_terms"] = seg.tuple_count();
        r["tau_max"] = static_cast<double>((seg.max_order() + 1) * r_seg);
        r["scalar_sup_error"] = json(nullptr);
        if (seg.tuple_count() <= 1e6) {
            const Matrix s = realize_sum(seg.enumerate(), h);
            const Eigensystem es = eigensystem(ham_to_dense(h));
            r["matrix_sup_error"] = spectral_norm(s - evolution(es, t / static_cast<double>(r_seg)));
        }
        params["x"] = seg.x();
    } else {
        throw ConfigError("unknown decomposition kind '" + kind + "'");
    }
    r["params"] = params;
    RunOutput out;
    out.results = r;
    return out;
}

inline RunOutput run_single(const ExperimentConfig& cfg);

/// Target config for one sweep point: overrides, then the axis value, then a fresh derived seed.
inline ExperimentConfig sweep_point(const ExperimentConfig& cfg, const std::string& value, std::size_t index)
{
    const std::string target = cfg.text("target");
    if (target == "sweep") {
        throw ConfigError("sweep cannot target itself");
    }
    ExperimentConfig point(target);
    for (const char* shared : {"eps", "delta", "mode", "threads", "repetitions"}) {
        point.set(shared, cfg.raw(shared));
    }
    for (const auto& item : split(cfg.text("set"), ';')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("sweep override '" + item + "' is not key=value");
        }
        point.set(trim(item.substr(0, eq)), item.substr(eq + 1));
    }
    const std::string axis = cfg.text("axis");
    if (!point.has(axis)) {
        throw ConfigError("sweep axis '" + axis + "' is not a key of '" + target + "'");
    }
    point.set(axis, value);
    const auto master = static_cast<std::uint64_t>(cfg.integer("seed"));
    point.set("seed", std::to_string(derive_seed(master, kSweepExperiment, index) >> 1));
    return point;
}

/// Scalar leaves flattened to dotted column names, in key order.
inline void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, json>>& out)
{
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
        }
    } else if (j.is_number() || j.is_boolean()) {
        out.emplace_back(prefix, j);
    }
}

inline std::string csv_cell(const json& v)
{
    if (v.is_boolean()) {
        return v.get<bool>() ? "1" : "0";
    }
    if (v.is_number_integer()) {
        return v.dump();
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
}

struct SweepOutput {
    std::string csv;
    json points;
};

inline SweepOutput run_sweep(const ExperimentConfig& cfg)
{
    const auto values = split(cfg.text("values"), ',');
    if (values.empty()) {
        throw ConfigError("sweep needs at least one value");
    }
    SweepOutput out;
    out.points = json::array();
    std::vector<std::string> header;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const ExperimentConfig point = sweep_point(cfg, values[i], i);
        const RunOutput r = run_single(point);
        std::vector<std::pair<std::string, json>> cols;
        flatten(r.results, "", cols);
        if (i == 0) {
            header = {cfg.text("axis"), "seed"};
            for (const auto& c : cols) {
                header.push_back(c.first);
            }
            for (std::size_t h = 0; h < header.size(); ++h) {
                out.csv += (h ? "," : "") + header[h];
            }
            out.csv += "\n";
        }
        if (cols.size() + 2 != header.size()) {
            throw ConvergenceError("sweep points produced different result shapes");
        }
        std::string row = csv_cell(json(point.real(cfg.text("axis")))) + "," + std::to_string(point.integer("seed"));
        for (const auto& c : cols) {
            row += "," + csv_cell(c.second);
        }
        out.csv += row + "\n";
        out.points.push_back({{"value", values[i]}, {"config", config_json(point)}, {"results", r.results}});
    }
    return out;
}

inline RunOutput run_single(const ExperimentConfig& cfg)
{
    const std::string& s = cfg.subcommand();
    if (s == "hamsim") {
        return run_hamsim(cfg);
    }
    if (s == "gsp") {
        return run_gsp(cfg);
    }
    if (s == "qls") {
        return run_qls(cfg);
    }
    if (s == "analog-gsp") {
        return run_analog_gsp(cfg);
    }
    if (s == "analog-qls") {
        return run_analog_qls(cfg);
    }
    if (s == "walks-search") {
        return run_walks_search(cfg);
    }
    if (s == "decomp-check") {
        return run_decomp_check(cfg);
    }
    if (s == "sweep") {
        const SweepOutput sw = run_sweep(cfg);
        RunOutput out;
        out.results = {{"points", sw.points}, {"csv", sw.csv}};
        return out;
    }
    throw ConfigError("unknown subcommand '" + s + "'");
}

struct RunReport {
    json document;
    std::vector<SampleRecord> trace;
    std::string csv;
};

/// Runs one configuration and wraps the results with the config echo, timings and version stamp.
inline RunReport run(const ExperimentConfig& cfg)
{
    const auto start = std::chrono::steady_clock::now();
    RunOutput r = run_single(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    RunReport rep;
    if (cfg.subcommand() == "sweep") {
        rep.csv = r.results["csv"].get<std::string>();
        r.results.erase("csv");
    }
    rep.document = {
        {"tool", kToolName},
        {"version", kVersion},
        {"subcommand", cfg.subcommand()},
        {"config", config_json(cfg)},
        {"results", std::move(r.results)},
        {"timings", {{"wall_seconds", secs}}},
    };
    rep.trace = std::move(r.trace);
    return rep;
}

} // namespace lcu::harness
