#include "spr/reports.hpp"

#include <algorithm>

namespace spr {

double audit_bound(double zeta, double tau, double beta) {
    tau = std::max(tau, 1.0);
    beta = std::max(beta, 1.0);
    const double z2 = zeta * zeta;
    const double z4 = z2 * z2;
    const double g = tau * (tau + 2.0);
    const double detour = 24.0 * z4 * tau * (tau + 3.0) * beta * g +
                          4.0 * z2 * (tau + 2.0) * beta;
    return 2.0 * detour + 1.0 + 48.0 * z4 * tau * (tau + 3.0) * beta;
}

InstanceInfo describe_instance(const LabeledGraph& lg, std::string name,
                               std::string source) {
    InstanceInfo info;
    info.name = std::move(name);
    info.source = std::move(source);
    info.n = lg.graph.vertex_count();
    info.m = lg.graph.edge_count();
    info.k = lg.terminals.size();
    return info;
}

Json instance_json(const InstanceInfo& info) {
    return Json{{"name", info.name},
                {"source", info.source},
                {"n", info.n},
                {"m", info.m},
                {"k", info.k}};
}

Json config_json(const SprConfig& cfg) {
    Json j{{"beta", cfg.beta},
           {"tau", cfg.tau},
           {"seed", cfg.seed},
           {"provider", cfg.provider},
           {"strict", cfg.strict},
           {"check_claims", cfg.check_claims}};
    j["c"] = cfg.c_override ? Json(*cfg.c_override) : Json(nullptr);
    return j;
}

Json shortcut_report_json(const ShortcutReport& r) {
    Json j{{"schema", kReportSchema},
           {"delta", r.delta},
           {"worst_hop", r.worst_hop},
           {"realized_kappa", r.realized_kappa},
           {"pairs_checked", r.pairs_checked},
           {"violations", r.violations}};
    j["max_strong_diameter"] =
        r.max_strong_diameter ? Json(*r.max_strong_diameter) : Json(nullptr);
    return j;
}

Json scatter_report_json(const ScatterReport& r) {
    Json viols = Json::array();
    for (const ScatterViolation& v : r.violations)
        viols.push_back(Json{{"u", v.u}, {"v", v.v}, {"reason", v.reason}});
    Json j{{"schema", kReportSchema},
           {"delta", r.delta},
           {"beta_emp", r.beta_emp},
           {"tau_emp", r.tau_emp},
           {"pairs_checked", r.pairs_checked},
           {"exhaustive", r.exhaustive},
           {"violations", viols}};
    j["max_weak_diameter"] =
        r.max_weak_diameter ? Json(*r.max_weak_diameter) : Json(nullptr);
    return j;
}

Json distortion_report_json(const InstanceInfo& info, const SprConfig& cfg,
                            const SprSolution& sol, const DistortionSummary& d,
                            const LabeledGraph& lg) {
    Json pairs = Json::array();
    for (const PairDistortion& p : d.pairs)
        pairs.push_back(Json{{"t1", lg.label_of(p.t1)},
                             {"t2", lg.label_of(p.t2)},
                             {"dg", p.dg},
                             {"dm", p.dm},
                             {"ratio", p.ratio}});

    Json iterations = Json::array();
    for (const IterationStats& it : sol.iteration_stats)
        iterations.push_back(Json{{"i", it.iteration},
                                  {"delta", it.delta},
                                  {"tau_emp", it.tau_emp},
                                  {"beta_emp", it.beta_emp},
                                  {"clusters", it.cluster_count},
                                  {"selected", it.selected_clusters},
                                  {"assigned", it.assigned},
                                  {"pairs_checked", it.pairs_checked},
                                  {"exhaustive", it.exhaustive},
                                  {"skipped", it.skipped}});

    const double bound = audit_bound(sol.zeta, static_cast<double>(sol.tau_emp),
                                     sol.beta_emp);
    std::vector<std::string> flags = d.flags;
    if (d.alpha > bound) {
        if (static_cast<double>(sol.tau_emp) > cfg.tau)
            flags.push_back(
                "alpha exceeds the audit bound and the measured tau exceeds the "
                "configured target: the clustering provider is too weak for this "
                "configuration");
        else
            flags.push_back("alpha exceeds the audit bound at the measured tau");
    }

    Json j{{"schema", kReportSchema},
           {"instance", instance_json(info)},
           {"config", config_json(cfg)},
           {"alpha", d.alpha},
           {"mean_ratio", d.mean_ratio},
           {"pairs", pairs},
           {"pairs_skipped", d.pairs_skipped},
           {"iterations", iterations},
           {"audit_bound", bound},
           {"flags", flags},
           {"warnings", sol.warnings},
           {"violations", sol.violations},
           {"claim_violations", sol.claim_violations},
           {"zeta", sol.zeta},
           {"beta_emp", sol.beta_emp},
           {"tau_emp", sol.tau_emp},
           {"iterations_run", sol.iterations_run},
           {"termination_bound", sol.termination_bound},
           {"escalations", sol.escalations},
           {"scale_factor", sol.scale_factor},
           {"min_distance", sol.min_distance}};
    return j;
}

Json trace_json(const SprSolution& sol, const SprConfig& cfg, const LabeledGraph& lg) {
    Json records = Json::array();
    for (const TraceRecord& r : sol.trace)
        records.push_back(Json{{"vertex", lg.label_of(r.v)},
                               {"iteration", r.iteration},
                               {"terminal", lg.label_of(r.terminal)},
                               {"level", r.level}});
    return Json{{"schema", kReportSchema},
                {"config", config_json(cfg)},
                {"zeta", sol.zeta},
                {"records", records}};
}

Json branch_sets_json(const SprMinor& m, const LabeledGraph& lg) {
    Json sets = Json::object();
    for (size_t i = 0; i < m.branch_sets.size(); ++i) {
        Json members = Json::array();
        for (Vertex v : m.branch_sets[i]) members.push_back(lg.label_of(v));
        sets[lg.label_of(m.terminal_of[i])] = std::move(members);
    }
    return Json{{"schema", kReportSchema}, {"branch_sets", sets}};
}

LabeledGraph minor_as_labeled(const SprMinor& m, const LabeledGraph& host) {
    const int k = m.graph.vertex_count();
    std::vector<Vertex> all(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) all[static_cast<size_t>(i)] = i;
    LabeledGraph lg;
    lg.graph = m.graph;
    lg.terminals = TerminalSet(lg.graph, all);
    lg.labels.reserve(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        lg.labels.push_back(host.label_of(m.terminal_of[static_cast<size_t>(i)]));
        lg.index.emplace(lg.labels.back(), i);
    }
    return lg;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace spr
