#ifndef SPR_REPORTS_HPP
#define SPR_REPORTS_HPP

#include <string>

#include <json.hpp>

#include "spr/clustering.hpp"
#include "spr/harness.hpp"
#include "spr/io.hpp"
#include "spr/scattering.hpp"
#include "spr/spr.hpp"

namespace spr {

// Object keys serialize sorted and doubles in shortest round-trip form, so
// identical runs dump byte-identical payloads.
using Json = nlohmann::json;

inline constexpr int kReportSchema = 1;

// Distortion ceiling audited by every report: the explicit composition of
// the assignment-radius and detour bounds,
//   g     = tau * (tau + 2)
//   A     = 24 zeta^4 tau (tau + 3) beta g  +  4 zeta^2 (tau + 2) beta
//   bound = 2 A + 1 + 48 zeta^4 tau (tau + 3) beta
// instantiated with the run's measured tau and beta, floored at 1.
double audit_bound(double zeta, double tau, double beta);

struct InstanceInfo {
    std::string name;    // generator spec string or input path
    std::string source;  // "generator" or "file"
    int n = 0;
    int m = 0;
    int k = 0;
};

InstanceInfo describe_instance(const LabeledGraph& lg, std::string name, std::string source);

Json instance_json(const InstanceInfo& info);
Json config_json(const SprConfig& cfg);

// {delta, max_strong_diameter, worst_hop, realized_kappa, pairs_checked,
//  violations:[...]}; max_strong_diameter is null when some cluster is
// internally disconnected.
Json shortcut_report_json(const ShortcutReport& r);

// {delta, beta_emp, tau_emp, pairs_checked, exhaustive, violations:
//  [{u,v,reason}]}.
Json scatter_report_json(const ScatterReport& r);

// {instance:{...}, config:{...}, alpha, mean_ratio, pairs:[{t1,t2,dg,dm,
//  ratio}], iterations:[{i, delta, tau_emp, beta_emp, clusters, ...}],
//  audit_bound, flags:[...]} plus the run's headline numbers. Pair
// endpoints are labels.
Json distortion_report_json(const InstanceInfo& info, const SprConfig& cfg,
                            const SprSolution& sol, const DistortionSummary& d,
                            const LabeledGraph& lg);

// Assignment history: every vertex with the iteration, level, and terminal
// that claimed it, plus the config echo.
Json trace_json(const SprSolution& sol, const SprConfig& cfg, const LabeledGraph& lg);

// terminal label -> sorted list of member labels.
Json branch_sets_json(const SprMinor& m, const LabeledGraph& lg);

// The minor as a graph document of its own: vertices are the host's
// terminal labels and every vertex is a terminal.
LabeledGraph minor_as_labeled(const SprMinor& m, const LabeledGraph& host);

// dump(2) with a trailing newline; the single serialization everything uses.
std::string dump_json(const Json& j);

}  // namespace spr

#endif  // SPR_REPORTS_HPP
