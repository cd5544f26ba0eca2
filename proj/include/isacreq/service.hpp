#pragma once

// Stateless JSON-over-HTTP front end. Every request carries its scenario as
// {"scenario": {...}} (JSON form) or {"scenario_text": "..."} (file form).
//
//   GET  /use-cases   KPI registry
//   POST /evaluate    {scenario, use_case: id | "all"} -> report JSON
//   POST /heatmap     {scenario, metric, use_case?}    -> grid JSON
//   POST /sweep       {scenario, param, from, to, points, target, use_case?, log?}
//   GET  /healthz

namespace httplib {
class Server;
}

namespace isacreq {

void register_routes(httplib::Server& server);

}  // namespace isacreq
