#include "isacreq/service.hpp"

// Eigen first: httplib pulls in <resolv.h>, whose _res macro breaks Eigen.
#include "isacreq/commands.hpp"

#include <httplib.h>

namespace isacreq {

namespace {

using nlohmann::json;

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(dump_json(body), "application/json");
}

json error_body(const std::exception& e) {
  json j = {{"error", e.what()}};
  if (const auto* se = dynamic_cast<const ScenarioError*>(&e)) {
    json diags = json::array();
    for (const auto& d : se->diagnostics()) {
      diags.push_back({{"kind", to_string(d.kind)}, {"line", d.line}, {"column", d.column}, {"message", d.message}});
    }
    j["diagnostics"] = diags;
  }
  return j;
}

ScenarioConfig request_scenario(const json& body) {
  if (body.contains("scenario_text")) {
    if (!body["scenario_text"].is_string()) throw ConfigError("scenario_text must be a string");
    return parse_scenario_or_throw(body["scenario_text"].get<std::string>());
  }
  if (body.contains("scenario")) return scenario_from_json(body["scenario"]);
  return ScenarioConfig{};
}

std::string string_field(const json& body, const char* key, const std::string& fallback) {
  if (!body.contains(key)) return fallback;
  if (!body[key].is_string()) throw ConfigError(std::string(key) + " must be a string");
  return body[key].get<std::string>();
}

double number_field(const json& body, const char* key) {
  if (!body.contains(key) || !body[key].is_number()) throw ConfigError(std::string(key) + " must be a number");
  return body[key].get<double>();
}

template <class Handler>
httplib::Server::Handler json_route(Handler h) {
  return [h](const httplib::Request& req, httplib::Response& res) {
    json body;
    try {
      body = req.body.empty() ? json::object() : json::parse(req.body);
      if (!body.is_object()) throw ConfigError("request body must be a JSON object");
    } catch (const json::exception& e) {
      send(res, 400, {{"error", std::string("malformed JSON: ") + e.what()}});
      return;
    } catch (const std::exception& e) {
      send(res, 400, error_body(e));
      return;
    }
    try {
      send(res, 200, h(body));
    } catch (const std::exception& e) {
      send(res, 400, error_body(e));
    }
  };
}

}  // namespace

void register_routes(httplib::Server& server) {
  server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) { send(res, 200, {{"status", "ok"}}); });
  server.Get("/use-cases",
             [](const httplib::Request&, httplib::Response& res) { send(res, 200, use_cases_json()); });

  server.Post("/evaluate", json_route([](const json& body) {
                const auto s = request_scenario(body);
                const auto ids = parse_use_case_selection(string_field(body, "use_case", "all"));
                return evaluation_json(evaluate_selection(s, ids));
              }));

  server.Post("/heatmap", json_route([](const json& body) {
                const auto s = request_scenario(body);
                const auto metric = parse_heatmap_metric(string_field(body, "metric", "peb"));
                const auto uc = parse_use_case_id(string_field(body, "use_case", "L1"));
                return heatmap_json(scenario_heatmap(s, metric, uc));
              }));

  server.Post("/sweep", json_route([](const json& body) {
                const auto s = request_scenario(body);
                SweepRequest req;
                req.param = string_field(body, "param", "");
                req.from = number_field(body, "from");
                req.to = number_field(body, "to");
                if (body.contains("points")) {
                  if (!body["points"].is_number_integer()) throw ConfigError("points must be an integer");
                  req.points = body["points"].get<int>();
                }
                if (body.contains("log")) {
                  if (!body["log"].is_boolean()) throw ConfigError("log must be a boolean");
                  req.log_spacing = body["log"].get<bool>();
                }
                req.target = parse_sweep_target(string_field(body, "target", "rate"));
                req.use_case = parse_use_case_id(
                    string_field(body, "use_case", req.target == SweepTarget::kPebPower ? "L1" : "C2"));
                const auto rows = run_sweep(s, req);
                json jr = json::array();
                for (const auto& r : rows) {
                  jr.push_back({{"param", r.param}, {"value", r.value}, {"required", number_json(r.required)},
                                {"feasible", r.feasible}});
                }
                return json{{"rows", jr}, {"csv", sweep_csv(req, rows)}};
              }));
}

}  // namespace isacreq
