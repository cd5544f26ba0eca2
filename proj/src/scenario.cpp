#include "isacreq/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace isacreq {

namespace {

enum class ValueKind { kNumber, kInteger, kBool, kText };

struct Value {
  double number = 0.0;
  long integer = 0;
  bool boolean = false;
  std::string text;
};

template <class T>
struct Field {
  std::string key;
  ValueKind kind;
  std::function<void(T&, const Value&)> set;
  std::function<std::optional<Value>(const T&)> get;
};

Value num(double v) { return Value{v, 0, false, {}}; }
Value integer(long v) { return Value{0.0, v, false, {}}; }
Value boolean(bool v) { return Value{0.0, 0, v, {}}; }
Value text(std::string v) { return Value{0.0, 0, false, std::move(v)}; }

template <class T>
Field<T> number_field(std::string key, std::function<double&(T&)> ref, double scale = 1.0) {
  return {key, ValueKind::kNumber, [ref, scale](T& t, const Value& v) { ref(t) = v.number * scale; },
          [ref, scale](const T& t) -> std::optional<Value> {
            return num(ref(const_cast<T&>(t)) / scale);
          }};
}

template <class T>
Field<T> optional_field(std::string key, std::function<std::optional<double>&(T&)> ref, double scale = 1.0) {
  return {key, ValueKind::kNumber, [ref, scale](T& t, const Value& v) { ref(t) = v.number * scale; },
          [ref, scale](const T& t) -> std::optional<Value> {
            const auto& o = ref(const_cast<T&>(t));
            if (!o) return std::nullopt;
            return num(*o / scale);
          }};
}

template <class T>
Field<T> int_field(std::string key, std::function<int&(T&)> ref) {
  return {key, ValueKind::kInteger,
          [ref](T& t, const Value& v) {
            if (v.integer > 1000000 || v.integer < -1000000) throw DomainError("count out of range");
            ref(t) = static_cast<int>(v.integer);
          },
          [ref](const T& t) -> std::optional<Value> { return integer(ref(const_cast<T&>(t))); }};
}

template <class T>
Field<T> bool_field(std::string key, std::function<bool&(T&)> ref) {
  return {key, ValueKind::kBool, [ref](T& t, const Value& v) { ref(t) = v.boolean; },
          [ref](const T& t) -> std::optional<Value> { return boolean(ref(const_cast<T&>(t))); }};
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join_list(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

const std::set<std::string> kShapingDomains{"freq", "time", "space"};

const std::vector<Field<ScenarioConfig>>& signal_fields() {
  using S = ScenarioConfig;
  static const std::vector<Field<S>> f = {
      number_field<S>("bandwidth_hz", [](S& s) -> double& { return s.signal.bandwidth_hz; }),
      number_field<S>("channel_bandwidth_hz", [](S& s) -> double& { return s.signal.channel_bandwidth_hz; }),
      {"waveform_tag", ValueKind::kText,
       [](S& s, const Value& v) {
         if (v.text.empty()) throw DomainError("waveform tag must not be empty");
         s.signal.waveform = v.text;
       },
       [](const S& s) -> std::optional<Value> { return text(s.signal.waveform); }},
      bool_field<S>("coherent_flag", [](S& s) -> bool& { return s.signal.coherent; }),
      {"shaping_tag", ValueKind::kText,
       [](S& s, const Value& v) {
         auto items = split_list(v.text);
         if (items.size() == 1 && items[0] == "none") items.clear();
         for (const auto& i : items) {
           if (!kShapingDomains.count(i)) throw DomainError("shaping domain '" + i + "' is not freq, time or space");
         }
         s.signal.shaping = items;
       },
       [](const S& s) -> std::optional<Value> {
         return text(s.signal.shaping.empty() ? "none" : join_list(s.signal.shaping));
       }},
      int_field<S>("subcarriers_count", [](S& s) -> int& { return s.signal.numerology.subcarriers; }),
      number_field<S>("cp_overhead_frac", [](S& s) -> double& { return s.signal.numerology.cp_overhead; }),
      int_field<S>("symbols_per_slot_count", [](S& s) -> int& { return s.signal.numerology.symbols_per_slot; }),
      number_field<S>("pilot_time_frac", [](S& s) -> double& { return s.signal.pilot_time_fraction; }),
      number_field<S>("se_cap_bpshz", [](S& s) -> double& { return s.signal.rate.se_cap_bps_per_hz; }),
      int_field<S>("streams_count", [](S& s) -> int& { return s.signal.rate.streams; }),
      number_field<S>("dwell_frac", [](S& s) -> double& { return s.signal.dwell_fraction; }),
      number_field<S>("detection_threshold_db", [](S& s) -> double& { return s.signal.detection_threshold_db; }),
  };
  return f;
}

template <class T>
void array_fields(std::vector<Field<T>>& f, const std::string& prefix, std::function<ArrayConfig&(T&)> arr) {
  auto key = [&](const char* k) { return prefix + k; };
  f.push_back(int_field<T>(key("elements_count"), [arr](T& t) -> int& { return arr(t).elements_per_dim; }));
  f.push_back(int_field<T>(key("dims_count"), [arr](T& t) -> int& { return arr(t).dims; }));
  f.push_back(number_field<T>(key("element_gain_dbi"), [arr](T& t) -> double& { return arr(t).element_gain_dbi; }));
  f.push_back(number_field<T>(key("spacing_wl"), [arr](T& t) -> double& { return arr(t).spacing_wl; }));
}

const std::vector<Field<ScenarioConfig>>& hardware_fields() {
  using S = ScenarioConfig;
  static const std::vector<Field<S>> f = [] {
    std::vector<Field<S>> v = {
        number_field<S>("carrier_hz", [](S& s) -> double& { return s.hardware.carrier_hz; }),
        bool_field<S>("channelized_flag", [](S& s) -> bool& { return s.hardware.channelized; }),
        bool_field<S>("phase_coherent_flag", [](S& s) -> bool& { return s.hardware.phase_coherent; }),
    };
    array_fields<S>(v, "in_", [](S& s) -> ArrayConfig& { return s.hardware.in_array; });
    array_fields<S>(v, "ue_", [](S& s) -> ArrayConfig& { return s.hardware.ue_array; });
    v.push_back(number_field<S>("in_ptx_dbm", [](S& s) -> double& { return s.hardware.in_ptx_dbm; }));
    v.push_back(number_field<S>("ue_ptx_dbm", [](S& s) -> double& { return s.hardware.ue_ptx_dbm; }));
    v.push_back(number_field<S>("in_noise_figure_db", [](S& s) -> double& { return s.hardware.in_noise.noise_figure_db; }));
    v.push_back(number_field<S>("ue_noise_figure_db", [](S& s) -> double& { return s.hardware.ue_noise.noise_figure_db; }));
    v.push_back(number_field<S>("impl_loss_db", [](S& s) -> double& { return s.hardware.impl_loss_db; }));
    v.push_back(number_field<S>("pathloss_exponent_x", [](S& s) -> double& { return s.hardware.pathloss_exponent; }));
    v.push_back(number_field<S>("reference_distance_m", [](S& s) -> double& { return s.hardware.reference_distance_m; }));
    v.push_back(bool_field<S>("full_duplex_flag", [](S& s) -> bool& { return s.hardware.full_duplex; }));
    v.push_back({"sensing_tx_tag", ValueKind::kText,
                 [](S& s, const Value& x) { s.hardware.sensing_tx = parse_array_role(x.text); },
                 [](const S& s) -> std::optional<Value> { return text(to_string(s.hardware.sensing_tx)); }});
    v.push_back({"sensing_rx_tag", ValueKind::kText,
                 [](S& s, const Value& x) { s.hardware.sensing_rx = parse_array_role(x.text); },
                 [](const S& s) -> std::optional<Value> { return text(to_string(s.hardware.sensing_rx)); }});
    return v;
  }();
  return f;
}

const std::vector<Field<ScenarioConfig>>& deployment_fields() {
  using S = ScenarioConfig;
  const double deg = kPi / 180.0;
  static const std::vector<Field<S>> f = {
      int_field<S>("dims_count", [](S& s) -> int& { return s.deployment.dims; }),
      number_field<S>("ue_x_m", [](S& s) -> double& { return s.deployment.ue_position.x(); }),
      number_field<S>("ue_y_m", [](S& s) -> double& { return s.deployment.ue_position.y(); }),
      number_field<S>("ue_z_m", [](S& s) -> double& { return s.deployment.ue_position.z(); }),
      {"measurements_tag", ValueKind::kText,
       [](S& s, const Value& v) {
         std::vector<MeasurementType> types;
         for (const auto& i : split_list(v.text)) {
           const auto t = parse_measurement_type(i);
           if (std::find(types.begin(), types.end(), t) == types.end()) types.push_back(t);
         }
         if (types.empty()) throw DomainError("measurement mix is empty");
         s.deployment.mix.types = types;
       },
       [](const S& s) -> std::optional<Value> {
         std::vector<std::string> names;
         for (auto t : s.deployment.mix.types) names.emplace_back(to_string(t));
         return text(join_list(names));
       }},
      optional_field<S>("toa_sigma_s", [](S& s) -> std::optional<double>& { return s.deployment.mix.toa_sigma_s; }),
      optional_field<S>("tdoa_sigma_s", [](S& s) -> std::optional<double>& { return s.deployment.mix.tdoa_sigma_s; }),
      optional_field<S>("rtt_sigma_s", [](S& s) -> std::optional<double>& { return s.deployment.mix.rtt_sigma_s; }),
      optional_field<S>("aoa_sigma_deg", [](S& s) -> std::optional<double>& { return s.deployment.mix.aoa_sigma_rad; }, deg),
      int_field<S>("dmimo_count", [](S& s) -> int& { return s.deployment.dmimo_count; }),
      bool_field<S>("tx_rx_los_flag", [](S& s) -> bool& { return s.deployment.tx_rx_los; }),
      number_field<S>("rcs_m2", [](S& s) -> double& { return s.deployment.rcs_m2; }),
      number_field<S>("bistatic_tx_distance_m", [](S& s) -> double& { return s.deployment.bistatic_tx_distance_m; }),
      number_field<S>("region_min_x_m", [](S& s) -> double& { return s.deployment.region.min_x; }),
      number_field<S>("region_min_y_m", [](S& s) -> double& { return s.deployment.region.min_y; }),
      number_field<S>("region_max_x_m", [](S& s) -> double& { return s.deployment.region.max_x; }),
      number_field<S>("region_max_y_m", [](S& s) -> double& { return s.deployment.region.max_y; }),
      number_field<S>("region_resolution_m", [](S& s) -> double& { return s.deployment.region.resolution_m; }),
      number_field<S>("region_height_m", [](S& s) -> double& { return s.deployment.region.height_m; }),
  };
  return f;
}

const std::vector<Field<ScenarioConfig>>& override_fields() {
  using S = ScenarioConfig;
  static const std::vector<Field<S>> f = {
      number_field<S>("alpha_range_x", [](S& s) -> double& { return s.overrides.alpha_range; }),
      number_field<S>("alpha_angle_x", [](S& s) -> double& { return s.overrides.alpha_angle; }),
      number_field<S>("latency_share_frac", [](S& s) -> double& { return s.overrides.latency_share; }),
      number_field<S>("link_distance_m", [](S& s) -> double& { return s.overrides.link_distance_m; }),
      number_field<S>("operating_distance_m", [](S& s) -> double& { return s.overrides.operating_distance_m; }),
  };
  return f;
}

// Node under construction; array keys left unset inherit the IN array.
struct NodeDraft {
  InfrastructureNode node;
  std::set<std::string> array_keys;
  int line = 0;
  bool damaged = false;
};

const std::vector<Field<NodeDraft>>& node_fields() {
  using N = NodeDraft;
  const double deg = kPi / 180.0;
  static const std::vector<Field<N>> f = [deg] {
    std::vector<Field<N>> v = {
        {"kind_tag", ValueKind::kText,
         [](N& n, const Value& x) {
           if (x.text == "bs") n.node.kind = NodeKind::kBs;
           else if (x.text == "ris") n.node.kind = NodeKind::kRis;
           else throw DomainError("node kind must be bs or ris");
         },
         [](const N& n) -> std::optional<Value> { return text(to_string(n.node.kind)); }},
        number_field<N>("x_m", [](N& n) -> double& { return n.node.position.x(); }),
        number_field<N>("y_m", [](N& n) -> double& { return n.node.position.y(); }),
        number_field<N>("z_m", [](N& n) -> double& { return n.node.position.z(); }),
        number_field<N>("yaw_deg", [](N& n) -> double& { return n.node.orientation_rad.x(); }, deg),
        number_field<N>("pitch_deg", [](N& n) -> double& { return n.node.orientation_rad.y(); }, deg),
        number_field<N>("roll_deg", [](N& n) -> double& { return n.node.orientation_rad.z(); }, deg),
    };
    array_fields<N>(v, "", [](N& n) -> ArrayConfig& { return n.node.array; });
    v.push_back(number_field<N>("sync_error_s", [](N& n) -> double& { return n.node.sync_error_s; }));
    v.push_back(number_field<N>("position_error_m", [](N& n) -> double& { return n.node.position_error_m; }));
    v.push_back(number_field<N>("orientation_error_deg", [](N& n) -> double& { return n.node.orientation_error_rad; }, deg));
    return v;
  }();
  return f;
}

bool is_array_key(const std::string& k) {
  return k == "elements_count" || k == "dims_count" || k == "element_gain_dbi" || k == "spacing_wl";
}

constexpr const char* kUnitSuffixes[] = {"_bpshz", "_count", "_flag", "_frac", "_dbm", "_dbi", "_mps", "_tag",
                                         "_hz",    "_db",    "_m2",   "_deg",  "_wl",  "_m",   "_s",   "_x"};

bool has_unit_suffix(std::string_view key) {
  return std::any_of(std::begin(kUnitSuffixes), std::end(kUnitSuffixes),
                     [&](const char* s) { return key.ends_with(s) && key.size() > std::string_view(s).size(); });
}

template <class T>
const Field<T>* find_field(const std::vector<Field<T>>& fields, std::string_view key) {
  for (const auto& f : fields) {
    if (key == f.key) return &f;
  }
  return nullptr;
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) return std::nullopt;
  return v;
}

std::optional<long> parse_long(std::string_view s) {
  long v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) return std::nullopt;
  return v;
}

// Empty string on success, else the reason the token is malformed.
std::string parse_value(ValueKind kind, std::string_view raw, Value& out) {
  switch (kind) {
    case ValueKind::kNumber: {
      auto v = parse_double(raw);
      if (!v || std::isnan(*v)) return "expected a number";
      out = num(*v);
      return {};
    }
    case ValueKind::kInteger: {
      auto v = parse_long(raw);
      if (!v) return "expected an integer";
      out = integer(*v);
      return {};
    }
    case ValueKind::kBool:
      if (raw == "true" || raw == "yes" || raw == "1") out = boolean(true);
      else if (raw == "false" || raw == "no" || raw == "0") out = boolean(false);
      else return "expected true or false";
      return {};
    case ValueKind::kText:
      out = text(std::string(raw));
      return {};
  }
  return "unsupported value";
}

std::string trim(std::string_view s, std::size_t& offset) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    offset = s.size();
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  offset = b;
  return std::string(s.substr(b, e - b + 1));
}

// Checks every invariant except those of nodes and obstacles.
void validate_scalars(const ScenarioConfig& s) {
  ScenarioConfig copy = s;
  copy.deployment.nodes.clear();
  copy.deployment.obstacles.clear();
  copy.validate();
}

template <class T>
bool apply(const Field<T>& f, T& target, const Value& v, std::string& error) {
  try {
    f.set(target, v);
    return true;
  } catch (const std::exception& e) {
    error = e.what();
    return false;
  }
}

struct Parser {
  ScenarioConfig cfg;
  std::vector<NodeDraft> nodes;
  struct ObstacleDraft {
    Obstacle obstacle;
    int line = 0;
    bool damaged = false;
  };
  std::vector<ObstacleDraft> obstacles;
  std::vector<Diagnostic> diags;
  // Draft receiving the current lines; a damaged draft skips its invariant check.
  bool* open_draft = nullptr;

  void error(DiagnosticKind k, int line, int col, std::string msg) {
    diags.push_back({k, line, col, std::move(msg)});
    if (open_draft) *open_draft = true;
  }
};

const std::vector<Field<ScenarioConfig>>* scalar_section(const std::string& name) {
  if (name == "signal") return &signal_fields();
  if (name == "hardware") return &hardware_fields();
  if (name == "deployment") return &deployment_fields();
  if (name == "overrides") return &override_fields();
  return nullptr;
}

void finish(Parser& p, int last_line) {
  p.open_draft = nullptr;
  for (auto& n : p.nodes) {
    const ArrayConfig& in = p.cfg.hardware.in_array;
    if (!n.array_keys.count("elements_count")) n.node.array.elements_per_dim = in.elements_per_dim;
    if (!n.array_keys.count("dims_count")) n.node.array.dims = in.dims;
    if (!n.array_keys.count("element_gain_dbi")) n.node.array.element_gain_dbi = in.element_gain_dbi;
    if (!n.array_keys.count("spacing_wl")) n.node.array.spacing_wl = in.spacing_wl;
    if (n.damaged) continue;
    try {
      n.node.validate();
      p.cfg.deployment.nodes.push_back(n.node);
    } catch (const std::exception& e) {
      p.error(DiagnosticKind::kInvariant, n.line, 1, std::string("node: ") + e.what());
    }
  }
  for (auto& o : p.obstacles) {
    if (o.damaged) continue;
    try {
      o.obstacle.validate();
      p.cfg.deployment.obstacles.push_back(o.obstacle);
    } catch (const std::exception& e) {
      p.error(DiagnosticKind::kInvariant, o.line, 1, std::string("obstacle: ") + e.what());
    }
  }
  if (p.diags.empty()) {
    try {
      p.cfg.validate();
    } catch (const std::exception& e) {
      p.error(DiagnosticKind::kInvariant, std::max(last_line, 1), 1, e.what());
    }
  }
}

}  // namespace

const char* to_string(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::kSyntax: return "syntax error";
    case DiagnosticKind::kUnknownKey: return "unknown key";
    case DiagnosticKind::kMissingUnit: return "missing unit";
    case DiagnosticKind::kInvariant: return "invariant violation";
  }
  return "error";
}

std::string format_diagnostic(const Diagnostic& d) {
  return std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + to_string(d.kind) + ": " + d.message;
}

ScenarioError::ScenarioError(std::vector<Diagnostic> diagnostics)
    : ConfigError([&] {
        std::string msg;
        for (const auto& d : diagnostics) msg += (msg.empty() ? "" : "\n") + format_diagnostic(d);
        return msg;
      }()),
      diagnostics_(std::move(diagnostics)) {}

ParseResult parse_scenario(std::string_view input) {
  Parser p;
  std::string section;
  std::set<std::string> seen_sections;
  std::set<std::string> seen_keys;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= input.size()) {
    const auto nl = input.find('\n', pos);
    std::string_view line = input.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? input.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t off = 0;
    const std::string body = trim(line, off);
    if (body.empty()) continue;
    const int col0 = static_cast<int>(off) + 1;

    if (body.front() == '[') {
      if (body.back() != ']') {
        p.open_draft = nullptr;
        p.error(DiagnosticKind::kSyntax, line_no, col0, "section header must end with ']'");
        section.clear();
        continue;
      }
      std::size_t noff = 0;
      const std::string name = trim(std::string_view(body).substr(1, body.size() - 2), noff);
      section = name;
      seen_keys.clear();
      p.open_draft = nullptr;
      if (name == "nodes") {
        NodeDraft d;
        d.line = line_no;
        p.nodes.push_back(d);
        p.open_draft = &p.nodes.back().damaged;
      } else if (name == "obstacles") {
        p.obstacles.push_back({{}, line_no, false});
        p.open_draft = &p.obstacles.back().damaged;
      } else if (scalar_section(name)) {
        if (!seen_sections.insert(name).second) {
          p.error(DiagnosticKind::kSyntax, line_no, col0, "duplicate section [" + name + "]");
        }
      } else {
        p.error(DiagnosticKind::kSyntax, line_no, col0, "unknown section [" + name + "]");
        section = "?";
      }
      continue;
    }

    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      p.error(DiagnosticKind::kSyntax, line_no, col0, "expected 'key = value'");
      continue;
    }
    std::size_t koff = 0, voff = 0;
    const std::string key = trim(std::string_view(body).substr(0, eq), koff);
    const std::string raw = trim(std::string_view(body).substr(eq + 1), voff);
    const int key_col = col0 + static_cast<int>(koff);
    const int val_col = col0 + static_cast<int>(eq + 1 + voff);
    if (key.empty()) {
      p.error(DiagnosticKind::kSyntax, line_no, col0, "missing key before '='");
      continue;
    }
    if (raw.empty()) {
      p.error(DiagnosticKind::kSyntax, line_no, val_col, "missing value for '" + key + "'");
      continue;
    }
    if (section.empty()) {
      p.error(DiagnosticKind::kSyntax, line_no, key_col, "key '" + key + "' outside of a section");
      continue;
    }
    if (section == "?") continue;  // already reported at the header

    auto unknown = [&] {
      if (has_unit_suffix(key)) {
        p.error(DiagnosticKind::kUnknownKey, line_no, key_col, "unknown key '" + key + "' in [" + section + "]");
      } else {
        p.error(DiagnosticKind::kMissingUnit, line_no, key_col,
                "key '" + key + "' has no unit suffix (e.g. _hz, _dbm, _m, _deg, _s)");
      }
    };

    if (section == "obstacles") {
      if (key != "vertex_m") {
        unknown();
        continue;
      }
      std::string pair = raw;
      std::replace(pair.begin(), pair.end(), ',', ' ');
      std::istringstream is(pair);
      std::string xs, ys, extra;
      is >> xs >> ys >> extra;
      const auto x = parse_double(xs);
      const auto y = parse_double(ys);
      if (!x || !y || !extra.empty() || !std::isfinite(*x) || !std::isfinite(*y)) {
        p.error(DiagnosticKind::kSyntax, line_no, val_col, "vertex_m expects two finite numbers 'x y'");
        continue;
      }
      p.obstacles.back().obstacle.vertices.emplace_back(*x, *y);
      continue;
    }

    if (!seen_keys.insert(key).second) {
      p.error(DiagnosticKind::kSyntax, line_no, key_col, "duplicate key '" + key + "'");
      continue;
    }

    if (section == "nodes") {
      const auto* f = find_field(node_fields(), key);
      if (!f) {
        unknown();
        continue;
      }
      Value v;
      if (auto why = parse_value(f->kind, raw, v); !why.empty()) {
        p.error(DiagnosticKind::kSyntax, line_no, val_col, key + ": " + why);
        continue;
      }
      NodeDraft& n = p.nodes.back();
      const NodeDraft before = n;
      std::string err;
      if (apply(*f, n, v, err)) {
        try {
          n.node.validate();
        } catch (const std::exception& e) {
          err = e.what();
        }
      }
      if (!err.empty()) {
        n = before;
        p.error(DiagnosticKind::kInvariant, line_no, val_col, key + ": " + err);
        continue;
      }
      if (is_array_key(key)) n.array_keys.insert(key);
      continue;
    }

    const auto* f = find_field(*scalar_section(section), key);
    if (!f) {
      unknown();
      continue;
    }
    Value v;
    if (auto why = parse_value(f->kind, raw, v); !why.empty()) {
      p.error(DiagnosticKind::kSyntax, line_no, val_col, key + ": " + why);
      continue;
    }
    const ScenarioConfig before = p.cfg;
    std::string err;
    if (apply(*f, p.cfg, v, err)) {
      try {
        validate_scalars(p.cfg);
      } catch (const std::exception& e) {
        err = e.what();
      }
    }
    if (!err.empty()) {
      p.cfg = before;
      p.error(DiagnosticKind::kInvariant, line_no, val_col, key + ": " + err);
    }
  }
  finish(p, line_no);

  ParseResult r;
  r.diagnostics = std::move(p.diags);
  if (r.diagnostics.empty()) r.scenario = std::move(p.cfg);
  return r;
}

ScenarioConfig parse_scenario_or_throw(std::string_view text) {
  auto r = parse_scenario(text);
  if (!r.ok()) throw ScenarioError(std::move(r.diagnostics));
  return std::move(*r.scenario);
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read scenario file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_scenario_or_throw(os.str());
}

namespace {

std::string value_text(ValueKind kind, const Value& v) {
  switch (kind) {
    case ValueKind::kNumber: return format_number(v.number);
    case ValueKind::kInteger: return std::to_string(v.integer);
    case ValueKind::kBool: return v.boolean ? "true" : "false";
    case ValueKind::kText: return v.text;
  }
  return {};
}

nlohmann::json value_json(ValueKind kind, const Value& v) {
  switch (kind) {
    case ValueKind::kNumber:
      if (!std::isfinite(v.number)) return format_number(v.number);
      return v.number;
    case ValueKind::kInteger: return v.integer;
    case ValueKind::kBool: return v.boolean;
    case ValueKind::kText: return v.text;
  }
  return nullptr;
}

template <class T>
void write_fields(std::ostream& os, const std::vector<Field<T>>& fields, const T& t) {
  for (const auto& f : fields) {
    if (auto v = f.get(t)) os << f.key << " = " << value_text(f.kind, *v) << '\n';
  }
}

template <class T>
nlohmann::json json_fields(const std::vector<Field<T>>& fields, const T& t) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& f : fields) {
    if (auto v = f.get(t)) j[f.key] = value_json(f.kind, *v);
  }
  return j;
}

}  // namespace

std::string write_scenario_text(const ScenarioConfig& s) {
  std::ostringstream os;
  os << "[signal]\n";
  write_fields(os, signal_fields(), s);
  os << "\n[hardware]\n";
  write_fields(os, hardware_fields(), s);
  os << "\n[deployment]\n";
  write_fields(os, deployment_fields(), s);
  os << "\n[overrides]\n";
  write_fields(os, override_fields(), s);
  for (const auto& n : s.deployment.nodes) {
    NodeDraft d;
    d.node = n;
    os << "\n[nodes]\n";
    write_fields(os, node_fields(), d);
  }
  for (const auto& o : s.deployment.obstacles) {
    os << "\n[obstacles]\n";
    for (const auto& v : o.vertices) os << "vertex_m = " << format_number(v.x()) << ' ' << format_number(v.y()) << '\n';
  }
  return os.str();
}

nlohmann::json scenario_to_json(const ScenarioConfig& s) {
  nlohmann::json j;
  j["signal"] = json_fields(signal_fields(), s);
  j["hardware"] = json_fields(hardware_fields(), s);
  j["deployment"] = json_fields(deployment_fields(), s);
  j["overrides"] = json_fields(override_fields(), s);
  j["nodes"] = nlohmann::json::array();
  for (const auto& n : s.deployment.nodes) {
    NodeDraft d;
    d.node = n;
    j["nodes"].push_back(json_fields(node_fields(), d));
  }
  j["obstacles"] = nlohmann::json::array();
  for (const auto& o : s.deployment.obstacles) {
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : o.vertices) verts.push_back({v.x(), v.y()});
    j["obstacles"].push_back({{"vertices_m", verts}});
  }
  return j;
}

namespace {

// JSON scalars are rendered to the text syntax so both front ends share one
// parser and one set of diagnostics.
std::string json_scalar_text(const nlohmann::json& v, bool& ok) {
  ok = true;
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  if (v.is_number()) return format_number(v.get<double>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of("\n#[") != std::string::npos) ok = false;
    return s;
  }
  ok = false;
  return {};
}

}  // namespace

ScenarioConfig scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ScenarioError({{DiagnosticKind::kSyntax, 0, 0, "scenario must be a JSON object"}});
  std::vector<Diagnostic> diags;
  std::ostringstream os;
  auto emit_object = [&](const std::string& path, const nlohmann::json& obj) {
    if (!obj.is_object()) {
      diags.push_back({DiagnosticKind::kSyntax, 0, 0, path + ": expected an object"});
      return;
    }
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      const std::string v = json_scalar_text(it.value(), ok);
      if (!ok || it.key().find_first_of("=\n#[") != std::string::npos) {
        diags.push_back({DiagnosticKind::kSyntax, 0, 0, path + "." + it.key() + ": expected a scalar value"});
        continue;
      }
      os << it.key() << " = " << v << '\n';
    }
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& sec = it.key();
    if (scalar_section(sec)) {
      os << '[' << sec << "]\n";
      emit_object(sec, it.value());
    } else if (sec == "nodes" || sec == "obstacles") {
      if (!it.value().is_array()) {
        diags.push_back({DiagnosticKind::kSyntax, 0, 0, sec + ": expected an array"});
        continue;
      }
      for (std::size_t i = 0; i < it.value().size(); ++i) {
        const auto& item = it.value()[i];
        const std::string path = sec + "[" + std::to_string(i) + "]";
        os << '[' << sec << "]\n";
        if (sec == "nodes") {
          emit_object(path, item);
          continue;
        }
        if (!item.is_object() || item.size() != 1 || !item.contains("vertices_m") || !item["vertices_m"].is_array()) {
          diags.push_back({DiagnosticKind::kSyntax, 0, 0, path + ": expected {\"vertices_m\": [[x, y], ...]}"});
          continue;
        }
        for (const auto& v : item["vertices_m"]) {
          if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
            diags.push_back({DiagnosticKind::kSyntax, 0, 0, path + ".vertices_m: expected [x, y] pairs"});
            continue;
          }
          os << "vertex_m = " << format_number(v[0].get<double>()) << ' ' << format_number(v[1].get<double>()) << '\n';
        }
      }
    } else {
      diags.push_back({DiagnosticKind::kUnknownKey, 0, 0, "unknown section '" + sec + "'"});
    }
  }
  if (!diags.empty()) throw ScenarioError(std::move(diags));
  auto r = parse_scenario(os.str());
  if (!r.ok()) {
    // Line numbers refer to the internal rendering; keep only the messages.
    for (auto& d : r.diagnostics) d.line = d.column = 0;
    throw ScenarioError(std::move(r.diagnostics));
  }
  return std::move(*r.scenario);
}

}  // namespace isacreq
