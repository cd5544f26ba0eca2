#include "isacreq/deployment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "isacreq/sensebounds.hpp"

namespace isacreq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGeomEps = 1e-12;

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    const double v = cross(q - p, r - p);
    return (v > kGeomEps) - (v < -kGeomEps);
  };
  auto on_segment = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    return std::min(p.x(), q.x()) - kGeomEps <= r.x() && r.x() <= std::max(p.x(), q.x()) + kGeomEps &&
           std::min(p.y(), q.y()) - kGeomEps <= r.y() && r.y() <= std::max(p.y(), q.y()) + kGeomEps;
  };
  const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (a + t * ab - p).norm();
}

bool strictly_inside(const Vec2& p, const Obstacle& o) {
  const auto& v = o.vertices;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (point_segment_distance(p, v[i], v[(i + 1) % n]) <= kGeomEps) return false;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    if ((v[i].y() > p.y()) != (v[j].y() > p.y())) {
      const double x = v[j].x() + (p.y() - v[j].y()) * (v[i].x() - v[j].x()) / (v[i].y() - v[j].y());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

// Blocked iff some open piece of the segment lies strictly inside the
// footprint; grazing an edge or ending on it does not block.
bool segment_blocked(const Vec2& a, const Vec2& b, const Obstacle& o) {
  const Vec2 r = b - a;
  const double rr = r.squaredNorm();
  if (rr <= kGeomEps * kGeomEps) return strictly_inside(a, o);
  std::vector<double> ts{0.0, 1.0};
  const auto& v = o.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& p = v[i];
    const Vec2 s = v[(i + 1) % v.size()] - p;
    const double denom = cross(r, s);
    if (std::abs(denom) > kGeomEps * std::sqrt(rr) * s.norm()) {
      const double t = cross(p - a, s) / denom;
      const double u = cross(p - a, r) / denom;
      if (t >= 0.0 && t <= 1.0 && u >= -kGeomEps && u <= 1.0 + kGeomEps) ts.push_back(t);
    } else if (std::abs(cross(p - a, r)) <= kGeomEps * std::sqrt(rr)) {
      for (const Vec2& q : {p, Vec2(p + s)}) {
        const double t = (q - a).dot(r) / rr;
        if (t > 0.0 && t < 1.0) ts.push_back(t);
      }
    }
  }
  std::sort(ts.begin(), ts.end());
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (ts[i + 1] - ts[i] <= 1e-12) continue;
    if (strictly_inside(a + 0.5 * (ts[i] + ts[i + 1]) * r, o)) return true;
  }
  return false;
}

Eigen::VectorXd project(const Vec3& v, int dims) {
  return dims == 2 ? Eigen::VectorXd(v.head<2>()) : Eigen::VectorXd(v);
}

// Unit vectors spanning the angle-sensitive directions at the UE.
std::vector<Eigen::VectorXd> angle_directions(const Eigen::VectorXd& u, const InfrastructureNode& node) {
  std::vector<Eigen::VectorXd> out;
  if (u.size() == 2) {
    out.emplace_back(Vec2(-u.y(), u.x()));
    return out;
  }
  const Vec3 u3 = u;
  Vec3 az = Vec3::UnitZ().cross(u3);
  if (az.norm() < 1e-12) az = Vec3::UnitX();
  az.normalize();
  out.emplace_back(az);
  if (node.array.dims == 2) out.emplace_back(Vec3(u3.cross(az).normalized()));
  return out;
}

double node_time_sigma(const Scene& scene, const InfrastructureNode& node, double d, MeasurementType t) {
  if (auto s = scene.mix.fixed_sigma(t)) return *s;
  if (!scene.bounds) throw ConfigError("measurement sigma missing and no signal model to derive it");
  return scene.bounds->sigmas(node, d).time_s;
}

double node_angle_sigma(const Scene& scene, const InfrastructureNode& node, double d) {
  if (auto s = scene.mix.fixed_sigma(MeasurementType::kAoA)) return *s;
  if (!scene.bounds) throw ConfigError("AoA sigma missing and no signal model to derive it");
  return scene.bounds->sigmas(node, d).angle_rad;
}

}  // namespace

const char* to_string(NodeKind k) { return k == NodeKind::kBs ? "bs" : "ris"; }

void InfrastructureNode::validate() const {
  array.validate();
  if (!(sync_error_s >= 0.0 && position_error_m >= 0.0 && orientation_error_rad >= 0.0)) {
    throw DomainError("node synchronization and knowledge errors must be >= 0");
  }
}

void Region::validate() const {
  if (!(max_x > min_x && max_y > min_y)) throw DomainError("region max corner must exceed min corner");
  if (!(resolution_m > 0.0)) throw DomainError("region resolution must be > 0");
}

int Region::nx() const { return std::max(1, static_cast<int>(std::ceil((max_x - min_x) / resolution_m - 1e-9))); }
int Region::ny() const { return std::max(1, static_cast<int>(std::ceil((max_y - min_y) / resolution_m - 1e-9))); }
double Region::cell_x(int i) const { return min_x + (i + 0.5) * resolution_m; }
double Region::cell_y(int j) const { return min_y + (j + 0.5) * resolution_m; }

void Obstacle::validate() const {
  const std::size_t n = vertices.size();
  if (n < 3) throw DomainError("obstacle polygon needs at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(vertices[i], vertices[(i + 1) % n], vertices[j], vertices[(j + 1) % n])) {
        throw DomainError("obstacle polygon is not simple");
      }
    }
  }
}

const char* to_string(MeasurementType t) {
  switch (t) {
    case MeasurementType::kToA: return "toa";
    case MeasurementType::kTDoA: return "tdoa";
    case MeasurementType::kRTT: return "rtt";
    case MeasurementType::kAoA: return "aoa";
  }
  return "?";
}

MeasurementType parse_measurement_type(std::string_view s) {
  for (auto t : {MeasurementType::kToA, MeasurementType::kTDoA, MeasurementType::kRTT, MeasurementType::kAoA}) {
    if (s == to_string(t)) return t;
  }
  throw ConfigError("unknown measurement type '" + std::string(s) + "'");
}

void MeasurementMix::validate() const {
  if (types.empty()) throw ConfigError("measurement mix is empty");
  for (const auto& s : {toa_sigma_s, tdoa_sigma_s, rtt_sigma_s, aoa_sigma_rad}) {
    if (s && !(*s > 0.0)) throw DomainError("measurement sigma must be > 0");
  }
}

bool MeasurementMix::has(MeasurementType t) const {
  return std::find(types.begin(), types.end(), t) != types.end();
}

std::optional<double> MeasurementMix::fixed_sigma(MeasurementType t) const {
  switch (t) {
    case MeasurementType::kToA: return toa_sigma_s;
    case MeasurementType::kTDoA: return tdoa_sigma_s;
    case MeasurementType::kRTT: return rtt_sigma_s;
    case MeasurementType::kAoA: return aoa_sigma_rad;
  }
  return std::nullopt;
}

NodeSigmas BoundModel::sigmas(const InfrastructureNode& node, double distance_m) const {
  SpebParams p;
  p.symbols = symbols;
  p.bandwidth_hz = bandwidth_hz;
  p.n0_w_per_hz = n0_w_per_hz;
  p.distance_m = std::max(distance_m, 1e-3);
  p.wavelength_m = wavelength_m;
  p.n_rx = node.array.total_elements();
  p.n_aperture = node.array.elements_per_dim;
  p.alpha_range = alpha_range;
  p.alpha_angle = alpha_angle;
  p.ptx_w = ptx_w;
  const auto b = speb(p);
  return {b.range_err_m / kSpeedOfLight, b.angle_err_rad};
}

bool los_visible(const Vec3& ue, const InfrastructureNode& node, const std::vector<Obstacle>& obstacles) {
  const Vec2 a = ue.head<2>();
  const Vec2 b = node.position.head<2>();
  return std::none_of(obstacles.begin(), obstacles.end(),
                      [&](const Obstacle& o) { return segment_blocked(a, b, o); });
}

std::vector<std::size_t> visible_nodes(const Vec3& ue, const std::vector<InfrastructureNode>& nodes,
                                       const std::vector<Obstacle>& obstacles) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (los_visible(ue, nodes[i], obstacles)) out.push_back(i);
  }
  return out;
}

bool can_measure(const InfrastructureNode& node, MeasurementType t) {
  if (t == MeasurementType::kAoA) return node.array.elements_per_dim >= 2;
  return node.kind == NodeKind::kBs;
}

int required_anchors(MeasurementType t, int dims) {
  switch (t) {
    case MeasurementType::kTDoA: return dims + 1;
    case MeasurementType::kToA:
    case MeasurementType::kRTT: return dims;
    case MeasurementType::kAoA: return 2;
  }
  return dims + 1;
}

AnchorVerdict min_anchor_check(const MeasurementMix& mix, int dims, int visible_count) {
  return min_anchor_check(mix, dims, visible_count, 0);
}

AnchorVerdict min_anchor_check(const MeasurementMix& mix, int dims, int visible_bs, int visible_ris) {
  AnchorVerdict v;
  v.required = std::numeric_limits<int>::max();
  for (auto t : mix.types) {
    const int need = required_anchors(t, dims);
    const int have = t == MeasurementType::kAoA ? visible_bs + visible_ris : visible_bs;
    v.required = std::min(v.required, need);
    if (have >= need) v.pass = true;
  }
  if (mix.types.empty()) v.required = 0;
  return v;
}

Eigen::MatrixXd position_fim(const Vec3& ue, const Scene& scene) {
  return position_fim(ue, scene, std::numeric_limits<std::size_t>::max());
}

Eigen::MatrixXd position_fim(const Vec3& ue, const Scene& scene, std::size_t tdoa_reference) {
  const int dims = scene.dims;
  if (dims != 2 && dims != 3) throw ConfigError("deployment dims must be 2 or 3");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(dims, dims);
  const auto vis = visible_nodes(ue, scene.nodes, scene.obstacles);
  const Eigen::VectorXd p = project(ue, dims);

  struct Link {
    std::size_t index;
    Eigen::VectorXd u;
    double d;
  };
  std::vector<Link> links;
  for (std::size_t i : vis) {
    Eigen::VectorXd diff = p - project(scene.nodes[i].position, dims);
    const double d = diff.norm();
    if (d < 1e-9) continue;  // co-located: direction undefined
    links.push_back({i, diff / d, d});
  }

  const double c = kSpeedOfLight;
  for (auto type : scene.mix.types) {
    if (type == MeasurementType::kToA || type == MeasurementType::kRTT) {
      for (const auto& l : links) {
        const auto& node = scene.nodes[l.index];
        if (!can_measure(node, type)) continue;
        const double s = node_time_sigma(scene, node, l.d, type);
        j += l.u * l.u.transpose() / (c * c * s * s);
      }
    } else if (type == MeasurementType::kAoA) {
      for (const auto& l : links) {
        const auto& node = scene.nodes[l.index];
        if (!can_measure(node, type)) continue;
        const double s = node_angle_sigma(scene, node, l.d);
        for (const auto& e : angle_directions(l.u, node)) {
          j += e * e.transpose() / (l.d * l.d * s * s);
        }
      }
    } else {  // TDoA
      std::vector<const Link*> delay;
      for (const auto& l : links) {
        if (can_measure(scene.nodes[l.index], type)) delay.push_back(&l);
      }
      if (delay.size() < 2) continue;
      std::size_t ref = 0;
      for (std::size_t k = 0; k < delay.size(); ++k) {
        if (delay[k]->index == tdoa_reference) ref = k;
      }
      std::vector<double> sig(delay.size());
      for (std::size_t k = 0; k < delay.size(); ++k) {
        sig[k] = node_time_sigma(scene, scene.nodes[delay[k]->index], delay[k]->d, type);
      }
      const int m = static_cast<int>(delay.size()) - 1;
      Eigen::MatrixXd h(m, dims);
      Eigen::MatrixXd cov = Eigen::MatrixXd::Constant(m, m, sig[ref] * sig[ref]);
      int row = 0;
      for (std::size_t k = 0; k < delay.size(); ++k) {
        if (k == ref) continue;
        h.row(row) = (delay[k]->u - delay[ref]->u).transpose() / c;
        cov(row, row) += sig[k] * sig[k];
        ++row;
      }
      j += h.transpose() * cov.ldlt().solve(h);
    }
  }
  return 0.5 * (j + j.transpose());
}

GdopResult gdop(const Vec3& ue, const Scene& scene) {
  GdopResult r;
  const auto vis = visible_nodes(ue, scene.nodes, scene.obstacles);
  r.visible = static_cast<int>(vis.size());
  const Eigen::MatrixXd j = position_fim(ue, scene);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  for (int i = 0; i < j.rows(); ++i) {
    if (top > 0.0 && es.eigenvalues()(i) > 1e-9 * top) ++r.rank;
  }
  if (r.rank < scene.dims) {
    r.peb_m = kInf;
    r.gdop = kInf;
    return r;
  }
  r.observable = true;
  r.peb_m = std::sqrt(j.inverse().trace());

  // Reference error for normalization.
  double ref_m = 0.0;
  const auto first_visible = [&](MeasurementType t) -> const InfrastructureNode* {
    for (std::size_t i : vis) {
      if (can_measure(scene.nodes[i], t)) return &scene.nodes[i];
    }
    return nullptr;
  };
  for (auto t : scene.mix.types) {
    const auto* node = first_visible(t);
    if (!node) continue;
    const double d = (project(ue, scene.dims) - project(node->position, scene.dims)).norm();
    if (t == MeasurementType::kAoA) {
      if (ref_m == 0.0) ref_m = d * node_angle_sigma(scene, *node, d);
      continue;
    }
    ref_m = kSpeedOfLight * node_time_sigma(scene, *node, d, t);
    break;
  }
  r.gdop = ref_m > 0.0 ? r.peb_m / ref_m : kInf;
  return r;
}

const char* to_string(HeatmapMetric m) {
  switch (m) {
    case HeatmapMetric::kPeb: return "peb";
    case HeatmapMetric::kGdop: return "gdop";
    case HeatmapMetric::kVisibleCount: return "visible_count";
    case HeatmapMetric::kRate: return "rate";
    case HeatmapMetric::kSensingSnr: return "sensing_snr";
  }
  return "?";
}

HeatmapMetric parse_heatmap_metric(std::string_view s) {
  for (auto m : {HeatmapMetric::kPeb, HeatmapMetric::kGdop, HeatmapMetric::kVisibleCount,
                 HeatmapMetric::kRate, HeatmapMetric::kSensingSnr}) {
    if (s == to_string(m)) return m;
  }
  throw ConfigError("unknown heatmap metric '" + std::string(s) + "'");
}

namespace {

double evaluate_cell(const Vec3& ue, const Scene& scene, HeatmapMetric metric, const HeatmapLink& hl) {
  switch (metric) {
    case HeatmapMetric::kPeb:
      return gdop(ue, scene).peb_m;
    case HeatmapMetric::kGdop:
      return gdop(ue, scene).gdop;
    case HeatmapMetric::kVisibleCount:
      return static_cast<double>(visible_nodes(ue, scene.nodes, scene.obstacles).size());
    case HeatmapMetric::kRate: {
      double best = 0.0;
      for (std::size_t i : visible_nodes(ue, scene.nodes, scene.obstacles)) {
        const auto& node = scene.nodes[i];
        if (node.kind != NodeKind::kBs) continue;
        LinkParams l = hl.link;
        l.tx = node.array;
        l.distance_m = std::max((ue - node.position).norm(), 1e-3);
        best = std::max(best, achievable_rate_bps(link_snr_db(l), Bandwidth(l.bandwidth_hz), hl.rate));
      }
      return best;
    }
    case HeatmapMetric::kSensingSnr: {
      double best = -kInf;
      for (std::size_t i : visible_nodes(ue, scene.nodes, scene.obstacles)) {
        const auto& node = scene.nodes[i];
        if (node.kind != NodeKind::kBs) continue;
        RadarParams rp;
        rp.ptx_per_element = hl.link.ptx_per_element;
        rp.tx = node.array;
        rp.rx = node.array;
        rp.target.rcs_m2 = hl.rcs_m2;
        rp.carrier_hz = hl.link.pathloss.carrier_hz;
        rp.noise = hl.link.noise;
        rp.bandwidth_hz = hl.link.bandwidth_hz;
        rp.impl_loss_db = hl.link.impl_loss_db;
        const double d = std::max((ue - node.position).norm(), 1e-3);
        best = std::max(best, monostatic_snr_db(rp, Distance(d)).value);
      }
      return best;
    }
  }
  return kInf;
}

}  // namespace

Heatmap coverage_heatmap(const Region& region, const Scene& scene, HeatmapMetric metric,
                         const HeatmapLink& link) {
  region.validate();
  Heatmap h;
  h.region = region;
  h.metric = metric;
  const int nx = region.nx();
  const int ny = region.ny();
  h.values.assign(static_cast<std::size_t>(nx) * ny, 0.0);

  // Rows are independent; each worker owns a fixed stripe.
  const int workers = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, ny);
  auto run = [&](int w) {
    for (int j = w; j < ny; j += workers) {
      for (int i = 0; i < nx; ++i) {
        const Vec3 ue(region.cell_x(i), region.cell_y(j), region.height_m);
        h.values[static_cast<std::size_t>(j) * nx + i] = evaluate_cell(ue, scene, metric, link);
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  return h;
}

void write_heatmap_csv(std::ostream& os, const Heatmap& h) {
  os << "x_m,y_m,value\n";
  const int nx = h.region.nx();
  for (int j = 0; j < h.region.ny(); ++j) {
    for (int i = 0; i < nx; ++i) {
      os << format_number(h.region.cell_x(i)) << ',' << format_number(h.region.cell_y(j)) << ','
         << format_number(h.values[static_cast<std::size_t>(j) * nx + i]) << '\n';
    }
  }
}

void write_heatmap_pgm(std::ostream& os, const Heatmap& h) {
  const int nx = h.region.nx();
  const int ny = h.region.ny();
  double lo = kInf, hi = -kInf;
  for (double v : h.values) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  os << "P2\n" << nx << ' ' << ny << "\n255\n";
  for (int j = ny - 1; j >= 0; --j) {
    for (int i = 0; i < nx; ++i) {
      const double v = h.values[static_cast<std::size_t>(j) * nx + i];
      int g = 0;
      if (std::isfinite(v)) g = hi > lo ? 1 + static_cast<int>(std::lround(254.0 * (v - lo) / (hi - lo))) : 255;
      os << g << (i + 1 < nx ? ' ' : '\n');
    }
  }
}

std::optional<double> sync_budget_s(UseCaseId uc, const SyncContext& ctx) {
  switch (uc) {
    case UseCaseId::kC1:
    case UseCaseId::kC2:
      return ctx.dmimo ? std::optional<double>(10e-9) : std::nullopt;
    case UseCaseId::kL1:
      return ctx.uses_tdoa ? std::optional<double>(100e-12) : std::nullopt;
    case UseCaseId::kL2:
      return ctx.uses_tdoa ? std::optional<double>(0.5e-9) : std::nullopt;
    case UseCaseId::kL3:
      return ctx.uses_tdoa ? std::optional<double>(10e-9) : std::nullopt;
    case UseCaseId::kS1:
      return std::nullopt;
    case UseCaseId::kS2:
      return ctx.tx_rx_los ? std::nullopt : std::optional<double>(100e-12);
  }
  return std::nullopt;
}

BudgetVerdict sync_budget_check(UseCaseId uc, const std::vector<InfrastructureNode>& nodes,
                                const SyncContext& ctx) {
  BudgetVerdict v;
  // A lone node is compared against the network reference its peer shares.
  double worst = nodes.size() == 1 ? nodes.front().sync_error_s : 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t k = i + 1; k < nodes.size(); ++k) {
      worst = std::max(worst, std::hypot(nodes[i].sync_error_s, nodes[k].sync_error_s));
    }
  }
  v.achieved = worst;
  const auto budget = sync_budget_s(uc, ctx);
  if (!budget) {
    v.exempt = true;
    v.note = "N/A";
    return v;
  }
  v.budget = *budget;
  v.pass = worst <= *budget;
  return v;
}

std::optional<double> node_position_budget_m(UseCaseId uc) {
  switch (uc) {
    case UseCaseId::kL1:
    case UseCaseId::kS2:
      return 0.01;  // mm-level
    case UseCaseId::kL2:
      return 0.1;   // cm-level
    case UseCaseId::kL3:
      return 1.0;   // m-level
    default:
      return std::nullopt;  // area-level or N/A
  }
}

KnowledgeVerdict in_knowledge_check(UseCaseId uc, const std::vector<InfrastructureNode>& nodes,
                                    double operating_distance_m) {
  if (!(operating_distance_m > 0.0)) throw DomainError("operating distance must be > 0");
  KnowledgeVerdict v;
  double worst_pos = 0.0, worst_orient = 0.0;
  for (const auto& n : nodes) {
    worst_pos = std::max(worst_pos, n.position_error_m);
    worst_orient = std::max(worst_orient, n.orientation_error_rad);
  }
  v.position.achieved = worst_pos;
  if (const auto budget = node_position_budget_m(uc)) {
    v.position.budget = *budget;
    v.position.pass = worst_pos <= *budget;
  } else {
    v.position.exempt = true;
    v.position.note = class_of(uc) == UseCaseClass::kCommunication ? "area-level" : "N/A";
  }

  const auto& kpi = use_case(uc);
  const double lever = worst_orient == 0.0
                           ? 0.0
                           : orientation_error_to_position_error(Angle::radians(worst_orient),
                                                                 Distance(operating_distance_m))
                                 .m();
  v.orientation.achieved = lever;
  if (kpi.loc_acc_m && class_of(uc) != UseCaseClass::kCommunication && uc != UseCaseId::kS1) {
    v.orientation.budget = *kpi.loc_acc_m;
    v.orientation.pass = lever <= *kpi.loc_acc_m;
  } else {
    v.orientation.exempt = true;
    v.orientation.note = "N/A";
  }
  return v;
}

}  // namespace isacreq
