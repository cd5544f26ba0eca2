#pragma once

// Deployment geometry: line-of-sight tests against prism obstacles, anchor
// count rules, Fisher-information position bounds for ToA/TDoA/RTT/AoA
// mixes, coverage heatmaps, and synchronization / node-knowledge budgets.

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "isacreq/channel.hpp"
#include "isacreq/kpis.hpp"
#include "isacreq/linkbudget.hpp"
#include "isacreq/locbounds.hpp"

namespace isacreq {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

enum class NodeKind { kBs, kRis };

const char* to_string(NodeKind k);

struct InfrastructureNode {
  Vec3 position = Vec3::Zero();
  Vec3 orientation_rad = Vec3::Zero();  // yaw, pitch, roll
  NodeKind kind = NodeKind::kBs;
  ArrayConfig array;
  double sync_error_s = 0.0;          // 1 sigma
  double position_error_m = 0.0;      // 1 sigma
  double orientation_error_rad = 0.0; // 1 sigma

  void validate() const;
};

// Axis-aligned evaluation rectangle, sampled at cell centers at a fixed
// height.
struct Region {
  double min_x = -10.0;
  double min_y = -10.0;
  double max_x = 10.0;
  double max_y = 10.0;
  double resolution_m = 1.0;
  double height_m = 1.5;

  void validate() const;
  int nx() const;
  int ny() const;
  double cell_x(int i) const;
  double cell_y(int j) const;
};

// Vertical blocker of infinite height with a simple polygon footprint.
struct Obstacle {
  std::vector<Vec2> vertices;

  void validate() const;
};

enum class MeasurementType { kToA, kTDoA, kRTT, kAoA };

const char* to_string(MeasurementType t);
MeasurementType parse_measurement_type(std::string_view s);

// Selected measurement types with optional fixed 1-sigma errors (seconds
// for time types, radians for AoA). A missing sigma is derived per node from
// the single-node bound through BoundModel.
struct MeasurementMix {
  std::vector<MeasurementType> types;
  std::optional<double> toa_sigma_s;
  std::optional<double> tdoa_sigma_s;
  std::optional<double> rtt_sigma_s;
  std::optional<double> aoa_sigma_rad;

  void validate() const;
  bool has(MeasurementType t) const;
  std::optional<double> fixed_sigma(MeasurementType t) const;
};

struct NodeSigmas {
  double time_s = 0.0;
  double angle_rad = 0.0;
};

// Signal parameters used to derive per-node measurement errors from the
// range and angle terms of the single-node bound.
struct BoundModel {
  double bandwidth_hz = 2e9;
  double wavelength_m = kSpeedOfLight / 140e9;
  double n0_w_per_hz = 1.2589254e-20;
  double symbols = 120.0;
  double ptx_w = 0.0251189;
  double alpha_range = kDefaultAlphaRange;
  double alpha_angle = kDefaultAlphaAngle;

  NodeSigmas sigmas(const InfrastructureNode& node, double distance_m) const;
};

bool los_visible(const Vec3& ue, const InfrastructureNode& node,
                 const std::vector<Obstacle>& obstacles);

// Indices of visible nodes, in input order.
std::vector<std::size_t> visible_nodes(const Vec3& ue, const std::vector<InfrastructureNode>& nodes,
                                       const std::vector<Obstacle>& obstacles);

bool can_measure(const InfrastructureNode& node, MeasurementType t);

struct AnchorVerdict {
  bool pass = false;
  int required = 0;
};

int required_anchors(MeasurementType t, int dims);
// visible_count anchors, each able to provide every measurement in the mix.
AnchorVerdict min_anchor_check(const MeasurementMix& mix, int dims, int visible_count);
// Counts split by node kind; RIS nodes only serve angle measurements.
AnchorVerdict min_anchor_check(const MeasurementMix& mix, int dims, int visible_bs,
                               int visible_ris);

struct Scene {
  int dims = 3;
  std::vector<InfrastructureNode> nodes;
  std::vector<Obstacle> obstacles;
  MeasurementMix mix;
  std::optional<BoundModel> bounds;  // required when the mix has no fixed sigmas
};

// dims x dims Fisher information of the UE position. The TDoA reference is
// the first visible delay-capable node; differences carry their correlated
// covariance, so position bounds do not depend on that choice.
Eigen::MatrixXd position_fim(const Vec3& ue, const Scene& scene);
// Same, with an explicit TDoA reference (index into scene.nodes).
Eigen::MatrixXd position_fim(const Vec3& ue, const Scene& scene, std::size_t tdoa_reference);

struct GdopResult {
  bool observable = false;
  int rank = 0;
  int visible = 0;
  double peb_m = 0.0;  // +inf when unobservable
  double gdop = 0.0;   // +inf when unobservable
};

// PEB = sqrt(trace(FIM^-1)). GDOP normalizes PEB by the reference ranging
// error c*sigma of the first time measurement (or d*sigma for angle-only
// mixes, with d the distance to the first visible node).
GdopResult gdop(const Vec3& ue, const Scene& scene);

enum class HeatmapMetric { kPeb, kGdop, kVisibleCount, kRate, kSensingSnr };

const char* to_string(HeatmapMetric m);
HeatmapMetric parse_heatmap_metric(std::string_view s);

// Link settings for the rate and sensing-SNR metrics.
struct HeatmapLink {
  LinkParams link;  // distance and tx array are replaced per cell
  RateModel rate;
  double rcs_m2 = 1.0;
};

struct Heatmap {
  Region region;
  HeatmapMetric metric = HeatmapMetric::kPeb;
  // Row-major, y outer: values[j * nx + i] at (cell_x(i), cell_y(j)).
  std::vector<double> values;
};

Heatmap coverage_heatmap(const Region& region, const Scene& scene, HeatmapMetric metric,
                         const HeatmapLink& link = {});

// `x_m,y_m,value`, y outer then x; unobservable cells print `inf`.
void write_heatmap_csv(std::ostream& os, const Heatmap& h);
// Plain PGM (P2), top row = largest y. Finite values scale to 1..255 (all
// equal maps to 255); non-finite cells are 0.
void write_heatmap_pgm(std::ostream& os, const Heatmap& h);

struct SyncContext {
  bool uses_tdoa = true;    // localization: time-difference measurements in use
  bool dmimo = false;       // communication: coherent multi-node transmission
  bool tx_rx_los = true;    // bistatic sensing: transmitter visible from receivers
};

struct BudgetVerdict {
  bool pass = true;
  bool exempt = false;
  double budget = 0.0;
  double achieved = 0.0;
  std::string note;
};

// Largest pairwise relative clock error sqrt(s_i^2 + s_j^2) against the use
// case's synchronization budget; a single node contributes its own error.
BudgetVerdict sync_budget_check(UseCaseId uc, const std::vector<InfrastructureNode>& nodes,
                                const SyncContext& ctx = {});
std::optional<double> sync_budget_s(UseCaseId uc, const SyncContext& ctx);

struct KnowledgeVerdict {
  BudgetVerdict position;
  BudgetVerdict orientation;
  bool pass() const { return position.pass && orientation.pass; }
};

// Node position budget per level (mm / cm / m) and orientation budget through
// the lever arm d * sigma <= location accuracy.
KnowledgeVerdict in_knowledge_check(UseCaseId uc, const std::vector<InfrastructureNode>& nodes,
                                    double operating_distance_m);
std::optional<double> node_position_budget_m(UseCaseId uc);

}  // namespace isacreq
