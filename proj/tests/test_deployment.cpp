#include <doctest.h>

#include <random>
#include <sstream>

#include "isacreq/deployment.hpp"
#include "oracles.hpp"

using namespace isacreq;

namespace {

InfrastructureNode bs_at(double x, double y, double z = 3.0) {
  InfrastructureNode n;
  n.position = Vec3(x, y, z);
  return n;
}

Scene toa_scene_2d(const std::vector<Vec2>& anchors, double sigma_s) {
  Scene s;
  s.dims = 2;
  for (const auto& a : anchors) s.nodes.push_back(bs_at(a.x(), a.y(), 0.0));
  s.mix.types = {MeasurementType::kToA};
  s.mix.toa_sigma_s = sigma_s;
  return s;
}

// Star-shaped polygon around c: sorted angles keep it simple.
std::vector<Vec2> random_polygon(std::mt19937_64& rng, const Vec2& c) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = 3 + static_cast<int>(u(rng) * 6);
  std::vector<double> angles(n);
  for (auto& a : angles) a = 2.0 * oracle::kPi * u(rng);
  std::sort(angles.begin(), angles.end());
  std::vector<Vec2> poly;
  for (double a : angles) {
    const double r = 1.0 + 4.0 * u(rng);
    poly.emplace_back(c.x() + r * std::cos(a), c.y() + r * std::sin(a));
  }
  return poly;
}

bool near_degenerate(const Vec2& p, const Vec2& q, const std::vector<Vec2>& poly) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (oracle::point_segment_distance(poly[i], p, q) < 1e-6) return true;
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    if (oracle::point_segment_distance(p, a, b) < 1e-6 || oracle::point_segment_distance(q, a, b) < 1e-6)
      return true;
  }
  return false;
}

// Fisher information of ToA ranges with a common unknown clock bias, the bias
// removed by Schur complement. Equals TDoA with correlated differences.
Eigen::MatrixXd biased_toa_fim(const Vec3& ue, const Scene& s, double sigma_s) {
  const int dims = s.dims;
  Eigen::MatrixXd h(s.nodes.size(), dims);
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    Eigen::VectorXd diff = (ue - s.nodes[i].position).head(dims);
    h.row(static_cast<Eigen::Index>(i)) = diff.normalized().transpose() / oracle::kC;
  }
  const double w = 1.0 / (sigma_s * sigma_s);
  const Eigen::VectorXd col = h.transpose() * Eigen::VectorXd::Ones(h.rows());
  return w * (h.transpose() * h - col * col.transpose() / static_cast<double>(h.rows()));
}

}  // namespace

TEST_CASE("square-corner ToA geometry gives PEB equal to the ranging error") {
  const double sigma = 1.0 / oracle::kC;  // 1 m ranging error
  const Scene s = toa_scene_2d({{-5, -5}, {5, -5}, {5, 5}, {-5, 5}}, sigma);
  const auto r = gdop(Vec3(0, 0, 0), s);
  REQUIRE(r.observable);
  CHECK(r.rank == 2);
  CHECK(r.visible == 4);
  CHECK(r.peb_m == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.gdop == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("square-corner PEB agrees with Monte Carlo least squares") {
  const double l = 2000.0;  // large square keeps the estimator in its linear regime
  const std::vector<Vec2> anchors = {{-l, -l}, {l, -l}, {l, l}, {-l, l}};
  const Scene s = toa_scene_2d(anchors, 1.0 / oracle::kC);
  const double peb = gdop(Vec3(0, 0, 0), s).peb_m;
  const double rmse = oracle::toa_least_squares_rmse(anchors, Vec2(0, 0), 1.0, 10000, 2024);
  CHECK(std::abs(rmse / peb - 1.0) < 0.05);
}

TEST_CASE("collinear anchors are unobservable") {
  const Scene s = toa_scene_2d({{-10, 0}, {10, 0}, {20, 0}}, 1e-9);
  const auto r = gdop(Vec3(0, 0, 0), s);
  CHECK_FALSE(r.observable);
  CHECK(r.rank == 1);
  CHECK(std::isinf(r.peb_m));
  CHECK(std::isinf(r.gdop));
}

TEST_CASE("TDoA information matches the bias-eliminated ToA oracle and ignores the reference") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  std::uniform_real_distribution<double> h(1.0, 30.0);
  for (int trial = 0; trial < 100; ++trial) {
    Scene s;
    s.dims = trial % 2 == 0 ? 3 : 2;
    const int n = 4 + trial % 4;
    for (int i = 0; i < n; ++i) s.nodes.push_back(bs_at(u(rng), u(rng), h(rng)));
    s.mix.types = {MeasurementType::kTDoA};
    s.mix.tdoa_sigma_s = 1e-10;
    const Vec3 ue(u(rng), u(rng), 1.5);
    const Eigen::MatrixXd expected = biased_toa_fim(ue, s, 1e-10);
    const Eigen::MatrixXd base = position_fim(ue, s, 0);
    CHECK((base - expected).norm() <= 1e-9 * expected.norm());
    for (std::size_t ref = 1; ref < s.nodes.size(); ++ref) {
      const Eigen::MatrixXd other = position_fim(ue, s, ref);
      CHECK((other - base).norm() <= 1e-9 * base.norm());
    }
  }
}

TEST_CASE("AoA adds an elevation row only for planar arrays") {
  Scene s;
  s.dims = 3;
  s.nodes = {bs_at(10, 0, 3)};
  s.mix.types = {MeasurementType::kAoA};
  s.mix.aoa_sigma_rad = 1e-3;
  Eigen::FullPivLU<Eigen::MatrixXd> planar(position_fim(Vec3(0, 0, 1.5), s));
  CHECK(planar.rank() == 2);
  s.nodes[0].array.dims = 1;
  Eigen::FullPivLU<Eigen::MatrixXd> linear(position_fim(Vec3(0, 0, 1.5), s));
  CHECK(linear.rank() == 1);
  s.nodes[0].array.elements_per_dim = 1;
  CHECK(position_fim(Vec3(0, 0, 1.5), s).norm() == 0.0);
}

TEST_CASE("missing sigmas without a bound model is a configuration error") {
  Scene s;
  s.nodes = {bs_at(10, 0), bs_at(0, 10), bs_at(-10, 0), bs_at(0, -10)};
  s.mix.types = {MeasurementType::kToA};
  CHECK_THROWS_AS(position_fim(Vec3(0, 0, 1.5), s), ConfigError);
  s.bounds = BoundModel{};
  CHECK(position_fim(Vec3(0, 0, 1.5), s).norm() > 0.0);
}

TEST_CASE("derived sigmas grow with distance") {
  const BoundModel b;
  const InfrastructureNode n = bs_at(0, 0);
  const auto near = b.sigmas(n, 5.0);
  const auto far = b.sigmas(n, 50.0);
  CHECK(far.time_s > near.time_s);
  CHECK(far.angle_rad > near.angle_rad);
}

TEST_CASE("line of sight matches the segment-intersection oracle") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  int compared = 0, blocked = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const auto poly = random_polygon(rng, Vec2(u(rng) * 0.3, u(rng) * 0.3));
    const Vec2 p(u(rng), u(rng)), q(u(rng), u(rng));
    if (near_degenerate(p, q, poly)) continue;
    Obstacle o{poly};
    const bool expected_blocked = oracle::segment_blocked(p, q, poly);
    CHECK(los_visible(Vec3(p.x(), p.y(), 1.5), bs_at(q.x(), q.y(), 10.0), {o}) == !expected_blocked);
    ++compared;
    blocked += expected_blocked ? 1 : 0;
  }
  CHECK(compared > 4000);
  CHECK(blocked > 500);
  CHECK(compared - blocked > 500);
}

TEST_CASE("grazing an obstacle boundary does not block") {
  const Obstacle square{{{0, 0}, {2, 0}, {2, 2}, {0, 2}}};
  // Along an edge.
  CHECK(los_visible(Vec3(-1, 0, 1.5), bs_at(3, 0), {square}));
  // Through a single corner.
  CHECK(los_visible(Vec3(-1, 1, 1.5), bs_at(1, 3), {square}));
  // Through the interior.
  CHECK_FALSE(los_visible(Vec3(-1, 1, 1.5), bs_at(3, 1), {square}));
  // Diagonal through two corners crosses the interior.
  CHECK_FALSE(los_visible(Vec3(-1, -1, 1.5), bs_at(3, 3), {square}));
  // Endpoint on the boundary, segment outside.
  CHECK(los_visible(Vec3(0, 1, 1.5), bs_at(-3, 1), {square}));
}

TEST_CASE("obstacles must be simple polygons") {
  CHECK_THROWS(Obstacle{{{0, 0}, {1, 0}}}.validate());
  CHECK_THROWS(Obstacle{{{0, 0}, {2, 2}, {2, 0}, {0, 2}}}.validate());
  CHECK_NOTHROW(Obstacle{{{0, 0}, {2, 0}, {1, 2}}}.validate());
}

TEST_CASE("visible nodes keep input order") {
  const Obstacle wall{{{4, -1}, {5, -1}, {5, 1}, {4, 1}}};
  const std::vector<InfrastructureNode> nodes = {bs_at(10, 0), bs_at(-10, 0), bs_at(0, 10)};
  CHECK(visible_nodes(Vec3(0, 0, 1.5), nodes, {wall}) == std::vector<std::size_t>{1, 2});
}

TEST_CASE("anchor counts per measurement type") {
  CHECK(required_anchors(MeasurementType::kTDoA, 3) == 4);
  CHECK(required_anchors(MeasurementType::kToA, 3) == 3);
  CHECK(required_anchors(MeasurementType::kRTT, 2) == 2);
  CHECK(required_anchors(MeasurementType::kAoA, 3) == 2);
  MeasurementMix tdoa{{MeasurementType::kTDoA}, {}, {}, {}, {}};
  CHECK(min_anchor_check(tdoa, 3, 4).pass);
  CHECK_FALSE(min_anchor_check(tdoa, 3, 3).pass);
  MeasurementMix hybrid{{MeasurementType::kTDoA, MeasurementType::kAoA}, {}, {}, {}, {}};
  CHECK(min_anchor_check(hybrid, 3, 2).pass);
  CHECK(min_anchor_check(hybrid, 3, 2).required == 2);
  // RIS nodes only count towards angle measurements.
  CHECK_FALSE(min_anchor_check(tdoa, 3, 1, 3).pass);
  CHECK(min_anchor_check(hybrid, 3, 1, 1).pass);
  InfrastructureNode ris = bs_at(0, 0);
  ris.kind = NodeKind::kRis;
  CHECK_FALSE(can_measure(ris, MeasurementType::kToA));
  CHECK(can_measure(ris, MeasurementType::kAoA));
}

TEST_CASE("synchronization budgets") {
  SyncContext loc;
  CHECK(sync_budget_s(UseCaseId::kL1, loc).value() == doctest::Approx(100e-12));
  CHECK(sync_budget_s(UseCaseId::kL2, loc).value() == doctest::Approx(0.5e-9));
  CHECK(sync_budget_s(UseCaseId::kL3, loc).value() == doctest::Approx(10e-9));
  CHECK_FALSE(sync_budget_s(UseCaseId::kS1, loc).has_value());
  SyncContext aoa_only{false, false, true};
  CHECK_FALSE(sync_budget_s(UseCaseId::kL1, aoa_only).has_value());
  CHECK_FALSE(sync_budget_s(UseCaseId::kC1, SyncContext{}).has_value());
  CHECK(sync_budget_s(UseCaseId::kC1, SyncContext{true, true, true}).value() == doctest::Approx(10e-9));
  CHECK_FALSE(sync_budget_s(UseCaseId::kS2, SyncContext{true, false, true}).has_value());
  CHECK(sync_budget_s(UseCaseId::kS2, SyncContext{true, false, false}).value() == doctest::Approx(100e-12));

  auto nodes = std::vector<InfrastructureNode>{bs_at(0, 0), bs_at(1, 0), bs_at(2, 0)};
  nodes[0].sync_error_s = 30e-12;
  nodes[1].sync_error_s = 40e-12;
  nodes[2].sync_error_s = 10e-12;
  const auto v = sync_budget_check(UseCaseId::kL1, nodes, loc);
  CHECK(v.pass);
  CHECK(v.achieved == doctest::Approx(50e-12));
  nodes[1].sync_error_s = 100e-12;
  CHECK_FALSE(sync_budget_check(UseCaseId::kL1, nodes, loc).pass);
  CHECK(sync_budget_check(UseCaseId::kS1, nodes, loc).exempt);
}

TEST_CASE("node knowledge budgets") {
  CHECK(node_position_budget_m(UseCaseId::kL1).value() == doctest::Approx(0.01));
  CHECK(node_position_budget_m(UseCaseId::kL2).value() == doctest::Approx(0.1));
  CHECK(node_position_budget_m(UseCaseId::kL3).value() == doctest::Approx(1.0));
  CHECK_FALSE(node_position_budget_m(UseCaseId::kC2).has_value());
  auto nodes = std::vector<InfrastructureNode>{bs_at(0, 0)};
  nodes[0].position_error_m = 0.005;
  nodes[0].orientation_error_rad = deg_to_rad(0.05);
  const auto k = in_knowledge_check(UseCaseId::kL1, nodes, 10.0);
  CHECK(k.position.pass);
  CHECK(k.orientation.achieved == doctest::Approx(10.0 * deg_to_rad(0.05)));
  CHECK(k.pass());
  nodes[0].orientation_error_rad = deg_to_rad(0.1);
  CHECK_FALSE(in_knowledge_check(UseCaseId::kL1, nodes, 10.0).orientation.pass);
  CHECK(in_knowledge_check(UseCaseId::kS1, nodes, 10.0).position.exempt);
}

namespace {

Scene heatmap_scene(const Vec2& shift) {
  Scene s;
  s.dims = 3;
  for (const auto& p : {Vec2(6, 6), Vec2(-6, 6), Vec2(-6, -6), Vec2(6, -6)}) {
    const Vec2 q = p + shift;
    s.nodes.push_back(bs_at(q.x(), q.y(), 3.0 + 0.5 * s.nodes.size()));
  }
  std::vector<Vec2> block = {{1, 1}, {3, 1}, {3, 2}, {1, 2}};
  for (auto& v : block) v += shift;
  s.obstacles.push_back(Obstacle{block});
  s.bounds = BoundModel{};
  return s;
}

Region heatmap_region(const Vec2& shift) {
  Region r;
  r.min_x = -8 + shift.x();
  r.max_x = 8 + shift.x();
  r.min_y = -8 + shift.y();
  r.max_y = 8 + shift.y();
  r.resolution_m = 0.5;
  return r;
}

}  // namespace

TEST_CASE("heatmaps are deterministic and translation invariant") {
  const Vec2 shift(12.25, -7.5);
  for (auto metric : {HeatmapMetric::kPeb, HeatmapMetric::kGdop, HeatmapMetric::kVisibleCount,
                      HeatmapMetric::kRate, HeatmapMetric::kSensingSnr}) {
    const auto a = coverage_heatmap(heatmap_region({0, 0}), heatmap_scene({0, 0}), metric);
    const auto b = coverage_heatmap(heatmap_region({0, 0}), heatmap_scene({0, 0}), metric);
    CHECK(a.values == b.values);
    const auto t = coverage_heatmap(heatmap_region(shift), heatmap_scene(shift), metric);
    REQUIRE(t.values.size() == a.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      if (std::isinf(a.values[i])) {
        CHECK(std::isinf(t.values[i]));
      } else {
        CHECK(t.values[i] == doctest::Approx(a.values[i]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("heatmap shadows and output formats") {
  Region r;
  r.min_x = 0;
  r.max_x = 2;
  r.min_y = 0;
  r.max_y = 1;
  r.resolution_m = 1.0;
  CHECK(r.nx() == 2);
  CHECK(r.ny() == 1);
  Scene s;
  s.dims = 2;
  s.nodes = {bs_at(10, 0.5), bs_at(-10, 0.5)};
  s.mix.types = {MeasurementType::kToA};
  s.mix.toa_sigma_s = 1e-9;
  const auto h = coverage_heatmap(r, s, HeatmapMetric::kVisibleCount);
  CHECK(h.values == std::vector<double>{2.0, 2.0});
  const auto peb = coverage_heatmap(r, s, HeatmapMetric::kPeb);
  CHECK(std::isinf(peb.values[0]));  // all anchors on the cell row: unobservable
  std::ostringstream csv;
  write_heatmap_csv(csv, peb);
  CHECK(csv.str() == "x_m,y_m,value\n0.5,0.5,inf\n1.5,0.5,inf\n");
  std::ostringstream pgm;
  write_heatmap_pgm(pgm, h);
  CHECK(pgm.str().rfind("P2\n2 1\n255\n", 0) == 0);
  CHECK(parse_heatmap_metric("sensing_snr") == HeatmapMetric::kSensingSnr);
  CHECK_THROWS_AS(parse_heatmap_metric("nope"), ConfigError);
}
