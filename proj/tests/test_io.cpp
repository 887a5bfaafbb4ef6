#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "mgfield/io.hpp"
#include "mgfield/metrics.hpp"
#include "mgfield/models.hpp"

using namespace mgfield;
using nlohmann::json;

TEST_CASE("graphs survive a JSON round trip") {
  MetricGraph t = generate_tadpole();
  MetricGraph back = parse_graph_json(graph_to_json(t));
  CHECK(back.vertex_count() == t.vertex_count());
  REQUIRE(back.edge_count() == t.edge_count());
  for (int e = 0; e < t.edge_count(); ++e) {
    CHECK(back.edge(e).u == t.edge(e).u);
    CHECK(back.edge(e).v == t.edge(e).v);
    CHECK(back.edge(e).length == t.edge(e).length);
  }

  MetricGraph lengths(2, {{0, 0, 1, 0.1234567890123456789}});
  CHECK(parse_graph_json(graph_to_json(lengths)).edge(0).length == lengths.edge(0).length);
}

TEST_CASE("graph parsing is strict about structure") {
  CHECK_THROWS_AS(parse_graph_json("not json"), BadParams);
  CHECK_THROWS_AS(parse_graph_json("[1, 2]"), BadParams);
  CHECK_THROWS_AS(parse_graph_json(R"({"edges": []})"), BadParams);
  CHECK_THROWS_AS(parse_graph_json(R"({"vertices": 2})"), BadParams);
  CHECK_THROWS_AS(parse_graph_json(R"({"vertices": 2, "edges": [], "extra": 1})"), BadParams);
  CHECK_THROWS_AS(parse_graph_json(R"({"vertices": "2", "edges": []})"), BadParams);
  CHECK_THROWS_AS(parse_graph_json(R"({"vertices": 2.5, "edges": []})"), BadParams);
  CHECK_THROWS_AS(parse_graph_json(R"({"vertices": 2, "edges": {}})"), BadParams);
  CHECK_THROWS_AS(
      parse_graph_json(R"({"vertices": 2, "edges": [{"id": 0, "from": 0, "to": 1}]})"),
      BadParams);
  CHECK_THROWS_AS(
      parse_graph_json(
          R"({"vertices": 2, "edges": [{"id": 0, "from": 0, "to": 1, "length": 1, "x": 1}]})"),
      BadParams);
  CHECK_THROWS_AS(
      parse_graph_json(
          R"({"vertices": 2, "edges": [{"id": 1, "from": 0, "to": 1, "length": 1}]})"),
      BadParams);
  CHECK_THROWS_AS(
      parse_graph_json(
          R"({"vertices": 2, "edges": [{"id": 0, "from": 0, "to": 1, "length": -1}]})"),
      NonPositiveLength);
  CHECK_THROWS_AS(
      parse_graph_json(
          R"({"vertices": 3, "edges": [{"id": 0, "from": 0, "to": 1, "length": 1}]})"),
      Disconnected);
}

TEST_CASE("point lists survive a JSON round trip with exact offsets") {
  MetricGraph t = generate_tadpole();
  PointSet pts(t, {GraphPoint::at_vertex(2), GraphPoint::on_edge(1, 0.12345678901234567),
                   GraphPoint::on_edge(4, 1.0 / 3.0)});
  std::vector<GraphPoint> back = parse_points_json(points_to_json(pts));
  PointSet round(t, back);
  CHECK(round == pts);
  for (int i = 0; i < pts.size(); ++i)
    if (!pts[i].is_vertex()) CHECK(round[i].offset() == pts[i].offset());

  CHECK(parse_points_json("[]").empty());
}

TEST_CASE("point parsing is strict about structure") {
  CHECK_THROWS_AS(parse_points_json(R"({"vertex": 0})"), BadParams);
  CHECK_THROWS_AS(parse_points_json(R"([[0]])"), BadParams);
  CHECK_THROWS_AS(parse_points_json(R"([{"vertex": 0, "edge": 1, "t": 0.5}])"), BadParams);
  CHECK_THROWS_AS(parse_points_json(R"([{"edge": 1}])"), BadParams);
  CHECK_THROWS_AS(parse_points_json(R"([{"t": 0.5}])"), BadParams);
  CHECK_THROWS_AS(parse_points_json(R"([{"vertex": 0.5}])"), BadParams);
  CHECK_THROWS_AS(parse_points_json(R"([{"edge": 0, "t": "0.5"}])"), BadParams);
  CHECK_THROWS_AS(parse_points_json(R"([{"where": 3}])"), BadParams);
}

TEST_CASE("matrices round-trip through CSV bit for bit") {
  MetricGraph t = generate_tadpole();
  PointSet pts = PointSet::vertices(t).united(
      PointSet(t, {GraphPoint::on_edge(2, 0.7), GraphPoint::on_edge(6, 1.0 / 7.0)}));
  LabeledMatrix d = geodesic_matrix(t, pts);
  LabeledMatrix cov = exp_covariance(d, {0.9, 1.3});

  std::string csv = matrix_to_csv(cov);
  LabeledMatrix back = parse_matrix_csv(csv, MatrixKind::covariance);
  CHECK(back.kind() == MatrixKind::covariance);
  CHECK(back.labels() == cov.labels());
  REQUIRE(back.size() == cov.size());
  for (int i = 0; i < cov.size(); ++i)
    for (int j = 0; j < cov.size(); ++j) CHECK(back(i, j) == cov(i, j));

  LabeledMatrix dist_back = parse_matrix_csv(matrix_to_csv(d), MatrixKind::distance);
  CHECK(dist_back.kind() == MatrixKind::distance);
  CHECK(dist_back(0, 0) == 0.0);

  // Windows-style line endings parse the same.
  std::string crlf;
  for (char c : csv) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  LabeledMatrix from_crlf = parse_matrix_csv(crlf, MatrixKind::covariance);
  CHECK(from_crlf(1, 2) == cov(1, 2));
}

TEST_CASE("matrix CSV parsing is strict about labels and shape") {
  CHECK_THROWS_AS(parse_matrix_csv("", MatrixKind::distance), BadParams);
  CHECK_THROWS_AS(parse_matrix_csv("label,0\n", MatrixKind::distance), BadParams);
  CHECK_THROWS_AS(parse_matrix_csv("wrong,0\n0,0\n", MatrixKind::distance), BadParams);
  CHECK_THROWS_AS(parse_matrix_csv("label,0,1\n0,0,1\n2,1,0\n", MatrixKind::distance),
                  BadParams);
  CHECK_THROWS_AS(parse_matrix_csv("label,0,1\n0,0,1\n", MatrixKind::distance), BadParams);
  CHECK_THROWS_AS(parse_matrix_csv("label,0,1\n0,0,1,9\n1,1,0\n", MatrixKind::distance),
                  BadParams);
  CHECK_THROWS_AS(parse_matrix_csv("label,0,1\n0,0,x\n1,x,0\n", MatrixKind::distance),
                  BadParams);
  CHECK_THROWS_AS(parse_matrix_csv("label,0,e1:abc\n0,0,1\ne1:abc,1,0\n", MatrixKind::distance),
                  BadParams);
  CHECK_THROWS_AS(parse_matrix_csv("label,1,0\n1,0,1\n0,1,0\n", MatrixKind::distance),
                  BadParams);
  // Asymmetric entries are rejected, not silently averaged away.
  CHECK_THROWS_AS(parse_matrix_csv("label,0,1\n0,1,0.5\n1,0.9,1\n", MatrixKind::covariance),
                  BadParams);
}

TEST_CASE("sample CSV lays out one labeled row per coordinate") {
  MetricGraph p = generate_path(2, 1.0);
  PointSet pts = PointSet::vertices(p);
  Eigen::MatrixXd cols(2, 3);
  cols << 1.0, 2.0, 3.0, -1.0, -2.0, -3.0;
  std::string csv = samples_to_csv(pts, cols);
  CHECK(csv.substr(0, csv.find('\n')) == "label,s0,s1,s2");
  CHECK(csv.find("\n0,") != std::string::npos);
  CHECK(csv.find("\n1,") != std::string::npos);
  CHECK(csv.find("3.0000000000000000e+00") != std::string::npos);

  Eigen::MatrixXd wrong(3, 1);
  wrong.setZero();
  CHECK_THROWS_AS(samples_to_csv(pts, wrong), BadParams);
}

TEST_CASE("check reports serialize with a stable schema") {
  CheckReport r;
  r.check = "demo";
  r.pass = false;
  r.violations.push_back({"bad_pair", {1, 2}, 0.25, "details here"});
  r.violations.push_back({"bad_node", {3}, -1.0, ""});
  r.params = {{"kappa", 1.5}};
  r.tolerances = {{"zero_tol", 1e-8}};

  json j = json::parse(report_to_json(r));
  CHECK(j.at("check") == "demo");
  CHECK(j.at("pass") == false);
  CHECK(j.at("params").at("kappa") == 1.5);
  CHECK(j.at("tolerances").at("zero_tol") == 1e-8);
  CHECK_FALSE(j.contains("note"));
  REQUIRE(j.at("violations").size() == 2);
  CHECK(j.at("violations")[0].at("kind") == "bad_pair");
  CHECK(j.at("violations")[0].at("nodes") == json::array({1, 2}));
  CHECK(j.at("violations")[0].at("value") == 0.25);
  CHECK(j.at("violations")[0].at("detail") == "details here");
  CHECK_FALSE(j.at("violations")[1].contains("detail"));

  r.note = "something";
  json j2 = json::parse(report_to_json(r));
  CHECK(j2.at("note") == "something");
}

TEST_CASE("faithfulness reports carry labeled counterexamples") {
  MetricGraph t = generate_tadpole();
  RefinedGraph rg = refine(t, PointSet());
  LabeledMatrix d = geodesic_matrix(t, rg.nodes());
  LabeledMatrix cov = exp_covariance(d, {1.0, 1.0});
  FaithfulnessReport rep = verify_faithfulness(cov, rg, 1e-7);

  json j = json::parse(report_to_json(rep, rg.nodes()));
  CHECK(j.at("check") == "faithfulness");
  CHECK(j.at("pass") == false);
  CHECK(j.at("exhaustive") == true);
  CHECK(j.at("tested").get<long long>() > 0);
  CHECK(j.at("tolerances").at("zero_tol") == 1e-7);
  REQUIRE_FALSE(j.at("violations").empty());

  // Conditioning on vertex 1 alone cancels the 0-2 correlation exactly even
  // though the pair stays connected through vertex 3, so the first
  // counterexample in canonical order is of the vanishing kind.
  const json& first = j.at("violations")[0];
  CHECK(first.at("kind") == "vanishing_despite_connection");
  CHECK(first.at("nodes") == json::array({0, 2}));
  CHECK(first.at("subset") == json::array({1}));
  CHECK(first.at("labels").size() == 2);
  CHECK(first.at("labels")[0] == "0");
  CHECK(std::abs(first.at("value").get<double>()) < 1e-12);

  bool has_separated = false;
  for (const json& v : j.at("violations"))
    if (v.at("kind") == "dependent_despite_separation") has_separated = true;
  CHECK(has_separated);
}

TEST_CASE("independence graphs serialize nodes and edges") {
  MetricGraph t = generate_tadpole();
  LabeledMatrix q = wm_alpha1_precision(t, {1.0, 1.0, 1.0});
  IndependenceGraph ig = independence_graph(q);

  json j = json::parse(independence_graph_to_json(ig));
  CHECK(j.at("check") == "independence-graph");
  CHECK(j.at("pass") == true);
  CHECK(j.at("nodes").size() == 7);
  CHECK(j.at("nodes")[0] == "0");
  CHECK(j.at("edges").size() == 8);
  CHECK(j.at("edges")[0] == json::array({0, 1}));
  CHECK(j.at("tolerances").at("threshold").get<double>() > 0.0);
}
