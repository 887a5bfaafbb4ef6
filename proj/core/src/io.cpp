#include "mgfield/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

namespace mgfield {

namespace {

using nlohmann::json;

json parse_json_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw BadParams(std::string(what) + ": " + e.what());
  }
}

void require_only_keys(const json& j, std::initializer_list<const char*> keys,
                       const char* what) {
  if (!j.is_object()) throw BadParams(std::string(what) + " must be a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : keys)
      if (item.key() == k) known = true;
    if (!known)
      throw BadParams(std::string(what) + " has unknown key \"" + item.key() + "\"");
  }
  for (const char* k : keys)
    if (!j.contains(k)) throw BadParams(std::string(what) + " is missing key \"" + k + "\"");
}

int require_int(const json& j, const char* key, const char* what) {
  const json& v = j.at(key);
  if (!v.is_number_integer())
    throw BadParams(std::string(what) + " key \"" + key + "\" must be an integer");
  return v.get<int>();
}

double require_number(const json& j, const char* key, const char* what) {
  const json& v = j.at(key);
  if (!v.is_number())
    throw BadParams(std::string(what) + " key \"" + key + "\" must be a number");
  return v.get<double>();
}

std::string fmt_entry(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    std::string line =
        nl == std::string::npos ? text.substr(start) : text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(std::move(line));
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
  return lines;
}

double parse_double(const std::string& cell, const char* what) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  double x = std::strtod(begin, &end);
  if (end != begin + cell.size() || cell.empty())
    throw BadParams(std::string(what) + ": bad number \"" + cell + "\"");
  return x;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

GraphPoint parse_label(const std::string& s) {
  if (all_digits(s)) return GraphPoint::at_vertex(std::stoi(s));
  if (s.size() >= 4 && s[0] == 'e') {
    size_t colon = s.find(':');
    if (colon != std::string::npos && colon > 1) {
      std::string edge_part = s.substr(1, colon - 1);
      if (all_digits(edge_part))
        return GraphPoint::on_edge(std::stoi(edge_part),
                                   parse_double(s.substr(colon + 1), "point label"));
    }
  }
  throw BadParams("bad point label \"" + s + "\"");
}

json violations_to_json(const std::vector<Violation>& violations) {
  json arr = json::array();
  for (const Violation& v : violations) {
    json item;
    item["kind"] = v.kind;
    item["nodes"] = v.nodes;
    item["value"] = v.value;
    if (!v.detail.empty()) item["detail"] = v.detail;
    arr.push_back(std::move(item));
  }
  return arr;
}

json pairs_to_json(const std::vector<std::pair<std::string, double>>& pairs) {
  json obj = json::object();
  for (const auto& [k, v] : pairs) obj[k] = v;
  return obj;
}

}  // namespace

std::pair<int, std::vector<Edge>> parse_graph_fields(const std::string& text) {
  json j = parse_json_text(text, "graph");
  require_only_keys(j, {"vertices", "edges"}, "graph");
  int n = require_int(j, "vertices", "graph");
  const json& edges_json = j.at("edges");
  if (!edges_json.is_array()) throw BadParams("graph key \"edges\" must be an array");

  std::vector<Edge> edges;
  for (const json& ej : edges_json) {
    require_only_keys(ej, {"id", "from", "to", "length"}, "edge");
    edges.push_back({require_int(ej, "id", "edge"), require_int(ej, "from", "edge"),
                     require_int(ej, "to", "edge"), require_number(ej, "length", "edge")});
  }
  return {n, std::move(edges)};
}

MetricGraph parse_graph_json(const std::string& text) {
  auto [n, edges] = parse_graph_fields(text);
  return MetricGraph(n, std::move(edges));
}

std::string graph_to_json(const MetricGraph& g) {
  json j;
  j["vertices"] = g.vertex_count();
  json edges = json::array();
  for (const Edge& e : g.edges()) {
    json ej;
    ej["id"] = e.id;
    ej["from"] = e.u;
    ej["to"] = e.v;
    ej["length"] = e.length;
    edges.push_back(std::move(ej));
  }
  j["edges"] = std::move(edges);
  return j.dump(2) + "\n";
}

std::vector<GraphPoint> parse_points_json(const std::string& text) {
  json j = parse_json_text(text, "points");
  if (!j.is_array()) throw BadParams("points must be a JSON array");
  std::vector<GraphPoint> pts;
  for (const json& pj : j) {
    if (!pj.is_object()) throw BadParams("each point must be a JSON object");
    if (pj.contains("vertex")) {
      require_only_keys(pj, {"vertex"}, "vertex point");
      pts.push_back(GraphPoint::at_vertex(require_int(pj, "vertex", "vertex point")));
    } else {
      require_only_keys(pj, {"edge", "t"}, "edge point");
      pts.push_back(GraphPoint::on_edge(require_int(pj, "edge", "edge point"),
                                        require_number(pj, "t", "edge point")));
    }
  }
  return pts;
}

std::string points_to_json(const PointSet& pts) {
  json arr = json::array();
  for (const GraphPoint& p : pts) {
    json pj;
    if (p.is_vertex()) {
      pj["vertex"] = p.vertex();
    } else {
      pj["edge"] = p.edge();
      pj["t"] = p.offset();
    }
    arr.push_back(std::move(pj));
  }
  return arr.dump(2) + "\n";
}

std::string matrix_to_csv(const LabeledMatrix& m) {
  std::vector<std::string> labels = m.labels().labels();
  std::string out = "label";
  for (const std::string& l : labels) {
    out += ',';
    out += l;
  }
  out += '\n';
  for (int i = 0; i < m.size(); ++i) {
    out += labels[static_cast<size_t>(i)];
    for (int j = 0; j < m.size(); ++j) {
      out += ',';
      out += fmt_entry(m(i, j));
    }
    out += '\n';
  }
  return out;
}

LabeledMatrix parse_matrix_csv(const std::string& text, MatrixKind kind) {
  std::vector<std::string> lines = split_lines(text);
  if (lines.empty()) throw BadParams("matrix CSV is empty");

  std::vector<std::string> header = split_csv_line(lines[0]);
  if (header.empty() || header[0] != "label")
    throw BadParams("matrix CSV must start with a \"label\" corner cell");
  size_t n = header.size() - 1;
  if (n == 0) throw BadParams("matrix CSV has no columns");
  if (lines.size() != n + 1)
    throw BadParams("matrix CSV has " + std::to_string(lines.size() - 1) + " rows for " +
                    std::to_string(n) + " columns");

  std::vector<GraphPoint> pts;
  for (size_t k = 1; k < header.size(); ++k) pts.push_back(parse_label(header[k]));

  Eigen::MatrixXd entries(n, n);
  for (size_t i = 0; i < n; ++i) {
    std::vector<std::string> cells = split_csv_line(lines[i + 1]);
    if (cells.size() != n + 1)
      throw BadParams("matrix CSV row " + std::to_string(i) + " has " +
                      std::to_string(cells.size() - 1) + " entries");
    if (cells[0] != header[i + 1])
      throw BadParams("matrix CSV row label \"" + cells[0] + "\" does not match column \"" +
                      header[i + 1] + "\"");
    for (size_t j = 0; j < n; ++j)
      entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          parse_double(cells[j + 1], "matrix entry");
  }
  return LabeledMatrix(PointSet::from_sorted(std::move(pts)), std::move(entries), kind);
}

std::string samples_to_csv(const PointSet& labels, const Eigen::MatrixXd& columns) {
  if (labels.size() != static_cast<int>(columns.rows()))
    throw BadParams("sample matrix row count does not match label count");
  std::string out = "label";
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    out += ",s";
    out += std::to_string(j);
  }
  out += '\n';
  std::vector<std::string> names = labels.labels();
  for (Eigen::Index i = 0; i < columns.rows(); ++i) {
    out += names[static_cast<size_t>(i)];
    for (Eigen::Index j = 0; j < columns.cols(); ++j) {
      out += ',';
      out += fmt_entry(columns(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string report_to_json(const CheckReport& r) {
  json j;
  j["check"] = r.check;
  j["pass"] = r.pass;
  j["violations"] = violations_to_json(r.violations);
  j["params"] = pairs_to_json(r.params);
  j["tolerances"] = pairs_to_json(r.tolerances);
  if (!r.note.empty()) j["note"] = r.note;
  return j.dump(2) + "\n";
}

std::string report_to_json(const FaithfulnessReport& r, const PointSet& labels) {
  json j;
  j["check"] = "faithfulness";
  j["pass"] = r.pass;
  j["exhaustive"] = r.exhaustive;
  j["tested"] = r.tested;
  j["params"] = json::object();
  j["tolerances"] = pairs_to_json({{"zero_tol", r.zero_tol}});
  json arr = json::array();
  for (const FaithfulnessCounterexample& c : r.counterexamples) {
    json item;
    item["kind"] = c.separated ? "dependent_despite_separation" : "vanishing_despite_connection";
    item["nodes"] = std::vector<int>{c.t, c.s};
    item["labels"] = std::vector<std::string>{labels[c.t].label(), labels[c.s].label()};
    item["subset"] = c.subset;
    item["value"] = c.partial_corr;
    arr.push_back(std::move(item));
  }
  j["violations"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string independence_graph_to_json(const IndependenceGraph& g) {
  json j;
  j["check"] = "independence-graph";
  j["pass"] = true;
  j["violations"] = json::array();
  j["params"] = json::object();
  j["tolerances"] = pairs_to_json({{"threshold", g.threshold}});
  j["nodes"] = g.nodes.labels();
  json edges = json::array();
  for (const auto& [a, b] : g.edges) edges.push_back(std::vector<int>{a, b});
  j["edges"] = std::move(edges);
  return j.dump(2) + "\n";
}

}  // namespace mgfield
