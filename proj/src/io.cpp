#include "gts/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "gts/errors.hpp"
#include "json.hpp"

namespace gts {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  for (auto& line : lines) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t end = line.find(',', start);
    if (end == std::string::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, end - start)));
    start = end + 1;
  }
  return fields;
}

bool parse_number(const std::string& token, double* out) {
  if (token.empty()) return false;
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, *out);
  return ec == std::errc() && ptr == last;
}

bool parse_row(const std::string& line, std::vector<double>* out) {
  out->clear();
  for (const auto& field : split_csv(line)) {
    double v = 0.0;
    if (!parse_number(field, &v)) return false;
    out->push_back(v);
  }
  return true;
}

// Reads a numeric CSV table, skipping one leading header row when its fields
// are not all numeric. Line numbers in errors are 1-based and count the
// header.
Matrix load_numeric_csv(const std::string& path) {
  const std::string text = read_text_file(path);
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError("empty file: " + path);

  std::size_t first_row = 0;
  std::vector<double> row;
  if (!parse_row(lines[0], &row)) first_row = 1;

  std::vector<std::vector<double>> rows;
  for (std::size_t i = first_row; i < lines.size(); ++i) {
    if (lines[i].empty()) {
      throw ParseError("blank line in " + path, static_cast<int>(i + 1));
    }
    if (!parse_row(lines[i], &row)) {
      throw ParseError("non-numeric field in " + path, static_cast<int>(i + 1));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("inconsistent field count in " + path, static_cast<int>(i + 1));
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw ParseError("no data rows in " + path);

  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.front().size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

nlohmann::json parse_json(const std::string& text, const std::string& context) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(context + ": " + e.what());
  }
}

std::vector<std::pair<int, int>> json_edge_list(const nlohmann::json& j, const std::string& context) {
  if (!j.is_array()) throw ParseError(context + ": \"edges\" must be an array");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(j.size());
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 ||
        !item[0].is_number_integer() || !item[1].is_number_integer()) {
      throw ParseError(context + ": each edge must be a pair of integers");
    }
    edges.emplace_back(item[0].get<int>(), item[1].get<int>());
  }
  return edges;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure: " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("write failure: " + path);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  }
  return std::string(buf, ptr);
}

PointSet load_points(const std::string& path) {
  return make_point_set(load_numeric_csv(path));
}

Labeling load_labels(const std::string& path, const std::optional<std::string>& x_label) {
  const std::string text = read_text_file(path);
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError("empty file: " + path);

  std::vector<std::string> tokens;
  tokens.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string tok = trim(lines[i]);
    if (tok.empty()) {
      throw ParseError("blank label line in " + path, static_cast<int>(i + 1));
    }
    if (tok.find(',') != std::string::npos) {
      throw ParseError("label lines must hold a single token in " + path,
                       static_cast<int>(i + 1));
    }
    tokens.push_back(std::move(tok));
  }

  std::map<std::string, int> counts;
  for (const auto& tok : tokens) ++counts[tok];
  if (counts.size() != 2) {
    throw LabelCardinalityError("need exactly 2 distinct labels, got " +
                                std::to_string(counts.size()) + " in " + path);
  }

  std::string zero = counts.begin()->first;
  if (x_label) {
    if (counts.find(*x_label) == counts.end()) {
      throw LabelCardinalityError("label \"" + *x_label + "\" does not occur in " + path);
    }
    zero = *x_label;
  }

  std::vector<std::uint8_t> labels(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    labels[i] = tokens[i] == zero ? 0 : 1;
  }
  return make_labeling(std::move(labels));
}

DistanceMatrix load_distance_matrix(const std::string& path) {
  return make_distance_matrix(load_numeric_csv(path));
}

SimilarityGraph load_graph(const std::string& path) {
  const auto j = parse_json(read_text_file(path), path);
  if (!j.is_object() || !j.contains("n_nodes") || !j.contains("edges")) {
    throw ParseError(path + ": expected an object with \"n_nodes\" and \"edges\"");
  }
  if (!j["n_nodes"].is_number_integer()) {
    throw ParseError(path + ": \"n_nodes\" must be an integer");
  }
  const int n_nodes = j["n_nodes"].get<int>();
  const auto pairs = json_edge_list(j["edges"], path);
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) edges.push_back(Edge{a, b});
  return make_graph(n_nodes, std::move(edges));
}

std::vector<DirectedGraphSample> load_network_samples(const std::string& path) {
  const std::string text = read_text_file(path);
  const auto lines = split_lines(text);
  std::vector<DirectedGraphSample> samples;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) {
      throw ParseError("blank line in " + path, static_cast<int>(i + 1));
    }
    nlohmann::json j;
    try {
      j = parse_json(lines[i], path + ":" + std::to_string(i + 1));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), static_cast<int>(i + 1));
    }
    if (!j.is_object() || !j.contains("n_actors") || !j.contains("edges")) {
      throw ParseError(path + ": expected \"n_actors\" and \"edges\"",
                       static_cast<int>(i + 1));
    }
    if (!j["n_actors"].is_number_integer()) {
      throw ParseError(path + ": \"n_actors\" must be an integer", static_cast<int>(i + 1));
    }
    samples.push_back(make_directed_graph_sample(j["n_actors"].get<int>(),
                                                 json_edge_list(j["edges"], path)));
  }
  if (samples.empty()) throw ParseError("no samples in " + path);
  return samples;
}

void save_points(const PointSet& points, const std::string& path) {
  std::string out;
  for (int i = 0; i < points.n_points(); ++i) {
    for (int j = 0; j < points.dim(); ++j) {
      if (j) out += ',';
      out += format_double(points.data(i, j));
    }
    out += '\n';
  }
  write_text_file(path, out);
}

void save_labels(const Labeling& labeling, const std::string& path) {
  std::string out;
  for (auto lab : labeling.labels) {
    out += lab == 0 ? '0' : '1';
    out += '\n';
  }
  write_text_file(path, out);
}

void save_distance_matrix(const DistanceMatrix& dist, const std::string& path) {
  std::string out;
  const std::size_t n = dist.values.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out += ',';
      out += format_double(dist.values(i, j));
    }
    out += '\n';
  }
  write_text_file(path, out);
}

std::string graph_to_json(const SimilarityGraph& graph) {
  nlohmann::ordered_json j;
  j["n_nodes"] = graph.n_nodes;
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : graph.edges) {
    edges.push_back(nlohmann::ordered_json::array({e.a, e.b}));
  }
  j["edges"] = std::move(edges);
  return j.dump() + "\n";
}

void save_graph(const SimilarityGraph& graph, const std::string& path) {
  write_text_file(path, graph_to_json(graph));
}

}  // namespace gts
