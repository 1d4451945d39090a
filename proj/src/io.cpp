#include "plsem/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "plsem/error.hpp"

namespace plsem {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + msg);
}

// Non-empty lines with comments stripped, paired with 1-based line numbers.
std::vector<std::pair<int, std::string>> content_lines(const std::string& text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.emplace_back(no, line);
  }
  return out;
}

int parse_int(const std::string& tok, int line) {
  char* end = nullptr;
  long v = std::strtol(tok.c_str(), &end, 10);
  if (tok.empty() || *end != '\0') fail(line, "expected an integer, got '" + tok + "'");
  return static_cast<int>(v);
}

// Reads "key N" from a line.
bool header(const std::string& line, const char* key, int lineno, int& value) {
  std::istringstream ls(line);
  std::string k, v, extra;
  ls >> k;
  if (k != key) return false;
  if (!(ls >> v) || (ls >> extra)) fail(lineno, std::string("expected '") + key + " <N>'");
  value = parse_int(v, lineno);
  if (value < 0) fail(lineno, "negative count");
  return true;
}

struct GraphBuilder {
  int p = -1;
  std::vector<Edge> directed;
  std::vector<Edge> undirected;

  void edge_line(const std::string& line, int lineno) {
    std::istringstream ls(line);
    std::string a, op, b, extra;
    if (!(ls >> a >> op >> b) || (ls >> extra)) fail(lineno, "expected 'i -> j' or 'i -- j'");
    Edge e{parse_int(a, lineno), parse_int(b, lineno)};
    if (op == "->")
      directed.push_back(e);
    else if (op == "--")
      undirected.push_back({std::min(e.from, e.to), std::max(e.from, e.to)});
    else
      fail(lineno, "unknown edge operator '" + op + "'");
  }

  Pdag build() const { return Pdag(p, directed, undirected); }
};

Dag to_dag(const Pdag& g) {
  if (!g.is_fully_directed()) throw Error(ErrorKind::ParseError, "expected a DAG but found undirected edges");
  return g.to_dag();
}

std::string fmt_double(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

const char* kind_name(AtomKind k) {
  switch (k) {
    case AtomKind::Identity: return "identity";
    case AtomKind::Power: return "power";
    case AtomKind::Cos: return "cos";
    case AtomKind::Tanh: return "tanh";
  }
  return "identity";
}

template <class T>
T field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::ParseError, std::string("field '") + key + "' has the wrong type");
  }
}

FunctionAtom parse_atom(const json& t) {
  auto kind = field<std::string>(t, "kind");
  if (kind == "identity") return FunctionAtom::identity();
  if (kind == "power") return FunctionAtom::power(field<int>(t, "k"));
  if (kind == "cos") return FunctionAtom::cos_wave(field<double>(t, "c1"), field<double>(t, "c2"));
  if (kind == "tanh") return FunctionAtom::tanh_wave(field<double>(t, "c1"), field<double>(t, "c2"));
  throw Error(ErrorKind::ParseError, "unknown term kind '" + kind + "'");
}

}  // namespace

Pdag parse_graph(const std::string& text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw Error(ErrorKind::ParseError, "empty graph file");
  GraphBuilder b;
  if (!header(lines[0].second, "p", lines[0].first, b.p)) fail(lines[0].first, "expected 'p <N>'");
  for (std::size_t k = 1; k < lines.size(); ++k) b.edge_line(lines[k].second, lines[k].first);
  return b.build();
}

Dag parse_dag(const std::string& text) { return to_dag(parse_graph(text)); }

std::string format_graph(const Pdag& g) {
  std::ostringstream out;
  out << "p " << g.node_count() << "\n";
  for (const Edge& e : g.directed_edges()) out << e.from << " -> " << e.to << "\n";
  for (const Edge& e : g.undirected_edges()) out << e.from << " -- " << e.to << "\n";
  return out.str();
}

std::string format_graph(const Dag& d) { return format_graph(Pdag::from_dag(d)); }

std::vector<Dag> parse_dag_list(const std::string& text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw Error(ErrorKind::ParseError, "empty DAG list");
  int count = 0;
  if (!header(lines[0].second, "dags", lines[0].first, count)) fail(lines[0].first, "expected 'dags <K>'");
  std::vector<GraphBuilder> blocks;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    int p = 0;
    if (header(lines[k].second, "p", lines[k].first, p)) {
      blocks.emplace_back();
      blocks.back().p = p;
    } else {
      if (blocks.empty()) fail(lines[k].first, "edge before the first 'p <N>' line");
      blocks.back().edge_line(lines[k].second, lines[k].first);
    }
  }
  if (static_cast<int>(blocks.size()) != count)
    throw Error(ErrorKind::ParseError, "header announces " + std::to_string(count) + " DAGs, found " +
                                           std::to_string(blocks.size()));
  std::vector<Dag> out;
  for (const auto& b : blocks) out.push_back(to_dag(b.build()));
  return out;
}

std::string format_dag_list(const std::vector<Dag>& dags) {
  std::string out = "dags " + std::to_string(dags.size()) + "\n";
  for (std::size_t k = 0; k < dags.size(); ++k) {
    out += "# dag " + std::to_string(k + 1) + "\n";
    out += format_graph(dags[k]);
  }
  return out;
}

Plsem parse_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
  const int p = field<int>(doc, "p");
  if (p < 0) throw Error(ErrorKind::ParseError, "negative p");
  auto mu = field<std::vector<double>>(doc, "mu");
  auto sigma2 = field<std::vector<double>>(doc, "sigma2");
  std::map<Edge, EdgeFunction> fns;
  std::vector<Edge> edges;
  const json& list = doc.contains("edges") ? doc.at("edges") : json::array();
  if (!list.is_array()) throw Error(ErrorKind::ParseError, "'edges' must be an array");
  for (const json& e : list) {
    Edge key{field<int>(e, "from"), field<int>(e, "to")};
    const json& terms = e.contains("terms") ? e.at("terms") : json();
    if (!terms.is_array()) throw Error(ErrorKind::ParseError, "edge terms must be an array");
    std::vector<Term> ts;
    for (const json& t : terms) ts.push_back({field<double>(t, "weight"), parse_atom(t)});
    if (!fns.emplace(key, EdgeFunction(std::move(ts))).second)
      throw Error(ErrorKind::ParseError, "edge " + std::to_string(key.from) + " -> " + std::to_string(key.to) +
                                             " listed twice");
    edges.push_back(key);
  }
  return Plsem(Dag(p, edges), std::move(mu), std::move(sigma2), std::move(fns));
}

std::string format_model(const Plsem& m) {
  json doc;
  doc["p"] = m.node_count();
  doc["mu"] = m.mu();
  doc["sigma2"] = m.sigma2();
  json edges = json::array();
  for (const auto& [e, f] : m.functions()) {
    json terms = json::array();
    for (const Term& t : f.terms()) {
      json jt{{"kind", kind_name(t.atom.kind)}, {"weight", t.weight}};
      if (t.atom.kind == AtomKind::Power) jt["k"] = t.atom.exponent;
      if (t.atom.kind == AtomKind::Cos || t.atom.kind == AtomKind::Tanh) {
        jt["c1"] = t.atom.c1;
        jt["c2"] = t.atom.c2;
      }
      terms.push_back(std::move(jt));
    }
    edges.push_back({{"from", e.from}, {"to", e.to}, {"terms", std::move(terms)}});
  }
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

DataMatrix parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) {
      while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
      while (!cell.empty() && cell.front() == ' ') cell.erase(0, 1);
      cells.push_back(cell);
    }
    return cells;
  };
  std::vector<std::string> head;
  while (head.empty() && std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") != std::string::npos) head = split(line);
  }
  if (head.empty()) throw Error(ErrorKind::ParseError, "empty CSV");
  for (std::size_t k = 0; k < head.size(); ++k)
    if (head[k] != "X" + std::to_string(k + 1)) fail(lineno, "header must be X1..Xp, got '" + head[k] + "'");
  std::vector<double> values;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split(line);
    if (cells.size() != head.size()) fail(lineno, "expected " + std::to_string(head.size()) + " values");
    for (const auto& c : cells) {
      char* end = nullptr;
      double v = std::strtod(c.c_str(), &end);
      if (c.empty() || *end != '\0') fail(lineno, "not a number: '" + c + "'");
      values.push_back(v);
    }
    ++rows;
  }
  DataMatrix x(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(head.size()));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < head.size(); ++c)
      x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r * head.size() + c];
  return x;
}

std::string format_csv(const DataMatrix& x) {
  std::string out;
  for (Eigen::Index c = 0; c < x.cols(); ++c) out += (c ? ",X" : "X") + std::to_string(c + 1);
  out += "\n";
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      if (c) out += ",";
      out += fmt_double(x(r, c), "%.17g");
    }
    out += "\n";
  }
  return out;
}

std::string format_trace(const std::vector<DecisionRecord>& trace) {
  std::string out;
  for (const auto& r : trace)
    out += "edge " + std::to_string(r.edge.from) + "->" + std::to_string(r.edge.to) +
           " delta=" + fmt_double(r.delta, "%.9g") + " verdict=" + verdict_name(r.verdict) + "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path + "'");
}

}  // namespace plsem
