#pragma once

// Text formats.
//
// Graph:    "p N" then one edge per line, "i -> j" or "i -- j"; blank lines
//           and '#' comments are ignored.
// DAG list: "dags K" then K graph blocks, each starting with "p N".
// Model:    JSON {"p", "mu", "sigma2", "edges": [{"from", "to", "terms":
//           [{"kind", "k", "c1", "c2", "weight"}]}]}.
// Data:     CSV with header X1..Xp.

#include <string>
#include <vector>

#include "plsem/estimators.hpp"
#include "plsem/graph.hpp"
#include "plsem/model.hpp"

namespace plsem {

// All parsers throw ParseError on malformed input; graph and model parsers
// also propagate construction errors (CyclicGraph, InvalidArgument).
Pdag parse_graph(const std::string& text);
// Throws ParseError if the graph has undirected edges.
Dag parse_dag(const std::string& text);
std::string format_graph(const Pdag& g);
std::string format_graph(const Dag& d);

std::vector<Dag> parse_dag_list(const std::string& text);
std::string format_dag_list(const std::vector<Dag>& dags);

Plsem parse_model(const std::string& text);
std::string format_model(const Plsem& m);

DataMatrix parse_csv(const std::string& text);
std::string format_csv(const DataMatrix& x);

// One line per decision: "edge i->j delta=<r> verdict=keep|undirect".
std::string format_trace(const std::vector<DecisionRecord>& trace);

// Throw IoError.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace plsem
