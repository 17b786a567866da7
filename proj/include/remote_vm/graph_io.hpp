#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "remote_vm/graph.hpp"

namespace remote_vm {

// Canonical document: {"p1": [ids], "p2": [ids], "edges": [[u, v], ...]}.
inline nlohmann::json to_json(const BipartiteGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"p1", g.vertices(Side::p1)}, {"p2", g.vertices(Side::p2)}, {"edges", std::move(edges)}};
}

namespace detail {

inline std::vector<VertexId> read_ids(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_array()) {
    throw Error(ErrorKind::parse_error, std::string("missing id list \"") + key + "\"");
  }
  std::vector<VertexId> ids;
  for (const auto& v : doc.at(key)) {
    if (!v.is_number_unsigned()) throw Error(ErrorKind::parse_error, std::string("non-integer id in \"") + key + "\"");
    ids.push_back(v.get<VertexId>());
  }
  return ids;
}

inline std::vector<Edge> read_edges(const nlohmann::json& doc) {
  if (!doc.contains("edges") || !doc.at("edges").is_array()) throw Error(ErrorKind::parse_error, "missing \"edges\"");
  std::vector<Edge> edges;
  for (const auto& e : doc.at("edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
      throw Error(ErrorKind::parse_error, "edge entry " + e.dump() + " is not a pair of ids");
    }
    edges.emplace_back(e[0].get<VertexId>(), e[1].get<VertexId>());
  }
  return edges;
}

}  // namespace detail

inline BipartiteGraph bipartite_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::parse_error, "graph document must be an object");
  auto edges = detail::read_edges(doc);
  return BipartiteGraph::build(detail::read_ids(doc, "p1"), detail::read_ids(doc, "p2"), edges);
}

/// Edge-list text:
///   P1: 1 2 4
///   P2: 3 5 6
///   1 3
///   ...
/// '#' starts a comment.
inline BipartiteGraph parse_edge_list(std::string_view text) {
  std::vector<VertexId> p1, p2;
  std::vector<Edge> edges;
  bool have_p1 = false, have_p2 = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": " + why);
  };
  auto read_ids = [&](std::istringstream& ls, std::vector<VertexId>& out) {
    long long id;
    while (ls >> id) {
      if (id < 0 || id > static_cast<long long>(UINT32_MAX)) fail("id out of range");
      out.push_back(static_cast<VertexId>(id));
    }
    if (!ls.eof()) fail("malformed id list");
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "P1:") {
      if (have_p1) fail("P1 declared twice");
      read_ids(ls, p1);
      have_p1 = true;
    } else if (head == "P2:") {
      if (have_p2) fail("P2 declared twice");
      read_ids(ls, p2);
      have_p2 = true;
    } else {
      if (!have_p1 || !have_p2) fail("edge before P1/P2 declarations");
      std::istringstream es(line);
      long long u, v;
      std::string extra;
      if (!(es >> u >> v) || (es >> extra) || u < 0 || v < 0) fail("expected \"u v\"");
      edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    }
  }
  if (!have_p1 || !have_p2) throw Error(ErrorKind::parse_error, "missing P1/P2 declaration");
  return BipartiteGraph::build(std::move(p1), std::move(p2), edges);
}

inline std::string to_edge_list(const BipartiteGraph& g) {
  std::ostringstream out;
  for (Side s : {Side::p1, Side::p2}) {
    out << "P" << number(s) << ":";
    for (auto v : g.vertices(s)) out << ' ' << v;
    out << '\n';
  }
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

/// Accepts either format; a document whose first significant character is
/// '{' is read as JSON.
inline BipartiteGraph parse_bipartite(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::parse_error, e.what());
    }
    return bipartite_from_json(doc);
  }
  return parse_edge_list(text);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse_error, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::invalid_argument, "cannot write " + path);
  out << content;
}

inline BipartiteGraph load_bipartite(const std::string& path) { return parse_bipartite(read_file(path)); }

// General graphs: {"vertices": [ids], "edges": [[u, v], ...]}.
inline nlohmann::json to_json(const GeneralGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"vertices", g.vertices()}, {"edges", std::move(edges)}};
}

inline GeneralGraph general_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::parse_error, "graph document must be an object");
  auto ids = detail::read_ids(doc, "vertices");
  GeneralGraph g(ids);
  for (auto [u, v] : detail::read_edges(doc)) {
    if (!g.add_edge(u, v)) {
      throw Error(ErrorKind::duplicate_edge, "edge (" + std::to_string(u) + "," + std::to_string(v) + ") repeated");
    }
  }
  return g;
}

}  // namespace remote_vm
