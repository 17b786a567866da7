#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "remote_vm/extraction.hpp"
#include "remote_vm/graph_io.hpp"

namespace remote_vm {

inline StepKind step_kind_from_string(const std::string& s) {
  for (auto k : {StepKind::star_repair, StepKind::seed_a, StepKind::seed_b, StepKind::direct_add, StepKind::overlap_add,
                 StepKind::swap, StepKind::guard_reject}) {
    if (to_string(k) == s) return k;
  }
  throw Error(ErrorKind::parse_error, "unknown trace step kind \"" + s + "\"");
}

inline nlohmann::json to_json(const ExtractionResult& r) {
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : r.ghz_groups) groups.push_back({g.member, g.partners});
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& step : r.trace) {
    nlohmann::json s{{"kind", to_string(step.kind)}, {"removed", step.removed}, {"members_after", step.members_after}};
    s["focus"] = step.focus ? nlohmann::json(*step.focus) : nlohmann::json(nullptr);
    trace.push_back(std::move(s));
  }
  return {
      {"n", r.n},
      {"volume", r.volume},
      {"seed_volume", r.seed_volume},
      {"host_partition", number(r.host)},
      {"restart", r.restart},
      {"members", r.members},
      {"ghz_groups", std::move(groups)},
      {"trace", std::move(trace)},
      {"final_graph", to_json(r.final_graph)},
  };
}

inline std::string dump_result(const ExtractionResult& r) { return to_json(r).dump(2) + "\n"; }

inline ExtractionResult result_from_json(const nlohmann::json& doc) {
  try {
    ExtractionResult r;
    r.n = doc.at("n").get<int>();
    r.volume = doc.at("volume").get<std::size_t>();
    r.seed_volume = doc.at("seed_volume").get<std::size_t>();
    r.host = doc.value("host_partition", 1) == 2 ? Side::p2 : Side::p1;
    r.restart = doc.value("restart", 0);
    r.members = doc.at("members").get<VertexSet>();
    for (const auto& g : doc.at("ghz_groups")) {
      r.ghz_groups.push_back({g.at(0).get<VertexId>(), g.at(1).get<std::vector<VertexId>>()});
    }
    for (const auto& s : doc.at("trace")) {
      TraceStep step{step_kind_from_string(s.at("kind").get<std::string>()), std::nullopt,
                     s.at("removed").get<VertexSet>(), s.at("members_after").get<VertexSet>()};
      if (s.contains("focus") && !s.at("focus").is_null()) step.focus = s.at("focus").get<VertexId>();
      r.trace.push_back(std::move(step));
    }
    r.final_graph = bipartite_from_json(doc.at("final_graph"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse_error, std::string("result document: ") + e.what());
  }
}

inline ExtractionResult parse_result(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::parse_error, e.what());
  }
  return result_from_json(doc);
}

}  // namespace remote_vm
