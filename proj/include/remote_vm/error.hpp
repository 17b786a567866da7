#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace remote_vm {

enum class ErrorKind {
  duplicate_vertex,
  duplicate_edge,
  intra_partition_edge,
  unknown_endpoint,
  unknown_vertex,
  mixed_partition,
  family_too_small,
  empty_graph,
  degenerate_graph,
  no_star_vertex,
  invalid_members,
  invalid_argument,
  iteration_cap_exceeded,
  instance_too_large,
  edge_count_out_of_range,
  unachievable_density,
  no_bipartite_subgraph,
  empty_sample,
  parse_error,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::duplicate_vertex: return "DuplicateVertex";
    case ErrorKind::duplicate_edge: return "DuplicateEdge";
    case ErrorKind::intra_partition_edge: return "IntraPartitionEdge";
    case ErrorKind::unknown_endpoint: return "UnknownEndpoint";
    case ErrorKind::unknown_vertex: return "UnknownVertex";
    case ErrorKind::mixed_partition: return "MixedPartition";
    case ErrorKind::family_too_small: return "FamilyTooSmall";
    case ErrorKind::empty_graph: return "EmptyGraph";
    case ErrorKind::degenerate_graph: return "DegenerateGraph";
    case ErrorKind::no_star_vertex: return "NoStarVertex";
    case ErrorKind::invalid_members: return "InvalidMembers";
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::iteration_cap_exceeded: return "IterationCapExceeded";
    case ErrorKind::instance_too_large: return "InstanceTooLarge";
    case ErrorKind::edge_count_out_of_range: return "EdgeCountOutOfRange";
    case ErrorKind::unachievable_density: return "UnachievableDensity";
    case ErrorKind::no_bipartite_subgraph: return "NoBipartiteSubgraphFound";
    case ErrorKind::empty_sample: return "EmptySample";
    case ErrorKind::parse_error: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace remote_vm
