#pragma once

// Breadth-first state-space construction. States are numbered in BFS order;
// successor generation runs on worker threads one frontier block at a time and
// is merged in frontier order, so the numbering does not depend on the number
// of workers.

#include <cstdint>
#include <limits>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "abc/semantics.hpp"

namespace abc {

struct ExploreLimits {
  std::size_t maxStates = 1'000'000;
  std::size_t maxDepth = std::numeric_limits<std::size_t>::max();
  unsigned workers = 1;
};

/// Compact transition label: enough to match event patterns.
struct EdgeLabel {
  std::uint32_t sender = 0;
  std::int32_t tag = -1;  // index into Lts::tags, -1 when the message has no text tag
  std::vector<std::uint32_t> receivers;

  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
};

struct Edge {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  std::uint32_t label = 0;
};

class Lts {
 public:
  std::vector<std::string> componentNames;
  std::vector<std::string> tags;
  std::vector<EdgeLabel> labels;
  std::vector<Edge> edges;
  std::vector<std::uint64_t> stateHashes;
  std::uint32_t initial = 0;
  bool truncated = false;

  std::size_t stateCount() const { return stateHashes.size(); }

  std::uint32_t internTag(const std::string& tag);
  std::uint32_t internLabel(EdgeLabel label);

  /// Sorts edges by source (stable) and builds the adjacency index. Must be
  /// called after the last edge is added.
  void finalize();
  std::span<const Edge> outgoing(std::uint32_t state) const;
  std::size_t edgeIndex(const Edge& e) const { return static_cast<std::size_t>(&e - edges.data()); }

 private:
  std::vector<std::uint32_t> offsets_;
  std::map<std::string, std::uint32_t> tagIndex_;
  std::map<std::tuple<std::uint32_t, std::int32_t, std::vector<std::uint32_t>>, std::uint32_t> labelIndex_;
};

struct Exploration {
  Lts lts;
  std::vector<SystemState> states;  // indexed like lts.stateHashes
};

/// Evaluation errors propagate as EvalError with the offending state index in
/// the message.
Exploration explore(const Model& model, const ExploreLimits& limits = {});

/// `STATE <id> <hash>` lines, then `TRANS <from> <to> <sender> <tag>` lines.
void exportLts(const Lts& lts, std::ostream& out);

/// Re-derives the full event behind an explored edge.
BroadcastEvent eventOf(const Model& model, const Exploration& ex, const Edge& edge);

}  // namespace abc
