#include "abc/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace abc {

std::uint32_t Lts::internTag(const std::string& tag) {
  auto [it, fresh] = tagIndex_.emplace(tag, static_cast<std::uint32_t>(tags.size()));
  if (fresh) tags.push_back(tag);
  return it->second;
}

std::uint32_t Lts::internLabel(EdgeLabel label) {
  auto key = std::make_tuple(label.sender, label.tag, label.receivers);
  auto [it, fresh] = labelIndex_.emplace(std::move(key), static_cast<std::uint32_t>(labels.size()));
  if (fresh) labels.push_back(std::move(label));
  return it->second;
}

void Lts::finalize() {
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.from < b.from; });
  offsets_.assign(stateCount() + 1, 0);
  for (const auto& e : edges) ++offsets_[e.from + 1];
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
}

std::span<const Edge> Lts::outgoing(std::uint32_t state) const {
  return {edges.data() + offsets_[state], offsets_[state + 1] - offsets_[state]};
}

namespace {

struct IndexHash {
  const std::vector<SystemState>* states;
  std::size_t operator()(std::uint32_t i) const { return static_cast<std::size_t>((*states)[i].hash()); }
};

struct IndexEq {
  const std::vector<SystemState>* states;
  bool operator()(std::uint32_t a, std::uint32_t b) const { return (*states)[a] == (*states)[b]; }
};

template <typename Fn>
void runParallel(std::size_t n, unsigned workers, Fn&& fn) {
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  pool.reserve(count);
  for (unsigned w = 0; w < count; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
    });
}

EdgeLabel labelOf(Lts& lts, const BroadcastEvent& ev) {
  EdgeLabel l;
  l.sender = static_cast<std::uint32_t>(ev.sender);
  if (!ev.message.empty() && ev.message.front().kind() == ValueKind::Text)
    l.tag = static_cast<std::int32_t>(lts.internTag(ev.message.front().asText()));
  for (const auto& r : ev.receivers) l.receivers.push_back(static_cast<std::uint32_t>(r.component));
  return l;
}

constexpr std::size_t kBlock = 512;

}  // namespace

Exploration explore(const Model& model, const ExploreLimits& limits) {
  Exploration ex;
  Lts& lts = ex.lts;
  std::vector<SystemState>& states = ex.states;
  lts.componentNames = model.componentNames();

  std::unordered_set<std::uint32_t, IndexHash, IndexEq> index(1024, IndexHash{&states}, IndexEq{&states});
  states.push_back(model.initialState());
  index.insert(0);
  lts.stateHashes.push_back(states[0].hash());
  lts.initial = 0;

  std::vector<std::uint32_t> frontier{0};
  const unsigned workers = std::max(1u, limits.workers);
  bool stop = false;
  for (std::size_t depth = 0; !frontier.empty() && !stop; ++depth) {
    if (depth >= limits.maxDepth) {
      lts.truncated = true;
      break;
    }
    std::vector<std::uint32_t> next;
    for (std::size_t b = 0; b < frontier.size() && !stop; b += kBlock) {
      const std::size_t n = std::min(kBlock, frontier.size() - b);
      std::vector<std::vector<Transition>> succ(n);
      std::vector<std::exception_ptr> errors(n);
      runParallel(n, workers, [&](std::size_t k) {
        try {
          succ[k] = model.systemSteps(states[frontier[b + k]]);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      });

      for (std::size_t k = 0; k < n && !stop; ++k) {
        const std::uint32_t from = frontier[b + k];
        if (errors[k]) {
          try {
            std::rethrow_exception(errors[k]);
          } catch (const EvalError& e) {
            throw EvalError("in state " + std::to_string(from) + ": " + e.what(), e.span());
          }
        }
        const std::size_t firstEdge = lts.edges.size();
        for (auto& t : succ[k]) {
          states.push_back(std::move(t.target));
          const auto candidate = static_cast<std::uint32_t>(states.size() - 1);
          auto [it, fresh] = index.insert(candidate);
          std::uint32_t to = *it;
          if (fresh) {
            if (states.size() > limits.maxStates) {
              index.erase(it);
              states.pop_back();
              lts.truncated = true;
              stop = true;
              break;
            }
            lts.stateHashes.push_back(states.back().hash());
            next.push_back(to);
          } else {
            states.pop_back();
          }
          const std::uint32_t label = lts.internLabel(labelOf(lts, t.event));
          // Receiver branches that differ only in bindings collapse into one edge.
          const bool duplicate = std::any_of(lts.edges.begin() + static_cast<std::ptrdiff_t>(firstEdge),
                                             lts.edges.end(),
                                             [&](const Edge& e) { return e.to == to && e.label == label; });
          if (!duplicate) lts.edges.push_back(Edge{from, to, label});
        }
      }
    }
    frontier = std::move(next);
  }
  lts.finalize();
  return ex;
}

void exportLts(const Lts& lts, std::ostream& out) {
  char buf[32];
  for (std::size_t i = 0; i < lts.stateCount(); ++i) {
    std::snprintf(buf, sizeof buf, "%016" PRIx64, lts.stateHashes[i]);
    out << "STATE " << i << ' ' << buf << '\n';
  }
  for (const auto& e : lts.edges) {
    const EdgeLabel& l = lts.labels[e.label];
    out << "TRANS " << e.from << ' ' << e.to << ' ' << lts.componentNames[l.sender] << ' '
        << (l.tag < 0 ? std::string("-") : quoteString(lts.tags[static_cast<std::size_t>(l.tag)])) << '\n';
  }
}

BroadcastEvent eventOf(const Model& model, const Exploration& ex, const Edge& edge) {
  const EdgeLabel& want = ex.lts.labels[edge.label];
  for (auto& t : model.systemSteps(ex.states[edge.from])) {
    if (!(t.target == ex.states[edge.to]) || t.event.sender != want.sender) continue;
    if (t.event.receivers.size() != want.receivers.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < want.receivers.size() && same; ++i)
      same = t.event.receivers[i].component == want.receivers[i];
    const bool textTag = !t.event.message.empty() && t.event.message.front().kind() == ValueKind::Text;
    if (want.tag < 0)
      same = same && !textTag;
    else
      same = same && textTag && t.event.message.front().asText() == ex.lts.tags[static_cast<std::size_t>(want.tag)];
    if (same) return std::move(t.event);
  }
  throw std::logic_error("edge " + std::to_string(edge.from) + "->" + std::to_string(edge.to) +
                         " is not a transition of the model");
}

}  // namespace abc
