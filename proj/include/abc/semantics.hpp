#pragma once

// Two-level transition relation of AbC. Component level: output (Brd),
// reception (Rcv) and discard (FBrd/FRcv) through choice, parallel,
// awareness and process calls. System level: one component broadcasts, every
// other component either receives (must, when it can) or discards, all in a
// single atomic step (Com/Sync with iComp/fComp).

#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "abc/env.hpp"
#include "abc/eval.hpp"
#include "abc/term.hpp"

namespace abc {

struct ComponentInfo {
  std::string name;
  std::set<std::string> interface;
};

class ComponentState {
 public:
  ComponentState(std::shared_ptr<const ComponentInfo> info, std::shared_ptr<const AttributeEnv> env, Proc proc);

  const ComponentInfo& info() const { return *info_; }
  const std::shared_ptr<const ComponentInfo>& infoPtr() const { return info_; }
  const std::string& name() const { return info_->name; }
  const AttributeEnv& env() const { return *env_; }
  const std::shared_ptr<const AttributeEnv>& envPtr() const { return env_; }
  const Proc& proc() const { return proc_; }
  std::uint64_t hash() const { return hash_; }

  friend bool operator==(const ComponentState& a, const ComponentState& b);

 private:
  std::shared_ptr<const ComponentInfo> info_;
  std::shared_ptr<const AttributeEnv> env_;
  Proc proc_;
  std::uint64_t hash_ = 0;
};

class SystemState {
 public:
  SystemState() = default;
  explicit SystemState(std::vector<ComponentState> components);

  const std::vector<ComponentState>& components() const { return components_; }
  const ComponentState& operator[](std::size_t i) const { return components_[i]; }
  std::size_t size() const { return components_.size(); }
  std::uint64_t hash() const { return hash_; }

  friend bool operator==(const SystemState& a, const SystemState& b);

 private:
  std::vector<ComponentState> components_;
  std::uint64_t hash_ = 0;
};

/// One component-level output: label computed from the pre-step state.
struct OutCandidate {
  std::vector<Value> message;
  Pred predicate;         // closed
  AttributeEnv exposed;   // restrict(pre env, interface)
  ComponentState successor;
  std::size_t branch = 0;             // ordinal of the output occurrence that fired
  std::vector<std::size_t> draws;     // EnumDomain choices used
  SourceSpan span;
};

struct InBranch {
  ComponentState successor;
  std::size_t branch = 0;  // ordinal of the input occurrence that matched
  Substitution bindings;   // received values bound to the binders
};

struct Received {
  std::vector<InBranch> branches;  // never empty
};
struct Discarded {};
using InResult = std::variant<Received, Discarded>;

struct Receipt {
  std::size_t component = 0;
  std::size_t branch = 0;
  Substitution bindings;
};

struct BroadcastEvent {
  std::size_t sender = 0;
  std::size_t senderBranch = 0;
  std::vector<Value> message;
  Pred predicate;
  AttributeEnv exposed;
  std::vector<Receipt> receivers;     // ascending component index
  std::vector<std::size_t> discarded; // ascending component index
  SourceSpan span;

  /// First payload element when it is text, otherwise empty.
  std::string tag() const;
};

struct Transition {
  BroadcastEvent event;
  SystemState target;
};

/// Executable view of a validated specification.
class Model {
 public:
  explicit Model(SystemSpec spec);

  const SystemSpec& spec() const { return spec_; }
  const Externs& externs() const { return externs_; }
  std::size_t componentCount() const { return infos_.size(); }
  const std::vector<std::string>& componentNames() const { return names_; }

  SystemState initialState() const;

  /// Body of the called definition with the call's captured bindings applied.
  Proc unfold(const ProcNode& call) const;

  std::vector<OutCandidate> outSteps(const ComponentState& c) const;
  InResult inStep(const ComponentState& c, const AttributeEnv& exposed, const Pred& sentPredicate,
                  std::span<const Value> message) const;
  /// All successors, in a deterministic order (sender index, output
  /// occurrence, draws, then receiver choices lexicographically).
  std::vector<Transition> systemSteps(const SystemState& s) const;

 private:
  SystemSpec spec_;
  Externs externs_;
  std::unordered_map<std::string, Proc> defs_;
  std::vector<std::shared_ptr<const ComponentInfo>> infos_;
  std::vector<std::string> names_;
};

}  // namespace abc
