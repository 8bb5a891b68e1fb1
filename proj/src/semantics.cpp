#include "abc/semantics.hpp"

#include "abc/canonical.hpp"
#include "abc/hash.hpp"

namespace abc {

ComponentState::ComponentState(std::shared_ptr<const ComponentInfo> info, std::shared_ptr<const AttributeEnv> env,
                               Proc proc)
    : info_(std::move(info)), env_(std::move(env)), proc_(std::move(proc)) {
  hash_ = Fnv1a{}.str(info_->name).u64(env_->hash()).u64(proc_->hash).value();
}

bool operator==(const ComponentState& a, const ComponentState& b) {
  if (a.hash_ != b.hash_) return false;
  if (a.info_ != b.info_ && a.info_->name != b.info_->name) return false;
  if (a.env_ != b.env_ && !(*a.env_ == *b.env_)) return false;
  return equal(a.proc_, b.proc_);
}

SystemState::SystemState(std::vector<ComponentState> components) : components_(std::move(components)) {
  Fnv1a h;
  h.u64(components_.size());
  for (const auto& c : components_) h.u64(c.hash());
  hash_ = h.value();
}

bool operator==(const SystemState& a, const SystemState& b) {
  if (a.hash_ != b.hash_ || a.components_.size() != b.components_.size()) return false;
  for (std::size_t i = 0; i < a.components_.size(); ++i)
    if (!(a.components_[i] == b.components_[i])) return false;
  return true;
}

std::string BroadcastEvent::tag() const {
  if (!message.empty() && message.front().kind() == ValueKind::Text) return message.front().asText();
  return {};
}

namespace {

// Component-local results before they are wrapped into ComponentStates.
struct LocalOut {
  std::vector<Value> message;
  Pred predicate;
  AttributeEnv env;
  Proc successor;
  std::size_t branch;
  std::vector<std::size_t> draws;
  SourceSpan span;
};

struct LocalIn {
  AttributeEnv env;
  Proc successor;
  std::size_t branch;
  Substitution bindings;
};

class Walker {
 public:
  Walker(const Model& model, const AttributeEnv& env) : model_(model), env_(env) {}

  void outputs(const Proc& p, std::vector<LocalOut>& out) {
    switch (p->kind) {
      case ProcKind::Inact:
      case ProcKind::Input:
        if (p->kind == ProcKind::Input) ++inputOrdinal_;
        return;
      case ProcKind::Output:
        fireOutput(*p, outputOrdinal_++, out);
        return;
      case ProcKind::Aware:
        if (!holdsLocally(p->guard, env_, {}, model_.externs())) {
          skip(p->next);
          return;
        }
        outputs(p->next, out);
        return;
      case ProcKind::Choice: {
        // The losing branch is dropped from the successor.
        outputs(p->next, out);
        outputs(p->other, out);
        return;
      }
      case ProcKind::Par: {
        const std::size_t start = out.size();
        outputs(p->next, out);
        for (std::size_t i = start; i < out.size(); ++i) out[i].successor = makePar(out[i].successor, p->other);
        const std::size_t mid = out.size();
        outputs(p->other, out);
        for (std::size_t i = mid; i < out.size(); ++i) out[i].successor = makePar(p->next, out[i].successor);
        return;
      }
      case ProcKind::Call:
        outputs(model_.unfold(*p), out);
        return;
    }
  }

  void inputs(const Proc& p, const AttributeEnv& exposed, std::span<const Value> msg, std::vector<LocalIn>& out) {
    switch (p->kind) {
      case ProcKind::Inact:
      case ProcKind::Output:
        if (p->kind == ProcKind::Output) ++outputOrdinal_;
        return;
      case ProcKind::Input:
        receive(*p, inputOrdinal_++, exposed, msg, out);
        return;
      case ProcKind::Aware:
        if (!holdsLocally(p->guard, env_, {}, model_.externs())) {
          skip(p->next);
          return;
        }
        inputs(p->next, exposed, msg, out);
        return;
      case ProcKind::Choice:
        inputs(p->next, exposed, msg, out);
        inputs(p->other, exposed, msg, out);
        return;
      case ProcKind::Par: {
        const std::size_t start = out.size();
        inputs(p->next, exposed, msg, out);
        for (std::size_t i = start; i < out.size(); ++i) out[i].successor = makePar(out[i].successor, p->other);
        const std::size_t mid = out.size();
        inputs(p->other, exposed, msg, out);
        for (std::size_t i = mid; i < out.size(); ++i) out[i].successor = makePar(p->next, out[i].successor);
        return;
      }
      case ProcKind::Call:
        inputs(model_.unfold(*p), exposed, msg, out);
        return;
    }
  }

 private:
  // Keeps occurrence ordinals stable when a guarded subterm is not explored.
  void skip(const Proc& p) {
    switch (p->kind) {
      case ProcKind::Inact:
      case ProcKind::Call:
        return;
      case ProcKind::Input:
        ++inputOrdinal_;
        return;
      case ProcKind::Output:
        ++outputOrdinal_;
        return;
      case ProcKind::Aware:
        skip(p->next);
        return;
      case ProcKind::Choice:
      case ProcKind::Par:
        skip(p->next);
        skip(p->other);
        return;
    }
  }

  void fireOutput(const ProcNode& node, std::size_t ordinal, std::vector<LocalOut>& out) {
    const Pred predicate = close(node.guard, env_, {}, model_.externs());
    DrawOdometer odometer;
    do {
      LocalOut o;
      o.message.reserve(node.payload.size());
      for (const auto& e : node.payload) o.message.push_back(evaluate(e, env_, {}, model_.externs(), &odometer));
      o.env = applyUpdates(env_, node.updates, {}, model_.externs(), &odometer);
      o.predicate = predicate;
      o.successor = node.next;
      o.branch = ordinal;
      o.draws = odometer.choices();
      o.span = node.span;
      out.push_back(std::move(o));
    } while (odometer.advance());
  }

  void receive(const ProcNode& node, std::size_t ordinal, const AttributeEnv& exposed, std::span<const Value> msg,
               std::vector<LocalIn>& out) {
    if (node.binders.size() != msg.size()) return;
    Substitution sigma;
    for (std::size_t i = 0; i < msg.size(); ++i) sigma[node.binders[i]] = msg[i];
    const Pred guard = close(substitute(node.guard, sigma), env_, {}, model_.externs());
    if (!satisfies(exposed, guard, model_.externs())) return;
    const std::vector<Update> updates = substitute(node.updates, sigma);
    const Proc next = substituteProc(node.next, sigma);
    DrawOdometer odometer;
    do {
      LocalIn r;
      r.env = applyUpdates(env_, updates, {}, model_.externs(), &odometer);
      r.successor = next;
      r.branch = ordinal;
      r.bindings = sigma;
      out.push_back(std::move(r));
    } while (odometer.advance());
  }

  const Model& model_;
  const AttributeEnv& env_;
  std::size_t outputOrdinal_ = 0;
  std::size_t inputOrdinal_ = 0;
};

std::shared_ptr<const AttributeEnv> shareEnv(const ComponentState& pre, AttributeEnv env) {
  if (env == pre.env()) return pre.envPtr();
  return std::make_shared<const AttributeEnv>(std::move(env));
}

}  // namespace

Model::Model(SystemSpec spec) : spec_(std::move(spec)), externs_(spec_.externs) {
  for (const auto& d : spec_.procs) defs_.emplace(d.name, d.body);
  for (const auto& c : spec_.components) {
    auto info = std::make_shared<ComponentInfo>();
    info->name = c.name;
    info->interface.insert(c.interface.begin(), c.interface.end());
    infos_.push_back(std::move(info));
    names_.push_back(c.name);
  }
}

SystemState Model::initialState() const {
  std::vector<ComponentState> comps;
  for (std::size_t i = 0; i < spec_.components.size(); ++i) {
    const auto& decl = spec_.components[i];
    AttributeEnv env;
    for (const auto& a : decl.attrs) env.set(AttrKey{a.name, a.index}, a.value);
    comps.emplace_back(infos_[i], std::make_shared<const AttributeEnv>(std::move(env)), canonicalize(decl.run));
  }
  return SystemState(std::move(comps));
}

Proc Model::unfold(const ProcNode& call) const {
  auto it = defs_.find(call.name);
  if (it == defs_.end()) throw EvalError("undefined process '" + call.name + "'", call.span);
  if (call.captures.empty()) return it->second;
  Substitution bindings;
  for (const auto& c : call.captures) {
    auto b = call.bindings.find(c);
    if (b == call.bindings.end())
      throw EvalError("process '" + call.name + "' called with variable '" + c + "' unbound", call.span);
    bindings.emplace(c, b->second);
  }
  return substituteProc(it->second, bindings);
}

std::vector<OutCandidate> Model::outSteps(const ComponentState& c) const {
  std::vector<LocalOut> local;
  Walker(*this, c.env()).outputs(c.proc(), local);
  std::vector<OutCandidate> out;
  out.reserve(local.size());
  const AttributeEnv exposed = restrict(c.env(), c.info().interface);
  for (auto& l : local) {
    ComponentState succ(c.infoPtr(), shareEnv(c, std::move(l.env)), canonicalize(l.successor));
    out.push_back(OutCandidate{std::move(l.message), std::move(l.predicate), exposed, std::move(succ), l.branch,
                               std::move(l.draws), l.span});
  }
  return out;
}

InResult Model::inStep(const ComponentState& c, const AttributeEnv& exposed, const Pred& sentPredicate,
                       std::span<const Value> message) const {
  if (!satisfies(restrict(c.env(), c.info().interface), sentPredicate, externs_)) return Discarded{};
  std::vector<LocalIn> local;
  Walker(*this, c.env()).inputs(c.proc(), exposed, message, local);
  if (local.empty()) return Discarded{};
  Received r;
  r.branches.reserve(local.size());
  for (auto& l : local) {
    ComponentState succ(c.infoPtr(), shareEnv(c, std::move(l.env)), canonicalize(l.successor));
    r.branches.push_back(InBranch{std::move(succ), l.branch, std::move(l.bindings)});
  }
  return r;
}

std::vector<Transition> Model::systemSteps(const SystemState& s) const {
  std::vector<Transition> result;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& cand : outSteps(s[i])) {
      std::vector<std::size_t> receivers;
      std::vector<std::vector<InBranch>> options;
      std::vector<std::size_t> discarded;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        InResult r = inStep(s[j], cand.exposed, cand.predicate, cand.message);
        if (auto* rec = std::get_if<Received>(&r)) {
          receivers.push_back(j);
          options.push_back(std::move(rec->branches));
        } else {
          discarded.push_back(j);
        }
      }
      // Cartesian product over each receiver's alternatives.
      std::vector<std::size_t> pick(receivers.size(), 0);
      while (true) {
        std::vector<ComponentState> comps = s.components();
        comps[i] = cand.successor;
        BroadcastEvent ev;
        ev.sender = i;
        ev.senderBranch = cand.branch;
        ev.message = cand.message;
        ev.predicate = cand.predicate;
        ev.exposed = cand.exposed;
        ev.discarded = discarded;
        ev.span = cand.span;
        for (std::size_t k = 0; k < receivers.size(); ++k) {
          const InBranch& b = options[k][pick[k]];
          comps[receivers[k]] = b.successor;
          ev.receivers.push_back(Receipt{receivers[k], b.branch, b.bindings});
        }
        result.push_back(Transition{std::move(ev), SystemState(std::move(comps))});
        bool done = true;
        for (std::size_t k = receivers.size(); k-- > 0;) {
          if (++pick[k] < options[k].size()) {
            done = false;
            break;
          }
          pick[k] = 0;
        }
        if (done) break;
      }
    }
  }
  return result;
}

}  // namespace abc
