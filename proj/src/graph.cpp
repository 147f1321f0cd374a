#include "bugsna/graph.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "bugsna/csv.hpp"

namespace bugsna {
namespace {

InteractionGraph::Edge ordered(const std::string& u, const std::string& v) {
  return u < v ? InteractionGraph::Edge{u, v} : InteractionGraph::Edge{v, u};
}

const std::string* alias_of(const IdentityTable& identity, std::string_view raw) {
  const ParticipantId* id = identity.resolve(raw);
  return id ? &id->alias : nullptr;
}

// Distinct participants in first-seen order.
struct PriorSet {
  std::vector<std::string> members;

  bool contains(const std::string& alias) const {
    return std::find(members.begin(), members.end(), alias) != members.end();
  }
  void insert(const std::string& alias) {
    if (!contains(alias)) members.push_back(alias);
  }
};

}  // namespace

void InteractionGraph::add_node(const std::string& alias, int delta) {
  auto it = node_refs_.find(alias);
  if (it == node_refs_.end()) {
    if (delta < 0) throw std::invalid_argument("removing absent node " + alias);
    if (delta > 0) node_refs_.emplace(alias, delta);
    return;
  }
  it->second += delta;
  if (it->second < 0) throw std::invalid_argument("node reference count below zero for " + alias);
  if (it->second == 0) node_refs_.erase(it);
}

void InteractionGraph::add_edge(const std::string& u, const std::string& v, int delta) {
  if (u == v) throw std::invalid_argument("self-loop on " + u);
  const Edge key = ordered(u, v);
  auto it = edges_.find(key);
  const long current = it == edges_.end() ? 0 : it->second;
  const long next = current + delta;
  if (next < 0) throw std::invalid_argument("edge weight below zero for " + u + "," + v);
  if (next == 0) {
    if (it != edges_.end()) edges_.erase(it);
  } else if (it == edges_.end()) {
    edges_.emplace(key, next);
  } else {
    it->second = next;
  }
}

std::vector<std::string> InteractionGraph::nodes() const {
  std::vector<std::string> out;
  out.reserve(node_refs_.size());
  for (const auto& [alias, refs] : node_refs_) out.push_back(alias);
  return out;
}

long InteractionGraph::weight(const std::string& u, const std::string& v) const {
  if (u == v) return 0;
  const auto it = edges_.find(ordered(u, v));
  return it == edges_.end() ? 0 : it->second;
}

long InteractionGraph::total_weight() const {
  long total = 0;
  for (const auto& [edge, w] : edges_) total += w;
  return total;
}

void InteractionGraph::write_edge_list_csv(std::ostream& out) const {
  out << "u,v,weight\n";
  for (const auto& [edge, w] : edges_) write_csv_row(out, {edge.first, edge.second, std::to_string(w)});
}

bool operator==(const InteractionGraph& a, const InteractionGraph& b) {
  if (a.edges_ != b.edges_ || a.node_refs_.size() != b.node_refs_.size()) return false;
  return std::equal(a.node_refs_.begin(), a.node_refs_.end(), b.node_refs_.begin(),
                    [](const auto& x, const auto& y) { return x.first == y.first; });
}

InteractionGraph build_graph(const EventSlice& slice, const IdentityTable& identity, const GraphOptions& options,
                             BuildReport* report) {
  InteractionGraph graph(slice.window());
  struct BugState {
    PriorSet set;
    bool history_pending = false;  // earlier-history members not yet added as nodes
  };
  std::map<std::string_view, BugState> bugs;

  auto start_bug = [&](const BugEvent& event) -> BugState& {
    auto [it, fresh] = bugs.try_emplace(event.bug_id);
    if (!fresh) return it->second;
    BugState& state = it->second;
    const auto reporter_raw = slice.reporter_of(event.bug_id);
    const std::string* reporter = reporter_raw ? alias_of(identity, *reporter_raw) : nullptr;
    if (reporter) {
      graph.add_node(*reporter);
      state.set.insert(*reporter);
    } else if (report) {
      report->orphan_bugs.insert(event.bug_id);
    }
    if (options.prior_scope == PriorScope::Global) {
      const BugIndexEntry* entry = slice.log().find_bug(event.bug_id);
      for (std::size_t index : entry->comments) {
        if (index >= slice.begin_index()) break;
        const std::string* earlier = alias_of(identity, slice.log().events()[index].author_raw);
        if (earlier) state.set.insert(*earlier);
      }
      state.history_pending = true;
    }
    return state;
  };

  for (const BugEvent& event : slice.events()) {
    BugState& state = start_bug(event);
    if (event.kind == EventKind::Report) continue;
    const std::string* author = alias_of(identity, event.author_raw);
    if (!author) {
      if (report) ++report->unresolved_events;
      continue;
    }
    if (state.history_pending) {
      for (const auto& alias : state.set.members) graph.add_node(alias);
      state.history_pending = false;
    }
    graph.add_node(*author);
    for (const auto& p : state.set.members) {
      if (p != *author) graph.add_edge(*author, p);
    }
    state.set.insert(*author);
  }
  return graph;
}

IncrementalGraphBuilder::IncrementalGraphBuilder(const EventLog& log, const IdentityTable& identity,
                                                 GraphOptions options)
    : log_(&log), identity_(&identity), options_(options) {}

// Adds (sign = +1) or retracts (sign = -1) everything one bug contributes
// to the window covering events [begin, end).
void IncrementalGraphBuilder::apply_bug(const std::string& bug_id, std::size_t begin, std::size_t end, int sign,
                                        BuildReport* report) {
  const BugIndexEntry* entry = log_->find_bug(bug_id);
  if (!entry) return;
  const auto events = log_->events();
  const auto inside = [&](std::size_t i) { return begin <= i && i < end; };

  std::vector<std::size_t> in_window;
  std::vector<std::size_t> before;
  for (std::size_t index : entry->comments) {
    if (inside(index)) {
      in_window.push_back(index);
    } else if (index < begin) {
      before.push_back(index);
    }
  }
  const bool touched = !in_window.empty() || (entry->report_index && inside(*entry->report_index));
  if (!touched) return;

  // Node multiset: each distinct participant once per bug.
  PriorSet node_set;
  PriorSet set;
  if (entry->reporter_raw) {
    if (const std::string* reporter = alias_of(*identity_, *entry->reporter_raw)) {
      set.insert(*reporter);
      node_set.insert(*reporter);
    } else if (report && sign > 0) {
      report->orphan_bugs.insert(bug_id);
    }
  } else if (report && sign > 0) {
    report->orphan_bugs.insert(bug_id);
  }
  if (options_.prior_scope == PriorScope::Global && !in_window.empty()) {
    for (std::size_t index : before) {
      if (const std::string* alias = alias_of(*identity_, events[index].author_raw)) {
        set.insert(*alias);
        node_set.insert(*alias);
      }
    }
  }
  for (std::size_t index : in_window) {
    const std::string* author = alias_of(*identity_, events[index].author_raw);
    if (!author) {
      if (report && sign > 0) ++report->unresolved_events;
      continue;
    }
    node_set.insert(*author);
    for (const auto& p : set.members) {
      if (p != *author) graph_.add_edge(*author, p, sign);
    }
    set.insert(*author);
  }
  for (const auto& alias : node_set.members) graph_.add_node(alias, sign);
}

const InteractionGraph& IncrementalGraphBuilder::advance(const EventSlice& slice, BuildReport* report) {
  const std::size_t begin = slice.begin_index();
  const std::size_t end = slice.end_index();
  const auto events = log_->events();

  std::set<std::string> changed;
  std::pair<std::size_t, std::size_t> old_bounds{0, 0};
  if (bounds_ && bounds_->first <= begin && bounds_->second <= end) {
    old_bounds = *bounds_;
    for (std::size_t i = old_bounds.first; i < std::min(begin, old_bounds.second); ++i) {
      changed.insert(events[i].bug_id);
    }
    for (std::size_t i = std::max(old_bounds.second, begin); i < end; ++i) changed.insert(events[i].bug_id);
    // Leaving and entering ranges can both be empty while the window moves
    // over a quiet stretch.
  } else {
    graph_ = InteractionGraph(slice.window());
    for (std::size_t i = begin; i < end; ++i) changed.insert(events[i].bug_id);
    bounds_.reset();
  }

  if (report) {
    // Report covers the whole window, not only the delta.
    for (std::size_t i = begin; i < end; ++i) {
      const BugIndexEntry* entry = log_->find_bug(events[i].bug_id);
      if (!entry->reporter_raw || !identity_->resolve(*entry->reporter_raw)) {
        report->orphan_bugs.insert(events[i].bug_id);
      }
      if (events[i].kind == EventKind::Comment && !identity_->resolve(events[i].author_raw)) {
        ++report->unresolved_events;
      }
    }
  }
  for (const auto& bug : changed) {
    if (bounds_) apply_bug(bug, old_bounds.first, old_bounds.second, -1, nullptr);
    apply_bug(bug, begin, end, +1, nullptr);
  }
  bounds_ = {begin, end};
  graph_.set_window(slice.window());
  return graph_;
}

}  // namespace bugsna
