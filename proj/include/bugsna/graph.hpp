#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bugsna/event_log.hpp"
#include "bugsna/identity.hpp"
#include "bugsna/window.hpp"

namespace bugsna {

// Which earlier commenters a new comment links to: only those inside the
// same window (default) or the bug's whole history.
enum class PriorScope { Window, Global };

struct GraphOptions {
  PriorScope prior_scope = PriorScope::Window;
};

struct BuildReport {
  std::set<std::string> orphan_bugs;  // touched bugs without a known reporter
  std::size_t unresolved_events = 0;  // events whose author has no alias
};

// Undirected participant graph of one window with positive integer edge
// weights. Nodes are reference counted so per-bug contributions can be
// added and retracted.
class InteractionGraph {
 public:
  using Edge = std::pair<std::string, std::string>;  // first < second

  InteractionGraph() = default;
  explicit InteractionGraph(const WindowSpec& window) : window_(window) {}

  const WindowSpec& window() const { return window_; }
  void set_window(const WindowSpec& window) { window_ = window; }

  void add_node(const std::string& alias, int delta = 1);
  // Adds delta to the weight of {u, v}; the edge disappears at zero.
  // Throws std::invalid_argument for u == v or a negative result.
  void add_edge(const std::string& u, const std::string& v, int delta = 1);

  std::vector<std::string> nodes() const;
  bool has_node(std::string_view alias) const { return node_refs_.find(alias) != node_refs_.end(); }
  std::size_t node_count() const { return node_refs_.size(); }
  const std::map<Edge, long>& edges() const { return edges_; }
  long weight(const std::string& u, const std::string& v) const;
  long total_weight() const;

  // "u,v,weight" rows, lexicographic by (u, v) with u < v.
  void write_edge_list_csv(std::ostream& out) const;

  friend bool operator==(const InteractionGraph& a, const InteractionGraph& b);

 private:
  WindowSpec window_{};
  std::map<std::string, long, std::less<>> node_refs_;
  std::map<Edge, long> edges_;
};

// Walks the slice in (timestamp, input) order. Every comment by c adds one
// to {c, reporter} and to {c, p} for each distinct earlier participant p of
// the same bug (in-window commenters, or the full history under
// PriorScope::Global), never linking c to itself. Reporters of touched bugs
// are nodes even when the report predates the window.
InteractionGraph build_graph(const EventSlice& slice, const IdentityTable& identity,
                             const GraphOptions& options = {}, BuildReport* report = nullptr);

// Maintains the graph across consecutive windows by retracting and
// re-adding the contribution of every bug touched by the entering or
// leaving events.
class IncrementalGraphBuilder {
 public:
  IncrementalGraphBuilder(const EventLog& log, const IdentityTable& identity, GraphOptions options = {});

  const InteractionGraph& advance(const EventSlice& slice, BuildReport* report = nullptr);
  const InteractionGraph& graph() const { return graph_; }

 private:
  void apply_bug(const std::string& bug_id, std::size_t begin, std::size_t end, int sign, BuildReport* report);

  const EventLog* log_;
  const IdentityTable* identity_;
  GraphOptions options_;
  InteractionGraph graph_;
  std::optional<std::pair<std::size_t, std::size_t>> bounds_;
};

}  // namespace bugsna
