#include <sstream>

#include <gtest/gtest.h>

#include "bugsna/graph.hpp"
#include "bugsna/identity.hpp"
#include "bugsna/synth.hpp"
#include "bugsna/window.hpp"
#include "test_support.hpp"

namespace bugsna {
namespace {

using testing::comment;
using testing::make_log;
using testing::report;

InteractionGraph whole_log_graph(const EventLog& log, GraphOptions options = {}, BuildReport* report = nullptr) {
  const auto range = *log.date_range();
  WindowSpec window{0, range.first, static_cast<int>(range.day_count()), 1};
  return build_graph(events_in_window(log, window), build_identity_table(log), options, report);
}

std::string edge_list(const InteractionGraph& g) {
  std::ostringstream out;
  g.write_edge_list_csv(out);
  return out.str();
}

TEST(BuildGraph, ReporterAndAlternatingCommenters) {
  const auto log = make_log({report("1", "R", "2010-01-01T00:00:00Z"), comment("1", "X", "2010-01-02T00:00:00Z"),
                             comment("1", "Y", "2010-01-03T00:00:00Z"), comment("1", "X", "2010-01-04T00:00:00Z")});
  const auto g = whole_log_graph(log);
  EXPECT_EQ(edge_list(g), "u,v,weight\nR,X,2\nR,Y,1\nX,Y,2\n");
  EXPECT_EQ(g.node_count(), 3u);
}

TEST(BuildGraph, ReportWithoutCommentsIsIsolatedNode) {
  const auto g = whole_log_graph(make_log({report("1", "R", "2010-01-01T00:00:00Z")}));
  EXPECT_TRUE(g.has_node("R"));
  EXPECT_TRUE(g.edges().empty());
}

TEST(BuildGraph, SelfCommentAddsNoEdge) {
  const auto g = whole_log_graph(
      make_log({report("1", "R", "2010-01-01T00:00:00Z"), comment("1", "R", "2010-01-02T00:00:00Z")}));
  EXPECT_EQ(g.node_count(), 1u);
  EXPECT_TRUE(g.edges().empty());
}

TEST(BuildGraph, AliasesMergeBeforeLinking) {
  const auto g = whole_log_graph(make_log({report("1", "r....@a.com", "2010-01-01T00:00:00Z"),
                                           comment("1", "r....@b.com", "2010-01-02T00:00:00Z"),
                                           comment("1", "x....@b.com", "2010-01-03T00:00:00Z")}));
  EXPECT_EQ(edge_list(g), "u,v,weight\nr,x,1\n");
}

TEST(BuildGraph, ReportBeforeWindowStillNamesReporter) {
  const auto log = make_log({report("1", "R", "2010-01-01T00:00:00Z"), comment("1", "X", "2010-03-01T00:00:00Z")});
  WindowSpec window{0, parse_day("2010-02-15"), 30, 1};
  const auto g = build_graph(events_in_window(log, window), build_identity_table(log));
  EXPECT_EQ(g.weight("R", "X"), 1);
}

TEST(BuildGraph, OrphanBugsLinkCommentersAndAreReported) {
  BuildReport report_out;
  const auto g = whole_log_graph(
      make_log({comment("9", "A", "2010-01-01T00:00:00Z"), comment("9", "B", "2010-01-02T00:00:00Z")}), {},
      &report_out);
  EXPECT_EQ(edge_list(g), "u,v,weight\nA,B,1\n");
  EXPECT_EQ(report_out.orphan_bugs, (std::set<std::string>{"9"}));
}

TEST(BuildGraph, PriorScopeDecidesWhoEarlierCommentersAre) {
  const auto log = make_log({report("1", "R", "2010-01-01T00:00:00Z"), comment("1", "A", "2010-01-02T00:00:00Z"),
                             comment("1", "B", "2010-03-01T00:00:00Z")});
  WindowSpec window{0, parse_day("2010-02-15"), 30, 1};
  const auto identity = build_identity_table(log);
  const auto local = build_graph(events_in_window(log, window), identity);
  EXPECT_EQ(edge_list(local), "u,v,weight\nB,R,1\n");
  const auto global = build_graph(events_in_window(log, window), identity, {PriorScope::Global});
  EXPECT_EQ(edge_list(global), "u,v,weight\nA,B,1\nB,R,1\n");
}

TEST(InteractionGraph, EdgeMutationGuards) {
  InteractionGraph g;
  EXPECT_THROW(g.add_edge("a", "a"), std::invalid_argument);
  g.add_edge("b", "a", 2);
  EXPECT_EQ(g.weight("a", "b"), 2);
  EXPECT_THROW(g.add_edge("a", "b", -3), std::invalid_argument);
  g.add_edge("a", "b", -2);
  EXPECT_TRUE(g.edges().empty());
}

// Brute-force weight total: for each comment, 1 for the reporter (when
// someone else) plus one per distinct earlier in-window participant other
// than the author and reporter.
long expected_total(const EventSlice& slice, const IdentityTable& identity) {
  long total = 0;
  const auto events = slice.events();
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].kind != EventKind::Comment) continue;
    const std::string me = identity.resolve(events[i].author_raw)->alias;
    std::set<std::string> linked;
    if (auto r = slice.reporter_of(events[i].bug_id)) linked.insert(identity.resolve(*r)->alias);
    for (std::size_t j = 0; j < i; ++j) {
      if (events[j].bug_id == events[i].bug_id) linked.insert(identity.resolve(events[j].author_raw)->alias);
    }
    linked.erase(me);
    total += static_cast<long>(linked.size());
  }
  return total;
}

TEST(GraphProperties, TotalWeightMatchesCommentIncrements) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    SynthConfig config;
    config.seed = seed;
    config.n_days = 90;
    config.release_days = {20, 45, 60, 70};
    const auto log = generate(config).log;
    const auto identity = build_identity_table(log);
    const auto windows = enumerate_windows(*log.date_range(), 30, 1);
    for (std::size_t i = 0; i < windows.size(); i += 13) {
      const auto slice = events_in_window(log, windows[i]);
      EXPECT_EQ(build_graph(slice, identity).total_weight(), expected_total(slice, identity));
    }
  }
}

TEST(GraphProperties, IncrementalEqualsRebuild) {
  for (auto scope : {PriorScope::Window, PriorScope::Global}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      SynthConfig config;
      config.seed = seed;
      config.n_days = 100;
      config.release_days = {20, 45, 60, 80};
      const auto log = generate(config).log;
      const auto identity = build_identity_table(log);
      for (int slide : {1, 4}) {
        IncrementalGraphBuilder incremental(log, identity, {scope});
        WindowSlicer slicer(log);
        for (const auto& w : enumerate_windows(*log.date_range(), 30, slide)) {
          const auto slice = slicer.slice(w);
          const auto& fast = incremental.advance(slice);
          const auto full = build_graph(slice, identity, {scope});
          ASSERT_EQ(fast, full) << "seed " << seed << " window " << w.index;
          ASSERT_EQ(edge_list(fast), edge_list(full));
        }
      }
    }
  }
}

}  // namespace
}  // namespace bugsna
