#include <gtest/gtest.h>

#include "bugsna/window.hpp"
#include "bugsna/synth.hpp"
#include "test_support.hpp"

namespace bugsna {
namespace {

using testing::comment;
using testing::make_log;
using testing::report;

DateRange range_of(const char* first, long days) {
  const Day d = parse_day(first);
  return {d, d + std::chrono::days{days - 1}};
}

TEST(EnumerateWindows, CountFollowsFormula) {
  EXPECT_EQ(enumerate_windows(range_of("2010-01-01", 40), 30, 1).size(), 11u);
  const auto weekly = enumerate_windows(range_of("2010-01-01", 40), 30, 7);
  ASSERT_EQ(weekly.size(), 2u);
  EXPECT_EQ(weekly[0].start_day, parse_day("2010-01-01"));
  EXPECT_EQ(weekly[1].start_day, parse_day("2010-01-08"));
  EXPECT_EQ(weekly[1].index, 1u);
}

TEST(EnumerateWindows, TwoYearSlice) {
  const DateRange range{parse_day("2010-01-01"), parse_day("2011-12-04")};
  ASSERT_EQ(range.day_count(), 703);
  const auto windows = enumerate_windows(range, 30, 1);
  ASSERT_EQ(windows.size(), 674u);
  EXPECT_EQ(windows.back().last_day(), range.last);
}

TEST(EnumerateWindows, BruteForceAgreesWithFormula) {
  for (long d = 1; d <= 80; ++d) {
    for (int w = 1; w <= 35; w += 2) {
      for (int s = 1; s <= 9; ++s) {
        const DateRange range = range_of("2010-03-01", d);
        std::size_t expected = 0;
        for (long start = 0; start + w <= d; start += s) ++expected;
        const auto windows = enumerate_windows(range, w, s);
        ASSERT_EQ(windows.size(), expected) << d << " " << w << " " << s;
        for (const auto& win : windows) {
          EXPECT_LE(win.last_day(), range.last);
          EXPECT_GE(win.start_day, range.first);
        }
      }
    }
  }
}

TEST(EnumerateWindows, ShortRangeWarnsAndBadArgumentsThrow) {
  std::vector<std::string> warnings;
  EXPECT_TRUE(enumerate_windows(range_of("2010-01-01", 29), 30, 1, &warnings).empty());
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_THROW(enumerate_windows(range_of("2010-01-01", 40), 0, 1), std::invalid_argument);
  EXPECT_THROW(enumerate_windows(range_of("2010-01-01", 40), 30, 0), std::invalid_argument);
}

TEST(EventsInWindow, BoundaryInclusionAndExclusion) {
  const auto log = make_log({report("1", "r", "2010-01-01T00:00:00Z"), comment("1", "a", "2010-01-11T00:00:00Z"),
                             comment("1", "b", "2010-02-09T23:59:59Z"), comment("1", "c", "2010-02-10T00:00:00Z")});
  WindowSpec window{0, parse_day("2010-01-11"), 30, 1};
  const auto slice = events_in_window(log, window);
  ASSERT_EQ(slice.events().size(), 2u);
  EXPECT_EQ(slice.events()[0].author_raw, "a");
  EXPECT_EQ(slice.events()[1].author_raw, "b");
  EXPECT_EQ(slice.reporter_of("1"), "r");
}

TEST(EventsInWindow, InteriorCommentAppearsInThirtyWindows) {
  const auto log = make_log({report("1", "r", "2010-01-01T00:00:00Z"), comment("1", "x", "2010-03-15T12:00:00Z"),
                             comment("2", "z", "2010-06-30T00:00:00Z")});
  const auto windows = enumerate_windows(*log.date_range(), 30, 1);
  std::size_t membership = 0;
  std::optional<std::size_t> first, last;
  for (const auto& w : windows) {
    for (const auto& e : events_in_window(log, w).events()) {
      if (e.author_raw == "x") {
        ++membership;
        if (!first) first = w.index;
        last = w.index;
      }
    }
  }
  EXPECT_EQ(membership, 30u);
  EXPECT_EQ(*last - *first, 29u);
}

TEST(WindowSlicer, MatchesNaiveSlicing) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SynthConfig config;
    config.seed = seed;
    config.n_days = 120;
    config.release_days = {20, 50, 80, 100};
    const auto log = generate(config).log;
    for (int slide : {1, 3, 7}) {
      WindowSlicer slicer(log);
      for (const auto& w : enumerate_windows(*log.date_range(), 30, slide)) {
        const auto naive = events_in_window(log, w);
        const auto fast = slicer.slice(w);
        ASSERT_EQ(fast.begin_index(), naive.begin_index());
        ASSERT_EQ(fast.end_index(), naive.end_index());
      }
    }
    // Non-monotone visiting order still works.
    WindowSlicer slicer(log);
    const auto windows = enumerate_windows(*log.date_range(), 30, 1);
    for (std::size_t i : {40u, 10u, 70u, 0u, 90u, 89u}) {
      EXPECT_EQ(slicer.slice(windows[i]).begin_index(), events_in_window(log, windows[i]).begin_index());
      EXPECT_EQ(slicer.slice(windows[i]).end_index(), events_in_window(log, windows[i]).end_index());
    }
  }
}

}  // namespace
}  // namespace bugsna
