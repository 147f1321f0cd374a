#include "bugsna/synth.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>

#include "bugsna/csv.hpp"

namespace bugsna {
namespace {

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t poisson(std::mt19937_64& rng, double mean) {
  if (mean <= 0.0) return 0;
  const double limit = std::exp(-mean);
  std::size_t k = 0;
  double p = unit_draw(rng);
  while (p > limit) {
    ++k;
    p *= unit_draw(rng);
  }
  return k;
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(unit_draw(rng) * static_cast<double>(n)));
}

std::string name(const char* prefix, std::size_t a) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%zu", prefix, a);
  return buf;
}

std::string raw_address(const std::string& alias) { return alias + "....@gmail.com"; }

void validate(const SynthConfig& c) {
  if (c.n_days < 0) throw std::invalid_argument("synth: n_days must be non-negative");
  if (c.base_rate < 0.0 || c.burst_rate < 0.0) throw std::invalid_argument("synth: rates must be non-negative");
  if (c.burst_rate < c.base_rate) throw std::invalid_argument("synth: burst_rate must be at least base_rate");
  if (c.burst_rate > 500.0) throw std::invalid_argument("synth: burst_rate above 500 events/day");
  if (c.n_phaser_clusters > 0) {
    if (c.phaser_cluster_size == 0) throw std::invalid_argument("synth: phaser clusters need members");
    if (c.release_days.size() < c.n_phaser_clusters) {
      throw std::invalid_argument("synth: " + std::to_string(c.n_phaser_clusters) + " phaser clusters but only " +
                                  std::to_string(c.release_days.size()) + " release days");
    }
    for (int r : c.release_days) {
      if (r - kBurstHalfWidthDays < 0 || r + kBurstHalfWidthDays >= c.n_days) {
        throw std::invalid_argument("synth: burst band around release day " + std::to_string(r) +
                                    " does not fit in " + std::to_string(c.n_days) + " days");
      }
    }
  }
  if ((c.n_continuous > 0 || c.n_oneshot > 0) && c.n_days == 0) {
    throw std::invalid_argument("synth: participants need at least one day");
  }
}

class Builder {
 public:
  // Collects one day's events; timestamps are spread evenly over the day
  // in creation order.
  void report(const std::string& bug, const std::string& alias) { day_.push_back({EventKind::Report, bug, alias}); }
  void comment(const std::string& bug, const std::string& alias) { day_.push_back({EventKind::Comment, bug, alias}); }

  std::string new_bug() { return name("b", ++bugs_); }
  std::string new_background_user() { return name("user", ++users_); }

  void close_day(Day day) {
    const long step = 86400 / static_cast<long>(day_.size() + 1);
    for (std::size_t i = 0; i < day_.size(); ++i) {
      RawEvent e;
      e.kind = day_[i].kind;
      e.bug_id = day_[i].bug;
      e.author_raw = raw_address(day_[i].alias);
      e.timestamp = Timestamp{day} + std::chrono::seconds{step * static_cast<long>(i + 1)};
      e.line = ++lines_;
      raw_.push_back(std::move(e));
    }
    day_.clear();
  }

  std::vector<RawEvent> take() { return std::move(raw_); }

 private:
  struct Pending {
    EventKind kind;
    std::string bug;
    std::string alias;
  };
  std::vector<Pending> day_;
  std::vector<RawEvent> raw_;
  std::size_t bugs_ = 0;
  std::size_t users_ = 0;
  std::size_t lines_ = 0;
};

}  // namespace

SynthOutput generate(const SynthConfig& config) {
  validate(config);
  std::mt19937_64 rng(config.seed);
  SynthOutput out;
  Builder builder;

  std::vector<std::string> core;
  for (std::size_t i = 0; i < config.n_continuous; ++i) {
    core.push_back(name("core", i));
    out.truth.labels[core.back()] = ActivityLabel::Continuous;
    out.truth.groups[core.back()] = 0;
  }

  struct Cluster {
    std::vector<std::string> members;
    std::vector<int> releases;
    std::vector<std::pair<int, std::string>> bugs;  // (day, bug id) reported by members
  };
  std::vector<Cluster> clusters(config.n_phaser_clusters);
  for (std::size_t j = 0; j < clusters.size(); ++j) {
    for (std::size_t r = j; r < config.release_days.size(); r += clusters.size()) {
      clusters[j].releases.push_back(config.release_days[r]);
    }
    // Bands closer than two windows merge into one run.
    bool separate = clusters[j].releases.size() > 1;
    for (std::size_t a = 0; a < clusters[j].releases.size() && separate; ++a) {
      for (std::size_t b = a + 1; b < clusters[j].releases.size(); ++b) {
        if (std::abs(clusters[j].releases[a] - clusters[j].releases[b]) < 2 * kBurstHalfWidthDays + 31) {
          separate = false;
        }
      }
    }
    for (std::size_t m = 0; m < config.phaser_cluster_size; ++m) {
      const std::string alias = "ph" + std::to_string(j) + "m" + std::to_string(m);
      clusters[j].members.push_back(alias);
      out.truth.labels[alias] = separate ? ActivityLabel::Phaser : ActivityLabel::OneTime;
      out.truth.groups[alias] = j + 1;
    }
  }

  std::vector<std::pair<int, std::string>> oneshots;
  for (std::size_t i = 0; i < config.n_oneshot; ++i) {
    const std::string alias = name("once", i);
    oneshots.emplace_back(static_cast<int>(pick(rng, static_cast<std::size_t>(config.n_days))), alias);
    out.truth.labels[alias] = ActivityLabel::OneTime;
    out.truth.groups[alias] = clusters.size() + 1 + i;
  }

  // A member comments on a background user's fresh bug; the user never
  // appears again, so it hangs off the member as a leaf.
  auto leaf = [&](const std::string& alias) {
    const std::string bug = builder.new_bug();
    builder.report(bug, builder.new_background_user());
    builder.comment(bug, alias);
  };

  for (int d = 0; d < config.n_days; ++d) {
    for (const auto& member : core) {
      const std::size_t n = poisson(rng, config.base_rate);
      for (std::size_t e = 0; e < n; ++e) leaf(member);
    }

    for (auto& cluster : clusters) {
      bool active = false;
      for (int r : cluster.releases) active = active || std::abs(d - r) <= kBurstHalfWidthDays;
      if (!active) continue;
      for (const auto& member : cluster.members) {
        const std::size_t n = poisson(rng, config.burst_rate);
        for (std::size_t e = 0; e < n; ++e) {
          const double kind = unit_draw(rng);
          if (kind < 0.5) {
            leaf(member);
            continue;
          }
          // Recent cluster bugs, i.e. those of the current burst.
          std::size_t recent = cluster.bugs.size();
          while (recent > 0 && cluster.bugs[recent - 1].first >= d - kBurstHalfWidthDays) --recent;
          const std::size_t available = cluster.bugs.size() - recent;
          if (kind < 0.7 || available == 0) {
            const std::string bug = builder.new_bug();
            builder.report(bug, member);
            cluster.bugs.emplace_back(d, bug);
          } else {
            builder.comment(cluster.bugs[recent + pick(rng, available)].second, member);
          }
        }
      }
    }

    for (const auto& [day, alias] : oneshots) {
      if (day != d) continue;
      const std::string own = builder.new_bug();
      builder.report(own, alias);
      builder.comment(own, builder.new_background_user());
      leaf(alias);
    }

    builder.close_day(config.start_day + std::chrono::days{d});
  }

  out.log = EventLog::build(builder.take());
  return out;
}

void write_ground_truth_csv(std::ostream& out, const GroundTruth& truth) {
  out << "participant,label,group\n";
  for (const auto& [alias, label] : truth.labels) {
    write_csv_row(out, {alias, std::string(to_string(label)), std::to_string(truth.groups.at(alias))});
  }
}

}  // namespace bugsna
