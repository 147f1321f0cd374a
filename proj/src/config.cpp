#include "bugsna/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "bugsna/errors.hpp"

namespace bugsna {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw UsageError("config key '" + std::string(key) + "': not a number: '" + std::string(text) + "'");
  }
  return value;
}

Day parse_config_day(std::string_view key, const std::string& text) {
  try {
    return parse_day(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("config key '" + std::string(key) + "': " + e.what());
  }
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in, std::filesystem::path base_dir) {
  KeyValueConfig config;
  config.base_dir_ = std::move(base_dir);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("config line " + std::to_string(number) + ": expected key = value");
    }
    const auto key = trim(text.substr(0, eq));
    if (key.empty()) throw UsageError("config line " + std::to_string(number) + ": empty key");
    config.values_[std::string(key)] = std::string(trim(text.substr(eq + 1)));
  }
  return config;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path.string() + "'");
  return parse(in, path.parent_path());
}

std::optional<std::string> KeyValueConfig::get(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

std::optional<std::filesystem::path> KeyValueConfig::get_path(std::string_view key) const {
  const auto value = get(key);
  if (!value) return std::nullopt;
  std::filesystem::path p(*value);
  if (p.is_relative() && !base_dir_.empty()) p = base_dir_ / p;
  return p;
}

long KeyValueConfig::get_int(std::string_view key, long fallback) const {
  const auto value = get(key);
  return value ? parse_number<long>(key, *value) : fallback;
}

std::uint64_t KeyValueConfig::get_u64(std::string_view key, std::uint64_t fallback) const {
  const auto value = get(key);
  return value ? parse_number<std::uint64_t>(key, *value) : fallback;
}

double KeyValueConfig::get_double(std::string_view key, double fallback) const {
  const auto value = get(key);
  if (!value) return fallback;
  // from_chars for double is available in libstdc++ 11.
  return parse_number<double>(key, *value);
}

bool KeyValueConfig::get_bool(std::string_view key, bool fallback) const {
  const auto value = get(key);
  if (!value) return fallback;
  if (*value == "true" || *value == "1" || *value == "yes") return true;
  if (*value == "false" || *value == "0" || *value == "no") return false;
  throw UsageError("config key '" + std::string(key) + "': expected true/false, got '" + *value + "'");
}

void KeyValueConfig::check_known(const std::set<std::string, std::less<>>& known) const {
  std::string unknown;
  for (const auto& [key, value] : values_) {
    if (known.contains(key)) continue;
    if (!unknown.empty()) unknown += ", ";
    unknown += key;
  }
  if (!unknown.empty()) throw UsageError("unknown config keys: " + unknown);
}

PipelineConfig pipeline_config_from(const KeyValueConfig& kv) {
  kv.check_known({"events", "events_format", "commits", "merges", "common_names", "releases", "output_dir",
                  "window_days", "slide_days", "range_start", "range_end", "distance_mode", "prior_scope", "k",
                  "seed", "max_iter", "continuous_threshold", "ambiguity_length", "case_fold", "naive_windows",
                  "log_scale", "threads"});
  PipelineConfig c;
  const auto events = kv.get_path("events");
  if (!events) throw UsageError("config lacks required key 'events'");
  c.events = *events;
  if (const auto format = kv.get("events_format")) {
    if (*format == "jsonl") {
      c.events_format = EventFormat::Jsonl;
    } else if (*format == "csv") {
      c.events_format = EventFormat::Csv;
    } else {
      throw UsageError("events_format must be jsonl or csv");
    }
  }
  c.commits = kv.get_path("commits");
  c.merges = kv.get_path("merges");
  c.common_names = kv.get_path("common_names");
  c.releases = kv.get_path("releases");
  if (const auto out = kv.get_path("output_dir")) c.output_dir = *out;

  auto& a = c.analysis;
  a.window_days = static_cast<int>(kv.get_int("window_days", a.window_days));
  a.slide_days = static_cast<int>(kv.get_int("slide_days", a.slide_days));
  if (a.window_days < 1 || a.slide_days < 1) throw UsageError("window_days and slide_days must be at least 1");
  if (const auto v = kv.get("range_start")) a.range_start = parse_config_day("range_start", *v);
  if (const auto v = kv.get("range_end")) a.range_end = parse_config_day("range_end", *v);
  if (a.range_start && a.range_end && *a.range_start > *a.range_end) {
    throw UsageError("range_start is after range_end");
  }
  if (const auto v = kv.get("distance_mode")) {
    const auto mode = parse_distance_mode(*v);
    if (!mode) throw UsageError("distance_mode must be unit, weight or inverse_weight");
    a.distance_mode = *mode;
  }
  if (const auto v = kv.get("prior_scope")) {
    if (*v == "window") {
      a.prior_scope = PriorScope::Window;
    } else if (*v == "global") {
      a.prior_scope = PriorScope::Global;
    } else {
      throw UsageError("prior_scope must be window or global");
    }
  }
  a.continuous_threshold = kv.get_double("continuous_threshold", a.continuous_threshold);
  if (!(a.continuous_threshold > 0.0 && a.continuous_threshold <= 1.0)) {
    throw UsageError("continuous_threshold must lie in (0, 1]");
  }
  const long ambiguity = kv.get_int("ambiguity_length", static_cast<long>(a.identity.ambiguity_length_threshold));
  if (ambiguity < 0) throw UsageError("ambiguity_length must be non-negative");
  a.identity.ambiguity_length_threshold = static_cast<std::size_t>(ambiguity);
  a.identity.case_fold = kv.get_bool("case_fold", false);
  a.naive_windows = kv.get_bool("naive_windows", false);
  const long threads = kv.get_int("threads", 0);
  if (threads < 0) throw UsageError("threads must be non-negative");
  a.threads = static_cast<unsigned>(threads);

  const long k = kv.get_int("k", static_cast<long>(c.k));
  if (k < 1) throw UsageError("k must be at least 1");
  c.k = static_cast<std::size_t>(k);
  c.seed = kv.get_u64("seed", c.seed);
  const long max_iter = kv.get_int("max_iter", static_cast<long>(c.max_iter));
  if (max_iter < 1) throw UsageError("max_iter must be at least 1");
  c.max_iter = static_cast<std::size_t>(max_iter);
  c.log_scale = kv.get_bool("log_scale", false);
  return c;
}

SynthJob synth_job_from(const KeyValueConfig& kv) {
  kv.check_known({"seed", "n_days", "start_day", "n_continuous", "n_phaser_clusters", "phaser_cluster_size",
                  "n_oneshot", "release_days", "base_rate", "burst_rate", "output_dir"});
  SynthJob job;
  auto& s = job.synth;
  auto count = [&](std::string_view key, std::size_t fallback) {
    const long v = kv.get_int(key, static_cast<long>(fallback));
    if (v < 0) throw UsageError("config key '" + std::string(key) + "' must be non-negative");
    return static_cast<std::size_t>(v);
  };
  s.seed = kv.get_u64("seed", s.seed);
  s.n_days = static_cast<int>(count("n_days", static_cast<std::size_t>(s.n_days)));
  if (const auto v = kv.get("start_day")) s.start_day = parse_config_day("start_day", *v);
  s.n_continuous = count("n_continuous", s.n_continuous);
  s.n_phaser_clusters = count("n_phaser_clusters", s.n_phaser_clusters);
  s.phaser_cluster_size = count("phaser_cluster_size", s.phaser_cluster_size);
  s.n_oneshot = count("n_oneshot", s.n_oneshot);
  if (kv.has("release_days")) {
    s.release_days.clear();
    std::istringstream list(kv.get("release_days").value_or(""));
    std::string item;
    while (std::getline(list, item, ',')) {
      const auto text = trim(item);
      if (!text.empty()) s.release_days.push_back(parse_number<int>("release_days", text));
    }
  }
  s.base_rate = kv.get_double("base_rate", s.base_rate);
  s.burst_rate = kv.get_double("burst_rate", s.burst_rate);
  if (const auto out = kv.get_path("output_dir")) job.output_dir = *out;
  return job;
}

}  // namespace bugsna
