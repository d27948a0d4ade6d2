#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "lolpred/timeline_json.hpp"

namespace lolpred {

struct FetchConfig {
  std::string base_url = "http://127.0.0.1:8080";
  std::string api_key;  // sent as X-Riot-Token, never logged
  int requests_per_window = 5;
  int window_ms = 1000;
  int max_retries = 4;  // additional attempts after the first
  int timeout_ms = 5000;

  void validate() const;  // throws RATE_CONFIG_INVALID
};

// Sliding-window gate shared by all requests of one client: at most
// `requests_per_window` acquisitions in any window_ms span. Safe for
// concurrent callers; acquire() blocks until a slot frees up.
class RateLimiter {
 public:
  RateLimiter(int requests_per_window, std::chrono::milliseconds window);

  void acquire();

 private:
  // Pad the window so that downstream arrival times, which trail our send
  // stamps by scheduling noise, stay inside the limit too. The pad grows
  // with the window: a descheduled sender can displace its arrival by tens
  // of milliseconds, and a fixed 50 ms margin is too tight when five sends
  // sit a full second apart.
  static constexpr std::chrono::milliseconds kMinSlack{50};
  static std::chrono::milliseconds padded(std::chrono::milliseconds window) {
    return window + std::max(kMinSlack, window / 5);
  }

  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::chrono::steady_clock::time_point> stamps_;
  int limit_;
  std::chrono::milliseconds window_;
};

struct MatchIdQuery {
  std::string tier;  // opaque, e.g. "IRON-DIAMOND"
  int start = 0;
  int count = 20;
};

// Client for a match-history service shaped like the official one:
//   GET /lol/match/v5/matches/ids?tier=&start=&count=   -> JSON array of ids
//   GET /lol/match/v5/matches/{id}/timeline             -> timeline document
// Transient statuses (429, 500, 502, 503) retry with exponential backoff and
// full jitter; anything else fails immediately. Callers may share one client
// across threads; the rate limit covers them jointly.
class MatchHistoryClient {
 public:
  explicit MatchHistoryClient(FetchConfig cfg);

  std::vector<std::string> fetch_match_ids(const MatchIdQuery& query);
  ParsedTimeline fetch_timeline(const std::string& match_id);

  // One rate-limited, retrying GET; exposed for the limiter tests.
  std::string get_body(const std::string& path_and_query);

 private:
  std::chrono::milliseconds backoff_delay(int attempt);

  FetchConfig cfg_;
  RateLimiter limiter_;
  std::mutex rng_mu_;
  std::mt19937_64 jitter_rng_;
};

}  // namespace lolpred
