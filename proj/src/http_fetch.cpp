#include "lolpred/http_fetch.hpp"

#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "lolpred/error.hpp"
#include "lolpred/rng.hpp"

namespace lolpred {

void FetchConfig::validate() const {
  if (requests_per_window < 1 || window_ms < 1) {
    throw Error(errc::rate_config_invalid,
                "rate limit needs requests_per_window >= 1 and window_ms >= 1");
  }
  if (max_retries < 0 || timeout_ms < 1 || base_url.empty()) {
    throw Error(errc::rate_config_invalid, "bad fetch configuration");
  }
}

RateLimiter::RateLimiter(int requests_per_window, std::chrono::milliseconds window)
    : limit_(requests_per_window), window_(padded(window)) {}

void RateLimiter::acquire() {
  std::unique_lock lock(mu_);
  for (;;) {
    const auto now = std::chrono::steady_clock::now();
    while (!stamps_.empty() && now - stamps_.front() >= window_) {
      stamps_.pop_front();
    }
    if (static_cast<int>(stamps_.size()) < limit_) {
      stamps_.push_back(now);
      return;
    }
    cv_.wait_until(lock, stamps_.front() + window_);
  }
}

namespace {

bool transient_status(int status) {
  return status == 429 || status == 500 || status == 502 || status == 503;
}

}  // namespace

MatchHistoryClient::MatchHistoryClient(FetchConfig cfg)
    : cfg_(std::move(cfg)),
      limiter_(cfg_.requests_per_window, std::chrono::milliseconds(cfg_.window_ms)),
      jitter_rng_(make_rng(0x6a697474, 0)) {
  cfg_.validate();
}

std::chrono::milliseconds MatchHistoryClient::backoff_delay(int attempt) {
  const double cap = 250.0 * static_cast<double>(1u << std::min(attempt, 16));
  std::scoped_lock lock(rng_mu_);
  std::uniform_real_distribution<double> jitter(0.0, cap);
  return std::chrono::milliseconds(static_cast<long>(jitter(jitter_rng_)));
}

std::string MatchHistoryClient::get_body(const std::string& path_and_query) {
  int last_status = 0;
  bool timed_out = false;

  for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(backoff_delay(attempt - 1));

    limiter_.acquire();
    httplib::Client client(cfg_.base_url);
    client.set_connection_timeout(std::chrono::milliseconds(cfg_.timeout_ms));
    client.set_read_timeout(std::chrono::milliseconds(cfg_.timeout_ms));

    httplib::Headers headers;
    if (!cfg_.api_key.empty()) headers.emplace("X-Riot-Token", cfg_.api_key);

    auto res = client.Get(path_and_query, headers);
    if (!res) {
      timed_out = true;  // connection refused / timeout; worth retrying
      continue;
    }
    if (res->status == 200) return res->body;

    last_status = res->status;
    timed_out = false;
    if (!transient_status(res->status)) {
      throw Error::http(res->status, path_and_query);
    }
  }

  if (timed_out || last_status == 0) {
    throw Error(errc::timeout, "no response from " + cfg_.base_url + path_and_query);
  }
  throw Error::http(last_status, path_and_query + " after retries");
}

std::vector<std::string> MatchHistoryClient::fetch_match_ids(const MatchIdQuery& query) {
  std::string path = "/lol/match/v5/matches/ids?start=" + std::to_string(query.start) +
                     "&count=" + std::to_string(query.count);
  if (!query.tier.empty()) path += "&tier=" + query.tier;

  const std::string body = get_body(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(errc::malformed_json, std::string("match id list: ") + e.what());
  }
  if (!doc.is_array()) {
    throw Error(errc::malformed_json, "match id list is not a JSON array");
  }
  std::vector<std::string> ids;
  for (const auto& item : doc) {
    if (!item.is_string()) {
      throw Error(errc::malformed_json, "match id list holds a non-string");
    }
    ids.push_back(item.get<std::string>());
  }
  return ids;
}

ParsedTimeline MatchHistoryClient::fetch_timeline(const std::string& match_id) {
  return parse_timeline_json(get_body("/lol/match/v5/matches/" + match_id + "/timeline"));
}

}  // namespace lolpred
