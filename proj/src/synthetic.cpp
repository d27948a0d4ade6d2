#include "lolpred/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>
#include <string>

#include "lolpred/error.hpp"
#include "lolpred/rng.hpp"

namespace lolpred {

namespace {

constexpr std::int64_t kMsPerMin = 60000;
constexpr std::int64_t kStartingTeamGold = 2500;  // 500 per player

int poisson(std::mt19937_64& rng, double mean) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<int> dist(mean);
  return dist(rng);
}

struct SideState {
  std::int64_t gold = kStartingTeamGold;
  std::int64_t minions = 0;
  std::int64_t jungle = 0;
  std::int64_t level_sum = 5;  // five level-1 players

  SideStats stats() const {
    SideStats s;
    s.total_gold = gold;
    s.minions_killed = minions;
    s.jungle_minions_killed = jungle;
    s.avg_player_level = static_cast<double>(level_sum) / 5.0;
    return s;
  }
};

// Event intensity knobs, per side per minute at full tilt neutrality.
struct Rates {
  double kill_base = 0.20;
  double kill_ramp = 0.85;
  double dragon_attempt = 0.17;   // combined, from minute 5
  double herald_attempt = 0.12;   // combined, minutes 8-19, max 2
  double baron_attempt = 0.10;    // combined, from minute 20
  double tower_base = 0.084;
  double tower_ramp = 0.392;
  double inhib_rate = 0.05;       // per side, from minute 18, scaled by progress
  double gold_base = 1700.0;      // per minute
  double gold_ramp = 600.0;
  double minion_base = 17.0;
  double minion_ramp = 13.0;
  double jungle_base = 5.5;
  double jungle_ramp = 2.5;
  double momentum_init_sd = 1.0;  // m_1 ~ N(0, init_sd); m_w = m_{w-1} + N(0, step_sd)
  double momentum_step_sd = 1.0;
  double momentum_gain = 0.16;    // tilt = tanh(gain * m_w)
  double outcome_noise = 0.20;    // sd of the decision noise, as a fraction of sd(A)
  double kill_tilt = 0.9;
  double objective_tilt = 0.45;   // on top of the 0.5 coin
  double gold_tilt = 0.18;
  double minion_tilt = 0.12;
  double jungle_tilt = 0.15;
  double level_tilt = 0.05;
};

double level_curve(double minute) {
  return 1.0 + 17.0 * (1.0 - std::exp(-minute / 16.0));
}

MatchTimeline generate_match(const SynthConfig& cfg, int index) {
  std::mt19937_64 rng = make_rng(cfg.seed, static_cast<std::uint64_t>(index));
  const Rates rates;
  const double scale = cfg.event_rate_scale;

  MatchTimeline t;
  {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "SYN_%08d", index);
    t.match_id = buf;
  }

  std::normal_distribution<double> dur(cfg.mean_duration_min, cfg.mean_duration_min / 6.0);
  const double duration_min = std::clamp(dur(rng), 2.5, 67.0);
  t.duration_ms = std::llround(duration_min * kMsPerMin);

  const double init_sd = cfg.skill_sigma * rates.momentum_init_sd;
  const double step_sd = cfg.skill_sigma * rates.momentum_step_sd;
  std::normal_distribution<double> init_draw(0.0, init_sd);
  std::normal_distribution<double> step_draw(0.0, step_sd);
  double momentum = init_draw(rng);
  double advantage = 0.0;              // sum of window-weighted momentum
  std::vector<double> weights;         // per-window advantage weight (last may be partial)

  SideState blue, red;
  t.frames.push_back({0, blue.stats(), red.stats()});

  int dragons_total = 0;
  int heralds_total = 0;
  int towers_blue = 0, towers_red = 0;  // destroyed BY that side, max 11 each

  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (std::int64_t win_start = 0; win_start < t.duration_ms; win_start += kMsPerMin) {
    const std::int64_t win_end = std::min(win_start + kMsPerMin, t.duration_ms);
    const double frac = static_cast<double>(win_end - win_start) / kMsPerMin;
    const double minute = static_cast<double>(win_start) / kMsPerMin;
    const double progress =
        (static_cast<double>(win_start) + static_cast<double>(win_end)) /
        (2.0 * static_cast<double>(t.duration_ms));
    if (win_start > 0) momentum += step_draw(rng);
    advantage += frac * momentum;
    weights.push_back(frac);
    const double tilt = std::tanh(rates.momentum_gain * momentum);

    auto stamp = [&]() {
      std::uniform_int_distribution<std::int64_t> d(win_start, win_end - 1);
      return d(rng);
    };
    auto tilted_side = [&](double strength) {
      return unit(rng) < 0.5 + strength * tilt ? TeamSide::Blue : TeamSide::Red;
    };
    auto push = [&](TimelineEvent e) { t.events.push_back(e); };

    // Champion kills.
    const double kill_rate = scale * (rates.kill_base + rates.kill_ramp * progress) * frac;
    const int blue_kills = poisson(rng, kill_rate * (1.0 + rates.kill_tilt * tilt));
    const int red_kills = poisson(rng, kill_rate * (1.0 - rates.kill_tilt * tilt));
    for (int k = 0; k < blue_kills; ++k) {
      push({stamp(), EventKind::ChampionKill, TeamSide::Blue, MonsterType::None,
            DragonElement::None, BuildingType::None});
    }
    for (int k = 0; k < red_kills; ++k) {
      push({stamp(), EventKind::ChampionKill, TeamSide::Red, MonsterType::None,
            DragonElement::None, BuildingType::None});
    }

    // Dragons; elementals until late game, then elder.
    int blue_objectives = 0, red_objectives = 0;
    int blue_barons = 0, red_barons = 0;
    if (minute >= 5.0 && unit(rng) < scale * rates.dragon_attempt * frac) {
      const TeamSide side = tilted_side(rates.objective_tilt);
      DragonElement element;
      if (minute >= 35.0) {
        element = DragonElement::Elder;
      } else {
        static const DragonElement kElements[6] = {
            DragonElement::Hextech, DragonElement::Chemtech, DragonElement::Fire,
            DragonElement::Air,     DragonElement::Earth,    DragonElement::Water};
        std::uniform_int_distribution<int> pick(0, 5);
        element = kElements[pick(rng)];
      }
      push({stamp(), EventKind::EliteMonsterKill, side, MonsterType::Dragon, element,
            BuildingType::None});
      ++dragons_total;
      (side == TeamSide::Blue ? blue_objectives : red_objectives) += 1;
    }

    // Rift Herald: a mid-game objective with at most two spawns.
    if (minute >= 8.0 && minute < 20.0 && heralds_total < 2 &&
        unit(rng) < scale * rates.herald_attempt * frac) {
      const TeamSide side = tilted_side(rates.objective_tilt);
      push({stamp(), EventKind::EliteMonsterKill, side, MonsterType::RiftHerald,
            DragonElement::None, BuildingType::None});
      ++heralds_total;
      (side == TeamSide::Blue ? blue_objectives : red_objectives) += 1;
    }

    // Baron.
    if (minute >= 20.0 && unit(rng) < scale * rates.baron_attempt * frac) {
      const TeamSide side = tilted_side(rates.objective_tilt);
      push({stamp(), EventKind::EliteMonsterKill, side, MonsterType::Baron,
            DragonElement::None, BuildingType::None});
      (side == TeamSide::Blue ? blue_barons : red_barons) += 1;
    }

    // Towers (11 per side on the map) and inhibitors.
    int blue_towers = 0, red_towers = 0;
    if (minute >= 5.0) {
      const double tower_rate =
          scale * (rates.tower_base + rates.tower_ramp * progress) * frac;
      blue_towers = std::min(poisson(rng, tower_rate * (1.0 + rates.kill_tilt * tilt)),
                             11 - towers_blue);
      red_towers = std::min(poisson(rng, tower_rate * (1.0 - rates.kill_tilt * tilt)),
                            11 - towers_red);
      towers_blue += blue_towers;
      towers_red += red_towers;
      for (int k = 0; k < blue_towers; ++k) {
        push({stamp(), EventKind::BuildingKill, TeamSide::Blue, MonsterType::None,
              DragonElement::None, BuildingType::Tower});
      }
      for (int k = 0; k < red_towers; ++k) {
        push({stamp(), EventKind::BuildingKill, TeamSide::Red, MonsterType::None,
              DragonElement::None, BuildingType::Tower});
      }
    }
    if (minute >= 18.0) {
      const double inhib_rate = scale * rates.inhib_rate * progress * frac;
      const int blue_inhibs = poisson(rng, inhib_rate * (1.0 + rates.kill_tilt * tilt));
      const int red_inhibs = poisson(rng, inhib_rate * (1.0 - rates.kill_tilt * tilt));
      for (int k = 0; k < blue_inhibs; ++k) {
        push({stamp(), EventKind::BuildingKill, TeamSide::Blue, MonsterType::None,
              DragonElement::None, BuildingType::Inhibitor});
      }
      for (int k = 0; k < red_inhibs; ++k) {
        push({stamp(), EventKind::BuildingKill, TeamSide::Red, MonsterType::None,
              DragonElement::None, BuildingType::Inhibitor});
      }
    }

    // Farm.
    const double minion_rate = (rates.minion_base + rates.minion_ramp * progress) * frac;
    const double jungle_rate = (rates.jungle_base + rates.jungle_ramp * progress) * frac;
    const std::int64_t blue_minions =
        poisson(rng, minion_rate * (1.0 + rates.minion_tilt * tilt));
    const std::int64_t red_minions =
        poisson(rng, minion_rate * (1.0 - rates.minion_tilt * tilt));
    const std::int64_t blue_jungle =
        poisson(rng, jungle_rate * (1.0 + rates.jungle_tilt * tilt));
    const std::int64_t red_jungle =
        poisson(rng, jungle_rate * (1.0 - rates.jungle_tilt * tilt));
    blue.minions += blue_minions;
    red.minions += red_minions;
    blue.jungle += blue_jungle;
    red.jungle += red_jungle;

    // Income: noisy base stream plus kill and objective bounties.
    const double income = (rates.gold_base + rates.gold_ramp * progress) * frac;
    std::uniform_real_distribution<double> noise(0.93, 1.07);
    blue.gold += std::llround(income * (1.0 + rates.gold_tilt * tilt) * noise(rng)) +
                 300 * blue_kills + 250 * (blue_towers + blue_objectives) +
                 500 * blue_barons;
    red.gold += std::llround(income * (1.0 - rates.gold_tilt * tilt) * noise(rng)) +
                300 * red_kills + 250 * (red_towers + red_objectives) + 500 * red_barons;

    // Levels: shared growth curve, mildly tilted, never decreasing.
    const double end_minute = static_cast<double>(win_end) / kMsPerMin;
    const double base_level = level_curve(end_minute);
    auto bump_level = [&](SideState& s, double side_tilt) {
      const double lvl = std::clamp(base_level * (1.0 + rates.level_tilt * side_tilt), 1.0, 18.0);
      const std::int64_t target = std::clamp<std::int64_t>(std::llround(5.0 * lvl), 5, 90);
      s.level_sum = std::max(s.level_sum, target);
    };
    bump_level(blue, tilt);
    bump_level(red, -tilt);

    t.frames.push_back({win_end, blue.stats(), red.stats()});
  }

  // sd of the realised advantage: A = sum_w c_w m_w with
  // Cov(m_s, m_t) = init_sd^2 + (min(s, t) - 1) * step_sd^2, so
  // Var(A) = sum_s Var(m_s) * c_s * (c_s + 2 * sum_{t>s} c_t).
  double var_advantage = 0.0;
  double tail = 0.0;
  for (std::size_t w = weights.size(); w-- > 0;) {
    const double var_m =
        init_sd * init_sd + static_cast<double>(w) * step_sd * step_sd;
    var_advantage += var_m * weights[w] * (weights[w] + 2.0 * tail);
    tail += weights[w];
  }
  std::normal_distribution<double> decision(0.0,
                                            rates.outcome_noise * std::sqrt(var_advantage));
  t.winner = advantage + decision(rng) > 0.0 ? TeamSide::Blue : TeamSide::Red;

  std::stable_sort(t.events.begin(), t.events.end(),
                   [](const TimelineEvent& a, const TimelineEvent& b) {
                     return a.timestamp_ms < b.timestamp_ms;
                   });
  return t;
}

}  // namespace

std::vector<MatchTimeline> generate_synthetic(const SynthConfig& cfg) {
  if (cfg.n_matches < 1) throw Error(errc::invalid_config, "n_matches must be >= 1");
  if (!(cfg.mean_duration_min > 5.0) || !std::isfinite(cfg.mean_duration_min)) {
    throw Error(errc::invalid_config, "mean_duration_min must be > 5");
  }
  if (!(cfg.skill_sigma > 0.0) || !std::isfinite(cfg.skill_sigma)) {
    throw Error(errc::invalid_config, "skill_sigma must be > 0");
  }
  if (!(cfg.event_rate_scale > 0.0) || !std::isfinite(cfg.event_rate_scale)) {
    throw Error(errc::invalid_config, "event_rate_scale must be > 0");
  }

  std::vector<MatchTimeline> out;
  out.reserve(static_cast<std::size_t>(cfg.n_matches));
  for (int i = 0; i < cfg.n_matches; ++i) {
    out.push_back(generate_match(cfg, i));
  }
  return out;
}

}  // namespace lolpred
