/*
 * Copyright 2026 The dubreil authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "essentiality.hpp"
#include "fields.hpp"
#include "json_io.hpp"

namespace dubreil {

// Session-wide knobs shared by every command.  The field string selects the
// coefficient field ("q", or "fp:<prime>" with a prime modulus); the seed
// feeds the Monte Carlo strategy and is echoed in every report so reruns are
// reproducible.
struct SessionConfig {
  std::string field = "q";
  std::uint64_t seed = 0;
  std::optional<int> horizon;
  std::string si_strategy = "structural";
  long long mc_trials = 10000;
  std::string format = "text";
};

// Parsed shape of the field string: prime == 0 means the rationals.
struct FieldChoice {
  std::int64_t prime = 0;
};

inline FieldChoice parse_field(const std::string& s) {
  if (s == "q" || s == "Q") return {};
  const std::string prefix = "fp:";
  if (s.rfind(prefix, 0) != 0)
    throw input_error("config: field must be \"q\" or \"fp:<prime>\"");
  const std::string digits = s.substr(prefix.size());
  if (digits.empty() || digits.size() > 9)
    throw input_error("config: unusable field modulus");
  std::int64_t p = 0;
  for (char c : digits) {
    if (c < '0' || c > '9')
      throw input_error("config: the field modulus must be a number");
    p = p * 10 + (c - '0');
  }
  if (p < 2) throw input_error("config: the field modulus must be at least 2");
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0)
      throw input_error("config: the field modulus must be prime");
  return {p};
}

inline SIStrategy parse_strategy(const std::string& s) {
  if (s == "structural") return SIStrategy::Structural;
  if (s == "exhaustive") return SIStrategy::Exhaustive;
  if (s == "montecarlo") return SIStrategy::MonteCarlo;
  throw input_error(
      "config: si-strategy must be structural, exhaustive, or montecarlo");
}

inline SIOptions make_si_options(const SessionConfig& cfg) {
  SIOptions opt;
  opt.strategy = parse_strategy(cfg.si_strategy);
  opt.mc_trials = cfg.mc_trials;
  opt.seed = cfg.seed;
  return opt;
}

inline void validate_config(const SessionConfig& cfg) {
  parse_field(cfg.field);
  parse_strategy(cfg.si_strategy);
  if (cfg.mc_trials < 0)
    throw input_error("config: mc-trials must be nonnegative");
  if (cfg.horizon && *cfg.horizon < 0)
    throw input_error("config: the horizon must be nonnegative");
  if (cfg.format != "json" && cfg.format != "text")
    throw input_error("config: format must be json or text");
}

inline Json config_to_json(const SessionConfig& cfg) {
  Json out{{"field", cfg.field},
           {"seed", cfg.seed},
           {"horizon", nullptr},
           {"si_strategy", cfg.si_strategy},
           {"mc_trials", cfg.mc_trials},
           {"format", cfg.format}};
  if (cfg.horizon) out["horizon"] = *cfg.horizon;
  return out;
}

}  // namespace dubreil
