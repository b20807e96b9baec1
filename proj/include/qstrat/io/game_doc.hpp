#pragma once

// JSON game descriptions.  Classical documents carry rectangular payoff_a /
// payoff_b tables.  Quantum documents carry dimension, rho (row-major
// [re, im] pairs), strategies_a / strategies_b (lists of weighted unitary
// branches), observable_a / observable_b, and an optional move order.

#include <optional>
#include <string>

#include "qstrat/games.hpp"
#include "qstrat/io/price_csv.hpp"  // ParseError

namespace qstrat::io {

struct GameDocument {
  std::optional<games::BimatrixGame> classical;
  std::optional<games::QuantumGameSpec> quantum;
};

GameDocument parse_game_document(const std::string& text);

}  // namespace qstrat::io
