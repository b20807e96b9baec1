#include "qstrat/io/game_doc.hpp"

#include <json.hpp>

namespace qstrat::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw ParseError("game document: " + message);
}

Eigen::MatrixXd parse_real_matrix(const json& node, const char* name) {
  if (!node.is_array() || node.empty()) fail(std::string(name) + " must be a nonempty array of rows");
  const std::size_t rows = node.size();
  std::size_t cols = 0;
  Eigen::MatrixXd m;
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = node[i];
    if (!row.is_array() || row.empty()) fail(std::string(name) + " row " + std::to_string(i) + " must be a nonempty array");
    if (i == 0) {
      cols = row.size();
      m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    } else if (row.size() != cols) {
      fail(std::string(name) + " is ragged at row " + std::to_string(i));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (!row[j].is_number()) fail(std::string(name) + " has a non-numeric entry at [" + std::to_string(i) + "][" + std::to_string(j) + "]");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j].get<double>();
    }
  }
  return m;
}

Complex parse_complex_pair(const json& node, const std::string& name) {
  if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number()) {
    fail(name + " must be a [re, im] number pair");
  }
  return Complex(node[0].get<double>(), node[1].get<double>());
}

// Flat row-major list of d*d [re, im] pairs.
ComplexMatrix parse_complex_row_major(const json& node, Eigen::Index d, const char* name) {
  if (!node.is_array() || node.size() != static_cast<std::size_t>(d * d)) {
    fail(std::string(name) + " must be a flat row-major list of " + std::to_string(d * d) +
         " [re, im] pairs");
  }
  ComplexMatrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      m(i, j) = parse_complex_pair(node[static_cast<std::size_t>(i * d + j)],
                                   std::string(name) + " entry " + std::to_string(i * d + j));
    }
  }
  return m;
}

// Nested d x d array of [re, im] pairs.
ComplexMatrix parse_complex_nested(const json& node, Eigen::Index d, const std::string& name) {
  if (!node.is_array() || node.size() != static_cast<std::size_t>(d)) {
    fail(name + " must be a " + std::to_string(d) + " x " + std::to_string(d) + " array");
  }
  ComplexMatrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const json& row = node[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(d)) {
      fail(name + " row " + std::to_string(i) + " must have " + std::to_string(d) + " entries");
    }
    for (Eigen::Index j = 0; j < d; ++j) {
      m(i, j) = parse_complex_pair(row[static_cast<std::size_t>(j)],
                                   name + " entry [" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
  }
  return m;
}

std::vector<MixedUnitaryAction> parse_strategies(const json& node, Eigen::Index d,
                                                 const char* name) {
  if (!node.is_array() || node.empty()) fail(std::string(name) + " must be a nonempty array");
  std::vector<MixedUnitaryAction> out;
  for (std::size_t s = 0; s < node.size(); ++s) {
    const json& strategy = node[s];
    const std::string label = std::string(name) + "[" + std::to_string(s) + "]";
    if (!strategy.is_array() || strategy.empty()) fail(label + " must be a nonempty array of branches");
    std::vector<MixedUnitaryAction::Branch> branches;
    for (std::size_t b = 0; b < strategy.size(); ++b) {
      const json& branch = strategy[b];
      const std::string branch_label = label + " branch " + std::to_string(b);
      if (!branch.is_object() || !branch.contains("weight") || !branch.contains("matrix")) {
        fail(branch_label + " must be an object with weight and matrix");
      }
      if (!branch["weight"].is_number()) fail(branch_label + " weight must be a number");
      branches.push_back({branch["weight"].get<double>(),
                          UnitaryStrategy(parse_complex_nested(branch["matrix"], d,
                                                               branch_label + " matrix"))});
    }
    out.emplace_back(std::move(branches));
  }
  return out;
}

}  // namespace

GameDocument parse_game_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(e.what());
  }
  if (!doc.is_object()) fail("top level must be an object");

  GameDocument out;
  if (doc.contains("dimension") || doc.contains("rho")) {
    for (const char* key : {"dimension", "rho", "strategies_a", "strategies_b", "observable_a",
                            "observable_b"}) {
      if (!doc.contains(key)) fail(std::string("quantum spec is missing '") + key + "'");
    }
    if (!doc["dimension"].is_number_integer() || doc["dimension"].get<std::int64_t>() < 1 ||
        doc["dimension"].get<std::int64_t>() > 64) {
      fail("dimension must be an integer in [1, 64]");
    }
    const Eigen::Index d = doc["dimension"].get<Eigen::Index>();

    games::MoveOrder order = games::MoveOrder::a_first;
    if (doc.contains("order")) {
      if (!doc["order"].is_string()) fail("order must be 'a_first' or 'b_first'");
      const std::string value = doc["order"].get<std::string>();
      if (value == "a_first") {
        order = games::MoveOrder::a_first;
      } else if (value == "b_first") {
        order = games::MoveOrder::b_first;
      } else {
        fail("order must be 'a_first' or 'b_first'");
      }
    }

    out.quantum.emplace(DensityMatrix(parse_complex_row_major(doc["rho"], d, "rho")),
                        parse_strategies(doc["strategies_a"], d, "strategies_a"),
                        parse_strategies(doc["strategies_b"], d, "strategies_b"),
                        parse_complex_row_major(doc["observable_a"], d, "observable_a"),
                        parse_complex_row_major(doc["observable_b"], d, "observable_b"), order);
    return out;
  }

  if (!doc.contains("payoff_a") || !doc.contains("payoff_b")) {
    fail("expected payoff_a/payoff_b tables or a quantum spec");
  }
  Eigen::MatrixXd a = parse_real_matrix(doc["payoff_a"], "payoff_a");
  Eigen::MatrixXd b = parse_real_matrix(doc["payoff_b"], "payoff_b");
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail("payoff_a and payoff_b must have the same shape");
  }
  out.classical.emplace(std::move(a), std::move(b));
  return out;
}

}  // namespace qstrat::io
