#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include <json.hpp>

#include "qstrat/io/game_doc.hpp"
#include "qstrat/io/price_csv.hpp"
#include "qstrat/io/report.hpp"

using namespace qstrat::io;

TEST_CASE("price csv accepts plain, headered, and timestamped layouts") {
  SUBCASE("plain single column") {
    const ParsedSeries s = parse_price_csv("100\n105\n");
    CHECK(s.values == std::vector<double>({100.0, 105.0}));
    CHECK(s.timestamps.empty());
  }
  SUBCASE("header is auto-detected") {
    const ParsedSeries s = parse_price_csv("price\n100\n105\n");
    CHECK(s.values == std::vector<double>({100.0, 105.0}));
  }
  SUBCASE("timestamp column is preserved") {
    const ParsedSeries s = parse_price_csv("2020-01-01,100\n2020-01-02,105\n");
    CHECK(s.values == std::vector<double>({100.0, 105.0}));
    CHECK(s.timestamps == std::vector<std::string>({"2020-01-01", "2020-01-02"}));
  }
  SUBCASE("headered timestamp column") {
    const ParsedSeries s = parse_price_csv("timestamp,price\n2020-01-01,100\n2020-01-02,105\n");
    CHECK(s.values == std::vector<double>({100.0, 105.0}));
    CHECK(s.timestamps.size() == 2);
  }
  SUBCASE("blank lines and windows line endings are tolerated") {
    const ParsedSeries s = parse_price_csv("price\r\n\r\n100\r\n105\r\n\r\n");
    CHECK(s.values == std::vector<double>({100.0, 105.0}));
  }
  SUBCASE("whitespace around fields is trimmed") {
    const ParsedSeries s = parse_price_csv(" 100 \n\t105\n");
    CHECK(s.values == std::vector<double>({100.0, 105.0}));
  }
}

TEST_CASE("price csv rejects malformed input with row numbers") {
  CHECK_THROWS_WITH_AS(parse_price_csv("100\n-5\n"), doctest::Contains("row 2"), ParseError);
  CHECK_THROWS_WITH_AS(parse_price_csv("100\n0\n"), doctest::Contains("row 2"), ParseError);
  CHECK_THROWS_WITH_AS(parse_price_csv("price\n100\nabc\n"), doctest::Contains("row 3"),
                       ParseError);
  CHECK_THROWS_AS(parse_price_csv(""), ParseError);
  CHECK_THROWS_AS(parse_price_csv("100\n"), ParseError);  // fewer than two prices
  CHECK_THROWS_WITH_AS(parse_price_csv("100\n2020-01-02,105\n"),
                       doctest::Contains("row 2"), ParseError);  // column count drift
  CHECK_THROWS_AS(parse_price_csv("a,b,c\n1,2,3\n"), ParseError);  // too many columns
  CHECK_THROWS_AS(parse_price_csv("100\ninf\n"), ParseError);
}

TEST_CASE("returns csv allows negatives and single rows") {
  const ParsedSeries s = parse_returns_csv("0.05\n-0.01\n0.04\n");
  CHECK(s.values == std::vector<double>({0.05, -0.01, 0.04}));
  const ParsedSeries one = parse_returns_csv("h\n-0.3\n");
  CHECK(one.values == std::vector<double>({-0.3}));
  CHECK_THROWS_AS(parse_returns_csv(""), ParseError);
  CHECK_THROWS_WITH_AS(parse_returns_csv("0.1\nxyz\n"), doctest::Contains("row 2"), ParseError);
}

TEST_CASE("classical game documents parse into payoff tables") {
  const GameDocument doc = parse_game_document(R"({
    "payoff_a": [[3, 0], [5, 1]],
    "payoff_b": [[3, 5], [0, 1]]
  })");
  REQUIRE(doc.classical.has_value());
  CHECK_FALSE(doc.quantum.has_value());
  CHECK(doc.classical->payoff_a()(1, 0) == 5.0);
  CHECK(doc.classical->payoff_b()(0, 1) == 5.0);
}

TEST_CASE("classical game documents reject malformed tables") {
  CHECK_THROWS_AS(parse_game_document("not json"), ParseError);
  CHECK_THROWS_AS(parse_game_document("{}"), ParseError);
  CHECK_THROWS_AS(parse_game_document(R"({"payoff_a": [[1, 2]]})"), ParseError);
  // Ragged rows.
  CHECK_THROWS_WITH_AS(
      parse_game_document(R"({"payoff_a": [[1, 2], [3]], "payoff_b": [[1, 2], [3, 4]]})"),
      doctest::Contains("row 1"), ParseError);
  // Shape mismatch between players.
  CHECK_THROWS_AS(
      parse_game_document(R"({"payoff_a": [[1, 2]], "payoff_b": [[1], [2]]})"), ParseError);
  // Non-numeric entry.
  CHECK_THROWS_AS(
      parse_game_document(R"({"payoff_a": [[1, "x"]], "payoff_b": [[1, 2]]})"), ParseError);
}

namespace {

const char* kQuantumDoc = R"({
  "dimension": 2,
  "rho": [[1, 0], [0, 0], [0, 0], [0, 0]],
  "strategies_a": [
    [{"weight": 1.0, "matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}],
    [{"weight": 1.0, "matrix": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]}]
  ],
  "strategies_b": [
    [{"weight": 1.0, "matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}]
  ],
  "observable_a": [[1, 0], [0, 0], [0, 0], [-1, 0]],
  "observable_b": [[-1, 0], [0, 0], [0, 0], [1, 0]]
})";

}  // namespace

TEST_CASE("quantum game documents parse dimensions, strategies, and observables") {
  const GameDocument doc = parse_game_document(kQuantumDoc);
  REQUIRE(doc.quantum.has_value());
  CHECK_FALSE(doc.classical.has_value());
  const qstrat::games::QuantumGameSpec& spec = *doc.quantum;
  CHECK(spec.dimension() == 2);
  CHECK(spec.strategies_a().size() == 2);
  CHECK(spec.strategies_b().size() == 1);
  CHECK(spec.order() == qstrat::games::MoveOrder::a_first);
  CHECK(spec.observable_a()(0, 0) == qstrat::Complex(1, 0));
  CHECK(spec.observable_a()(1, 1) == qstrat::Complex(-1, 0));
}

TEST_CASE("quantum game documents reject structural errors") {
  // Missing a required key.
  CHECK_THROWS_AS(parse_game_document(R"({"dimension": 2, "rho": [[1,0],[0,0],[0,0],[0,0]]})"),
                  ParseError);
  // rho has the wrong number of entries for the declared dimension.
  std::string bad(kQuantumDoc);
  const std::string target = "\"rho\": [[1, 0], [0, 0], [0, 0], [0, 0]]";
  bad.replace(bad.find(target), target.size(), "\"rho\": [[1, 0], [0, 0]]");
  CHECK_THROWS_AS(parse_game_document(bad), ParseError);
  // Complex entries must be [re, im] pairs.
  std::string triple(kQuantumDoc);
  const std::string pair = "\"observable_a\": [[1, 0], [0, 0], [0, 0], [-1, 0]]";
  triple.replace(triple.find(pair), pair.size(),
                 "\"observable_a\": [[1, 0, 0], [0, 0], [0, 0], [-1, 0]]");
  CHECK_THROWS_AS(parse_game_document(triple), ParseError);
}

TEST_CASE("quantum documents honor the declared move order") {
  std::string reordered(kQuantumDoc);
  reordered.insert(reordered.rfind('}'), R"(, "order": "b_first")");
  const GameDocument doc = parse_game_document(reordered);
  REQUIRE(doc.quantum.has_value());
  CHECK(doc.quantum->order() == qstrat::games::MoveOrder::b_first);

  std::string bad(kQuantumDoc);
  bad.insert(bad.rfind('}'), R"(, "order": "sideways")");
  CHECK_THROWS_AS(parse_game_document(bad), ParseError);
}

TEST_CASE("report values serialize to json that a parser round-trips") {
  Value report = Value::object();
  report.set("schema_version", 1);
  report.set("name", "spin\"flip\n");
  report.set("ratio", 0.1);
  report.set("flag", true);
  report.set("nothing", nullptr);
  Value list = Value::array();
  list.push(1.5);
  list.push(-2);
  Value inner = Value::object();
  inner.set("x", 1e-300);
  list.push(std::move(inner));
  report.set("items", std::move(list));
  report.set("empty_list", Value::array());
  report.set("empty_obj", Value::object());

  const std::string text = to_json(report);
  const nlohmann::json parsed = nlohmann::json::parse(text);
  CHECK(parsed["schema_version"] == 1);
  CHECK(parsed["name"] == "spin\"flip\n");
  CHECK(parsed["ratio"] == 0.1);  // %.17g is loss-free for doubles
  CHECK(parsed["flag"] == true);
  CHECK(parsed["nothing"].is_null());
  CHECK(parsed["items"][0] == 1.5);
  CHECK(parsed["items"][1] == -2);
  CHECK(parsed["items"][2]["x"] == 1e-300);
  CHECK(parsed["empty_list"].is_array());
  CHECK(parsed["empty_list"].empty());
  CHECK(parsed["empty_obj"].is_object());

  // Field order is insertion order, not alphabetical.
  CHECK(text.find("schema_version") < text.find("name"));
  CHECK(text.find("name") < text.find("ratio"));
}

TEST_CASE("seventeen significant digits round-trip doubles exactly") {
  for (const double x : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -0.0, 123456789.123456789}) {
    const std::string s = format_double(x);
    CHECK(std::stod(s) == x);
  }
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("csv output flattens nested fields with dotted paths and indices") {
  Value report = Value::object();
  report.set("command", "ising");
  Value nested = Value::object();
  nested.set("value", 0.5);
  report.set("zero_sum", std::move(nested));
  Value arr = Value::array();
  arr.push("a,b");
  arr.push("q\"q");
  report.set("tags", std::move(arr));

  const std::string csv = to_csv(report);
  CHECK(csv == "field,value\n"
               "command,ising\n"
               "zero_sum.value,0.5\n"
               "tags[0],\"a,b\"\n"
               "tags[1],\"q\"\"q\"\n");
}

TEST_CASE("text output prints one assignment per line") {
  Value report = Value::object();
  report.set("k", 3);
  Value arr = Value::array();
  arr.push(false);
  report.set("flags", std::move(arr));
  CHECK(to_text(report) == "k = 3\nflags[0] = false\n");
}
