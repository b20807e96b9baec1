// Command line front end: spin-flip game plays and equilibrium scans,
// finite game analysis from JSON documents, and Ising buy/hold market
// analysis from price or return CSVs.  Exit codes: 0 success, 2 invalid
// input, 3 semantic precondition failure, 4 resource cap exceeded.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qstrat/games.hpp"
#include "qstrat/ising.hpp"
#include "qstrat/io/game_doc.hpp"
#include "qstrat/io/price_csv.hpp"
#include "qstrat/io/report.hpp"
#include "qstrat/quantum.hpp"
#include "qstrat/spinflip.hpp"

namespace {

using qstrat::io::Value;

constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitResource = 4;

int fail(int code, const std::string& message) {
  std::cerr << "qstrat: " << message << "\n";
  return code;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qstrat::io::ParseError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_report(const Value& report, const std::string& format) {
  if (format == "csv") {
    std::cout << qstrat::io::to_csv(report);
  } else if (format == "text") {
    std::cout << qstrat::io::to_text(report);
  } else {
    std::cout << qstrat::io::to_json(report);
  }
}

Value report_header(const char* command, const char* mode,
                    const std::optional<std::int64_t>& seed) {
  Value v = Value::object();
  v.set("schema_version", 1);
  v.set("command", command);
  v.set("mode", mode);
  if (seed) v.set("seed", *seed);
  return v;
}

Value complex_pair(qstrat::Complex z) {
  Value v = Value::array();
  v.push(z.real());
  v.push(z.imag());
  return v;
}

Value real_vector(const Eigen::VectorXd& x) {
  Value v = Value::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) v.push(x[i]);
  return v;
}

Value real_matrix(const Eigen::MatrixXd& m) {
  Value v = Value::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Value row = Value::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push(m(i, j));
    v.push(std::move(row));
  }
  return v;
}

Value cell_list(const std::vector<qstrat::games::Cell>& cells) {
  Value v = Value::array();
  for (const qstrat::games::Cell& c : cells) {
    Value pair = Value::array();
    pair.push(static_cast<std::int64_t>(c.row));
    pair.push(static_cast<std::int64_t>(c.col));
    v.push(std::move(pair));
  }
  return v;
}

Value index_list(const std::vector<Eigen::Index>& xs) {
  Value v = Value::array();
  for (const Eigen::Index x : xs) v.push(static_cast<std::int64_t>(x));
  return v;
}

Value strategy_list(const std::vector<qstrat::ising::BitStrategy>& strategies) {
  Value v = Value::array();
  for (const qstrat::ising::BitStrategy& s : strategies) v.push(qstrat::ising::bits_to_string(s));
  return v;
}

struct SpinflipArgs {
  double a_re = 0, a_im = 0, b_re = 0, b_im = 0;
  double a2_re = 0, a2_im = 0, b2_re = 0, b2_im = 0;
  bool second_given = false;
  bool p_given = false;
  double p = 0;
  bool equilibria = false;
  int grid_points = 101;
};

int run_spinflip(const SpinflipArgs& args, const std::string& format,
                 const std::optional<std::int64_t>& seed) {
  using namespace qstrat;
  using namespace qstrat::spinflip;

  if (args.equilibria) {
    Value report = report_header("spinflip", "equilibria", seed);
    report.set("grid_points", args.grid_points);
    Value found = Value::array();
    const int n = args.grid_points;
    for (int i = 0; i < n; ++i) {
      const double p = static_cast<double>(i) / (n - 1);
      const ClassicalStrategy c(p);
      for (int j = 0; j < n; ++j) {
        const double t = static_cast<double>(j) / (n - 1);
        const MoveParams first{Complex(std::sqrt(t), 0.0), Complex(std::sqrt(1.0 - t), 0.0)};
        if (is_two_move_equilibrium(c, first)) {
          Value entry = Value::object();
          entry.set("p", p);
          entry.set("a_sq", t);
          found.push(std::move(entry));
        }
      }
    }
    report.set("equilibria", std::move(found));
    print_report(report, format);
    return 0;
  }

  if (!args.p_given) return fail(kExitInput, "spinflip: --p is required unless --equilibria is given");
  const Complex a(args.a_re, args.a_im);
  const Complex b(args.b_re, args.b_im);
  const double first_norm = std::norm(a) + std::norm(b);
  if (std::abs(first_norm - 1.0) > kStateTol) {
    return fail(kExitInput, "spinflip: first move needs |a|^2 + |b|^2 = 1 within 1e-9, got " +
                                io::format_double(first_norm));
  }
  Complex a2 = a, b2 = b;
  if (args.second_given) {
    a2 = Complex(args.a2_re, args.a2_im);
    b2 = Complex(args.b2_re, args.b2_im);
    const double second_norm = std::norm(a2) + std::norm(b2);
    if (std::abs(second_norm - 1.0) > kStateTol) {
      return fail(kExitInput, "spinflip: second move needs |a|^2 + |b|^2 = 1 within 1e-9, got " +
                                  io::format_double(second_norm));
    }
  }

  const QuantumStrategy q({a, b}, {a2, b2});
  const ClassicalStrategy c(args.p);
  const PlayTranscript transcript = play(q, c);
  const double two_move = two_move_value({a, b}, c);

  Value report = report_header("spinflip", "play", seed);
  report.set("p", args.p);
  Value first = Value::object();
  first.set("a", complex_pair(a));
  first.set("b", complex_pair(b));
  report.set("first", std::move(first));
  Value second = Value::object();
  second.set("a", complex_pair(a2));
  second.set("b", complex_pair(b2));
  report.set("second", std::move(second));
  report.set("rho1_diag", real_vector(measurement_probabilities(transcript.rho1)));
  report.set("rho2_diag", real_vector(measurement_probabilities(transcript.rho2)));
  report.set("rho3_diag", real_vector(measurement_probabilities(transcript.rho3)));
  report.set("p_up", transcript.p_up);
  report.set("two_move_classical_value", two_move);
  report.set("classical_value", transcript.classical_value);
  report.set("quantum_value", transcript.quantum_value);
  print_report(report, format);
  return 0;
}

struct GameArgs {
  std::string file;
  bool mixed = false;
  bool zero_sum = false;
};

int run_game(const GameArgs& args, const std::string& format,
             const std::optional<std::int64_t>& seed) {
  using namespace qstrat::games;
  const qstrat::io::GameDocument doc = qstrat::io::parse_game_document(read_file(args.file));

  if (doc.quantum) {
    if (args.mixed || args.zero_sum) {
      return fail(kExitPrecondition,
                  "game: --mixed and --zero-sum apply to classical payoff tables only");
    }
    const QuantumGameSpec& spec = *doc.quantum;
    const BimatrixGame induced = induced_bimatrix(spec);
    const DominantStrategies dominant = dominant_strategies(induced);

    Value report = report_header("game", "analyze", seed);
    report.set("kind", "quantum");
    report.set("dimension", static_cast<std::int64_t>(spec.dimension()));
    report.set("order", spec.order() == MoveOrder::a_first ? "a_first" : "b_first");
    report.set("rows", static_cast<std::int64_t>(induced.rows()));
    report.set("cols", static_cast<std::int64_t>(induced.cols()));
    report.set("payoff_a", real_matrix(induced.payoff_a()));
    report.set("payoff_b", real_matrix(induced.payoff_b()));
    report.set("quantum_nash", cell_list(quantum_nash_finite(spec)));
    report.set("dominant_rows", index_list(dominant.rows));
    report.set("dominant_cols", index_list(dominant.cols));
    report.set("pareto", cell_list(pareto_outcomes(induced)));
    print_report(report, format);
    return 0;
  }

  const BimatrixGame& g = *doc.classical;
  if (args.mixed && !(g.rows() == 2 && g.cols() == 2)) {
    return fail(kExitPrecondition, "game: --mixed requires a 2x2 game");
  }
  if (args.zero_sum) {
    if (g.rows() != 2) {
      return fail(kExitPrecondition, "game: --zero-sum requires exactly two rows");
    }
    if ((g.payoff_a() + g.payoff_b()).cwiseAbs().maxCoeff() > qstrat::kExactTol) {
      return fail(kExitPrecondition,
                  "game: --zero-sum requires payoff_b = -payoff_a within 1e-12");
    }
  }

  const DominantStrategies dominant = dominant_strategies(g);
  Value report = report_header("game", "analyze", seed);
  report.set("kind", "classical");
  report.set("rows", static_cast<std::int64_t>(g.rows()));
  report.set("cols", static_cast<std::int64_t>(g.cols()));
  report.set("dominant_rows", index_list(dominant.rows));
  report.set("dominant_cols", index_list(dominant.cols));
  report.set("pure_nash", cell_list(pure_nash(g)));
  report.set("pareto", cell_list(pareto_outcomes(g)));
  if (args.mixed) {
    const MixedNashResult result = mixed_nash_2x2(g);
    Value mixed = Value::object();
    mixed.set("degenerate", result.degenerate);
    Value list = Value::array();
    for (const MixedProfile& profile : result.equilibria) {
      Value entry = Value::object();
      entry.set("row_probs", real_vector(profile.row_probs));
      entry.set("col_probs", real_vector(profile.col_probs));
      list.push(std::move(entry));
    }
    mixed.set("equilibria", std::move(list));
    report.set("mixed", std::move(mixed));
  }
  if (args.zero_sum) {
    const ZeroSumSolution sol = zero_sum_value(g);
    Value zs = Value::object();
    zs.set("value", sol.value);
    Value profile = Value::array();
    profile.push(sol.row_profile[0]);
    profile.push(sol.row_profile[1]);
    zs.set("row_profile", std::move(profile));
    report.set("zero_sum", std::move(zs));
  }
  print_report(report, format);
  return 0;
}

struct IsingArgs {
  std::string prices_path;
  std::string returns_path;
  double j = 0;
  double eps = 0;
  double beta = 0;
  std::size_t cap = qstrat::ising::kDefaultEnumerationCap;
};

int run_ising(const IsingArgs& args, bool optimize, const std::string& format,
              const std::optional<std::int64_t>& seed) {
  using namespace qstrat::ising;
  const bool have_prices = !args.prices_path.empty();
  const bool have_returns = !args.returns_path.empty();
  if (have_prices == have_returns) {
    return fail(kExitInput, "ising: give exactly one of --prices or --returns");
  }

  qstrat::io::ParsedSeries series;
  Eigen::VectorXd h_values;
  if (have_prices) {
    series = qstrat::io::parse_price_csv(read_file(args.prices_path));
    const LogReturns h = log_returns(PriceSeries(series.values));
    h_values = h.values();
  } else {
    series = qstrat::io::parse_returns_csv(read_file(args.returns_path));
    h_values.resize(static_cast<Eigen::Index>(series.values.size()));
    for (std::size_t i = 0; i < series.values.size(); ++i) {
      h_values[static_cast<Eigen::Index>(i)] = series.values[i];
    }
  }
  const LogReturns h(h_values);

  Value report = report_header("ising", optimize ? "optimize" : "thermo", seed);
  report.set("k", static_cast<std::int64_t>(h.size()));
  report.set("j", args.j);

  if (optimize) {
    report.set("eps", args.eps);
    if (!series.timestamps.empty()) {
      Value ts = Value::array();
      for (const std::string& stamp : series.timestamps) ts.push(stamp);
      report.set("timestamps", std::move(ts));
    }
    const GroundState gs = ground_state(h, args.j);
    const GroundReport ground = potential_ground_states(h, args.j, args.eps, args.cap);
    report.set("energy", ground.energy);
    report.set("strategy", bits_to_string(gs.strategy));
    report.set("ground_states", strategy_list(ground.ground_states));
    report.set("potential_ground_states", strategy_list(ground.potential_ground_states));
    report.set("coherence_depth", ground.coherence_depth);
    Value endpoints = Value::array();
    for (const int e : ground.viable_endpoints) endpoints.push(e);
    report.set("viable_endpoints", std::move(endpoints));
  } else {
    report.set("beta", args.beta);
    if (!series.timestamps.empty()) {
      Value ts = Value::array();
      for (const std::string& stamp : series.timestamps) ts.push(stamp);
      report.set("timestamps", std::move(ts));
    }
    const Thermodynamics thermo = thermodynamics(h, MarketParams(args.j, args.beta));
    report.set("log_partition", thermo.log_partition);
    report.set("free_energy", thermo.free_energy);
    report.set("mean_energy", thermo.mean_energy);
    report.set("occupations", real_vector(thermo.occupations));
  }
  print_report(report, format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum strategy games and Ising market analysis"};
  app.require_subcommand(1);

  std::string format_flag;
  app.add_option("--format", format_flag,
                 "output format: json, csv, or text (default json; env QSTRAT_FORMAT sets the default)")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  std::optional<std::int64_t> seed;
  app.add_option("--seed", seed, "echoed into reports; reserved for randomized generators");

  SpinflipArgs spin;
  CLI::App* spin_cmd =
      app.add_subcommand("spinflip", "play the spin-flip game or scan for equilibria");
  spin_cmd->fallthrough();
  spin_cmd->add_option("--a-re", spin.a_re, "first move amplitude a, real part");
  spin_cmd->add_option("--a-im", spin.a_im, "first move amplitude a, imaginary part");
  spin_cmd->add_option("--b-re", spin.b_re, "first move amplitude b, real part");
  spin_cmd->add_option("--b-im", spin.b_im, "first move amplitude b, imaginary part");
  CLI::Option* a2_re_opt =
      spin_cmd->add_option("--a2-re", spin.a2_re, "second move amplitude a, real part");
  CLI::Option* a2_im_opt =
      spin_cmd->add_option("--a2-im", spin.a2_im, "second move amplitude a, imaginary part");
  CLI::Option* b2_re_opt =
      spin_cmd->add_option("--b2-re", spin.b2_re, "second move amplitude b, real part");
  CLI::Option* b2_im_opt =
      spin_cmd->add_option("--b2-im", spin.b2_im, "second move amplitude b, imaginary part");
  CLI::Option* p_opt = spin_cmd->add_option("--p", spin.p, "classical flip probability")
                           ->check(CLI::Range(0.0, 1.0));
  spin_cmd->add_flag("--equilibria", spin.equilibria,
                     "scan the two-move equilibrium condition on a parameter grid");
  spin_cmd->add_option("--grid-points", spin.grid_points, "grid points per parameter")
      ->check(CLI::Range(2, 100000));

  GameArgs game;
  CLI::App* game_cmd = app.add_subcommand("game", "analyze a finite two-player game");
  game_cmd->fallthrough();
  game_cmd->require_subcommand(1);
  CLI::App* analyze_cmd = game_cmd->add_subcommand("analyze", "analyze a JSON game description");
  analyze_cmd->fallthrough();
  analyze_cmd->add_option("file", game.file, "JSON game description file")->required();
  analyze_cmd->add_flag("--mixed", game.mixed, "also report mixed equilibria (2x2 games)");
  analyze_cmd->add_flag("--zero-sum", game.zero_sum,
                        "also report the zero-sum maximin (two-row games)");

  IsingArgs ising;
  CLI::App* ising_cmd =
      app.add_subcommand("ising", "buy/hold strategy analysis over a price series");
  ising_cmd->fallthrough();
  ising_cmd->require_subcommand(1);
  CLI::App* optimize_cmd = ising_cmd->add_subcommand("optimize", "minimum-energy strategies");
  CLI::App* thermo_cmd =
      ising_cmd->add_subcommand("thermo", "finite-temperature thermodynamics");
  for (CLI::App* cmd : {optimize_cmd, thermo_cmd}) {
    cmd->fallthrough();
    cmd->add_option("--prices", ising.prices_path,
                    "CSV of prices ('price' or 'timestamp,price' rows)");
    cmd->add_option("--returns", ising.returns_path, "CSV of precomputed log returns");
    cmd->add_option("--j", ising.j, "transaction cost per switch")
        ->required()
        ->check(CLI::NonNegativeNumber);
  }
  optimize_cmd->add_option("--eps", ising.eps, "tie tolerance for reported strategies")
      ->check(CLI::NonNegativeNumber);
  optimize_cmd->add_option("--cap", ising.cap, "maximum number of reported strategies")
      ->check(CLI::PositiveNumber);
  thermo_cmd->add_option("--beta", ising.beta, "inverse temperature")
      ->required()
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  const char* env_format = std::getenv("QSTRAT_FORMAT");
  if (env_format != nullptr) {
    const std::string value(env_format);
    if (value != "json" && value != "csv" && value != "text") {
      return fail(kExitInput, "QSTRAT_FORMAT must be json, csv, or text");
    }
  }
  const std::string format =
      !format_flag.empty() ? format_flag : (env_format != nullptr ? env_format : "json");

  try {
    if (app.got_subcommand(spin_cmd)) {
      spin.p_given = p_opt->count() > 0;
      spin.second_given = a2_re_opt->count() > 0 || a2_im_opt->count() > 0 ||
                          b2_re_opt->count() > 0 || b2_im_opt->count() > 0;
      return run_spinflip(spin, format, seed);
    }
    if (app.got_subcommand(game_cmd)) {
      return run_game(game, format, seed);
    }
    if (app.got_subcommand(ising_cmd)) {
      return run_ising(ising, ising_cmd->got_subcommand(optimize_cmd), format, seed);
    }
  } catch (const qstrat::ising::EnumerationCapExceeded& e) {
    return fail(kExitResource, e.what());
  } catch (const qstrat::io::ParseError& e) {
    return fail(kExitInput, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kExitInput, e.what());
  }
  return 0;
}
