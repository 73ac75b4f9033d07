#include "npg/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "npg/parallel.hpp"

namespace npg {

namespace {

StickinessKind stickiness_from_string(const std::string& name) {
  if (name == "reciprocal") return StickinessKind::Reciprocal;
  if (name == "slackness") return StickinessKind::Slackness;
  throw DomainError("unknown stickiness '" + name + "' (reciprocal|slackness)");
}

Leader leader_from_string(const std::string& name) {
  if (name == "isp") return Leader::Isp;
  if (name == "cp") return Leader::Cp;
  throw DomainError("unknown leader '" + name + "' (isp|cp)");
}

std::string to_string(StickinessKind kind) {
  return kind == StickinessKind::Reciprocal ? "reciprocal" : "slackness";
}

}  // namespace

std::string format_number(double value) {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

SweepSpec parse_sweep(const std::string& text) {
  SweepSpec spec;
  std::istringstream in(text);
  std::string token;
  std::vector<std::string> parts;
  while (std::getline(in, token, ':')) parts.push_back(token);
  if (parts.size() != 4)
    throw DomainError("sweep must be <param:start:stop:step>, got '" + text + "'");
  spec.param = parts[0];
  try {
    spec.start = std::stod(parts[1]);
    spec.stop = std::stod(parts[2]);
    spec.step = std::stod(parts[3]);
  } catch (const std::exception&) {
    throw DomainError("sweep bounds must be numeric in '" + text + "'");
  }
  if (!(spec.step > 0.0)) throw DomainError("sweep step must be > 0");
  if (!(spec.stop >= spec.start)) throw DomainError("sweep range is empty");
  return spec;
}

double RunConfig::epsilon_or_default() const {
  if (epsilon) return *epsilon;
  const MarketParams params{d0, d};
  return 1e-6 * params.Umax();
}

namespace {

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw DomainError("config key '" + key + "' needs a numeric value, got '" + value + "'");
  }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw DomainError("config line is not key=value: '" + stripped + "'");
    entries.emplace_back(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
  }
  return entries;
}

void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "scenario") {
    config.scenario = value;
  } else if (key == "d0") {
    config.d0 = parse_double(key, value);
  } else if (key == "d") {
    config.d = parse_double(key, value);
  } else if (key == "ps") {
    config.ps = parse_double(key, value);
  } else if (key == "pa") {
    config.pa = parse_double(key, value);
  } else if (key == "gamma") {
    config.gamma = parse_double(key, value);
  } else if (key == "dl") {
    config.dl = parse_double(key, value);
  } else if (key == "dh") {
    config.dh = parse_double(key, value);
  } else if (key == "d2") {
    config.d2 = parse_double(key, value);
  } else if (key == "stickiness") {
    config.stickiness = value;
  } else if (key == "leader") {
    config.leader = value;
  } else if (key == "sweep") {
    config.sweep_spec = parse_sweep(value);
  } else if (key == "out") {
    config.out_path = value;
  } else if (key == "verify") {
    if (value == "true" || value == "1")
      config.verify = true;
    else if (value == "false" || value == "0")
      config.verify = false;
    else
      throw DomainError("config key 'verify' must be true/false, got '" + value + "'");
  } else if (key == "epsilon") {
    config.epsilon = parse_double(key, value);
  } else if (key == "grid") {
    config.grid = int(parse_double(key, value));
  } else {
    throw DomainError("unknown config key '" + key + "'");
  }
}

namespace {

// Only the transfer rates a variant actually models are kept; the rest are
// pinned at zero.
Transfers transfers_for(Variant variant, double ps, double pa) {
  switch (variant) {
    case Variant::SidePayment:
    case Variant::DuopolySidePayment:
      return {ps, 0.0};
    case Variant::AdCollaboration:
      return {0.0, pa};
    case Variant::AdCompetition:
    case Variant::Stackelberg:
      return {ps, pa};
    default:
      return {0.0, 0.0};
  }
}

}  // namespace

ScenarioSpec make_scenario(const RunConfig& config) {
  ScenarioSpec spec;
  spec.variant = variant_from_string(config.scenario);
  spec.params = {config.d0, config.d};
  spec.transfers = transfers_for(spec.variant, config.ps, config.pa);
  switch (spec.variant) {
    case Variant::MulticlassCollab:
    case Variant::MulticlassLine:
    case Variant::MulticlassCompetition: {
      ClassParams cls;
      cls.gamma = config.gamma;
      cls.dl = config.dl;
      cls.dh = config.dh;
      cls.d2 = config.d2;
      spec.cls = cls;
      break;
    }
    case Variant::Duopoly:
      spec.kind = stickiness_from_string(config.stickiness);
      break;
    case Variant::Stackelberg:
      spec.leader = leader_from_string(config.leader);
      break;
    default:
      break;
  }
  spec.validate();
  return spec;
}

ScenarioRun run_scenario(const RunConfig& config) {
  ScenarioRun run;
  run.spec = make_scenario(config);
  const ScenarioSpec& spec = run.spec;
  const MarketParams& params = spec.params;

  switch (spec.variant) {
    case Variant::BasicCompetition:
      run.outcomes = {solve_basic_competition(params)};
      break;
    case Variant::BasicCollaboration:
      run.outcomes = {solve_basic_collaboration(params)};
      break;
    case Variant::SidePayment:
      run.outcomes = {solve_side_payment(params, spec.transfers.ps)};
      break;
    case Variant::AdCompetition:
      run.outcomes = {
          solve_advertising_competition(params, spec.transfers.ps, spec.transfers.pa)};
      break;
    case Variant::AdCollaboration:
      run.outcomes = {solve_advertising_collaboration(params, spec.transfers.pa)};
      break;
    case Variant::MulticlassCollab: {
      const MulticlassCollabResult result = solve_multiclass_collab_boundary(params, *spec.cls);
      run.outcomes = {result.branch_pl_zero, result.branch_p2_zero};
      break;
    }
    case Variant::MulticlassLine:
      run.line = solve_multiclass_line(params, *spec.cls);
      break;
    case Variant::MulticlassCompetition:
      run.outcomes = {solve_multiclass_competition(params, *spec.cls)};
      break;
    case Variant::Duopoly:
      run.outcomes = {solve_duopoly(params, *spec.kind)};
      break;
    case Variant::DuopolySidePayment:
      run.outcomes = solve_duopoly_side_payments(params, spec.transfers.ps);
      break;
    case Variant::Stackelberg:
      run.outcomes = {solve_stackelberg(params, spec.transfers, *spec.leader)};
      break;
  }

  if (config.verify) {
    const std::size_t grid = std::size_t(config.grid.value_or(2001));
    for (const EquilibriumOutcome& outcome : run.outcomes)
      run.checks.push_back(verify_outcome(spec, outcome, grid, config.epsilon_or_default()));
  }
  return run;
}

namespace {

std::string config_metadata(const RunConfig& config) {
  std::string line = "scenario=" + config.scenario;
  line += " d0=" + format_number(config.d0) + " d=" + format_number(config.d);
  line += " ps=" + format_number(config.ps) + " pa=" + format_number(config.pa);
  line += " gamma=" + format_number(config.gamma);
  if (config.dl) line += " dl=" + format_number(*config.dl);
  if (config.dh) line += " dh=" + format_number(*config.dh);
  if (config.d2) line += " d2=" + format_number(*config.d2);
  line += " stickiness=" + config.stickiness + " leader=" + config.leader;
  if (config.sweep_spec) {
    const SweepSpec& s = *config.sweep_spec;
    line += " sweep=" + s.param + ":" + format_number(s.start) + ":" + format_number(s.stop) +
            ":" + format_number(s.step);
  }
  return line;
}

enum class ColumnFamily { TwoPlayer, Duopoly, Multiclass };

ColumnFamily column_family(Variant variant) {
  switch (variant) {
    case Variant::Duopoly:
    case Variant::DuopolySidePayment:
      return ColumnFamily::Duopoly;
    case Variant::MulticlassCollab:
    case Variant::MulticlassLine:
    case Variant::MulticlassCompetition:
      return ColumnFamily::Multiclass;
    default:
      return ColumnFamily::TwoPlayer;
  }
}

std::vector<std::string> columns_for(ColumnFamily family) {
  switch (family) {
    case ColumnFamily::TwoPlayer:
      return {"x", "p1", "p2", "demand", "u1", "u2", "regime", "stability"};
    case ColumnFamily::Duopoly:
      return {"x", "p1", "p2", "demand", "u1", "u2", "u3", "regime", "stability"};
    case ColumnFamily::Multiclass:
      return {"x", "pl", "ph", "p2", "demand", "dl", "dh", "u1", "u2", "regime", "stability"};
  }
  return {};
}

std::string row_csv(ColumnFamily family, const SweepRow& row) {
  std::string line = format_number(row.x);
  const std::size_t numeric_columns =
      family == ColumnFamily::TwoPlayer ? 5 : (family == ColumnFamily::Duopoly ? 6 : 8);
  if (!row.outcome) {
    for (std::size_t i = 0; i < numeric_columns; ++i) line += ",";
    line += ",invalid,na";
    return line;
  }
  const EquilibriumOutcome& out = *row.outcome;
  auto add = [&line](double v) { line += "," + format_number(v); };
  switch (family) {
    case ColumnFamily::TwoPlayer:
      add(price(out.prices, "p1"));
      add(price(out.prices, "p2"));
      add(out.demand);
      add(out.utilities.at(0));
      add(out.utilities.at(1));
      break;
    case ColumnFamily::Duopoly:
      add(price(out.prices, "p1"));
      add(price(out.prices, "p2"));
      add(out.demand);
      add(out.utilities.at(0));
      add(out.utilities.at(1));
      add(out.utilities.at(2));
      break;
    case ColumnFamily::Multiclass:
      add(price(out.prices, "pl"));
      add(price(out.prices, "ph"));
      add(price(out.prices, "p2"));
      add(out.demand);
      add(out.demand_low.value_or(0.0));
      add(out.demand_high.value_or(0.0));
      add(out.utilities.at(0));
      add(out.utilities.at(1));
      break;
  }
  line += "," + to_string(out.regime) + "," + to_string(out.stability);
  return line;
}

void apply_sweep_param(RunConfig& config, const std::string& name, double value) {
  if (name == "ps") {
    config.ps = value;
  } else if (name == "eta") {
    config.ps = value * MarketParams{config.d0, config.d}.pmax();
  } else if (name == "pa") {
    config.pa = value;
  } else if (name == "gamma") {
    config.gamma = value;
  } else if (name == "d0") {
    config.d0 = value;
  } else if (name == "d") {
    config.d = value;
  } else if (name == "dl") {
    config.dl = value;
  } else if (name == "dh") {
    config.dh = value;
  } else if (name == "d2") {
    config.d2 = value;
  } else {
    throw DomainError("sweep parameter '" + name + "' is not recognized");
  }
}

SweepTable sweep_impl(const RunConfig& config, bool parallel) {
  if (!config.sweep_spec) throw DomainError("sweep requires a sweep specification");
  const SweepSpec& spec = *config.sweep_spec;
  if (variant_from_string(config.scenario) == Variant::MulticlassLine)
    throw DomainError("sweep is not defined for multiclass-line");

  const std::size_t count =
      std::size_t(std::floor((spec.stop - spec.start) / spec.step + 1e-9)) + 1;

  SweepTable table;
  table.metadata = {std::string("npg sweep ") + kToolVersion, config_metadata(config)};
  const ColumnFamily family = column_family(variant_from_string(config.scenario));
  table.columns = columns_for(family);

  std::vector<std::vector<SweepRow>> buckets(count);
  auto body = [&](std::size_t i) {
    const double x = spec.start + double(i) * spec.step;
    RunConfig point = config;
    point.verify = false;
    try {
      apply_sweep_param(point, spec.param, x);
      const ScenarioRun run = run_scenario(point);
      for (const EquilibriumOutcome& outcome : run.outcomes)
        buckets[i].push_back({x, outcome});
    } catch (const DomainError&) {
      buckets[i].push_back({x, std::nullopt});  // illegal point, keep the row
    } catch (const OracleError&) {
      buckets[i].push_back({x, std::nullopt});
    }
  };
  if (parallel)
    parallel_for_index(count, body);
  else
    serial_for_index(count, body);

  for (auto& bucket : buckets)
    for (auto& row : bucket) table.rows.push_back(std::move(row));
  return table;
}

}  // namespace

void SweepTable::write_csv(std::ostream& os) const {
  for (const std::string& line : metadata) os << "# " << line << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i)
    os << (i ? "," : "") << columns[i];
  os << "\n";
  const ColumnFamily family = columns.size() == 8    ? ColumnFamily::TwoPlayer
                              : columns.size() == 9  ? ColumnFamily::Duopoly
                                                     : ColumnFamily::Multiclass;
  for (const SweepRow& row : rows) os << row_csv(family, row) << "\n";
}

SweepTable sweep(const RunConfig& config) { return sweep_impl(config, true); }

SweepTable sweep_serial(const RunConfig& config) { return sweep_impl(config, false); }

void FieldTable::write_csv(std::ostream& os) const {
  for (const std::string& line : metadata) os << "# " << line << "\n";
  os << "pl,p2,dudpl,dudp2,magnitude\n";
  for (const FieldSample& s : samples) {
    os << format_number(s.x) << "," << format_number(s.y) << "," << format_number(s.gx) << ","
       << format_number(s.gy) << "," << format_number(s.magnitude) << "\n";
  }
}

FieldTable field(const RunConfig& config) {
  const ScenarioSpec spec = make_scenario(config);
  if (spec.variant != Variant::MulticlassLine)
    throw DomainError("field requires the multiclass-line scenario");
  const MulticlassLineResult line = solve_multiclass_line(spec.params, *spec.cls);

  const MarketParams params = spec.params;
  const ClassParams cls = *spec.cls;
  const double gap = line.price_gap;
  const double decay = std::exp(-line.delta_star);
  // Raw coalition objective so border samples may step slightly outside the
  // box; demand stays clamped at zero.
  auto objective = [params, cls, gap, decay](double pl, double p2) {
    const double demand =
        std::max(0.0, params.D0 - *cls.dl * pl - *cls.dh * (pl + gap) - *cls.d2 * p2);
    return demand * (p2 + pl + gap * decay);
  };

  const int resolution = config.grid.value_or(21);
  const double step = 1e-6 * params.pmax();
  FieldTable table;
  table.metadata = {std::string("npg field ") + kToolVersion, config_metadata(config),
                    "regime=" + to_string(line.regime) +
                        " delta_star=" + format_number(line.delta_star) +
                        " price_gap=" + format_number(gap) + " step=" + format_number(step)};
  const Box region{0.0, params.pmax(), 0.0, params.pmax()};
  table.samples = gradient_field(objective, region, resolution, resolution, step);
  return table;
}

namespace {

void append_json_outcome(nlohmann::ordered_json& node, const EquilibriumOutcome& outcome) {
  nlohmann::ordered_json prices;
  for (const NamedPrice& p : outcome.prices) prices[p.name] = p.value;
  node["prices"] = prices;
  node["demand"] = outcome.demand;
  if (outcome.demand_low) node["demand_low"] = *outcome.demand_low;
  if (outcome.demand_high) node["demand_high"] = *outcome.demand_high;
  node["utilities"] = outcome.utilities;
  node["regime"] = to_string(outcome.regime);
  node["stability"] = to_string(outcome.stability);
  node["source"] = to_string(outcome.source);
}

}  // namespace

void write_summary(std::ostream& os, const ScenarioRun& run) {
  os << "scenario: " << to_string(run.spec.variant) << "\n";
  if (run.line) {
    const MulticlassLineResult& line = *run.line;
    os << "regime: " << to_string(line.regime) << "\n";
    char buffer[128];
    std::snprintf(buffer, sizeof(buffer), "delta_star = %.6f  price_gap = %.6f",
                  line.delta_star, line.price_gap);
    os << buffer << "\n";
    if (line.regime == Regime::EquilibriumLine) {
      os << "equilibrium line (pl, p2):\n";
      for (const auto& point : line.points) {
        std::snprintf(buffer, sizeof(buffer), "  pl = %.6f  p2 = %.6f", point[0], point[1]);
        os << buffer << "\n";
      }
    } else {
      os << "border attractor:\n";
      for (const NamedPrice& p : line.attractor) {
        std::snprintf(buffer, sizeof(buffer), "  %s = %.6f", p.name.c_str(), p.value);
        os << buffer << "\n";
      }
    }
    return;
  }
  for (std::size_t i = 0; i < run.outcomes.size(); ++i) {
    const EquilibriumOutcome& out = run.outcomes[i];
    os << "regime: " << to_string(out.regime) << "  stability: " << to_string(out.stability)
       << "  source: " << to_string(out.source) << "\n";
    char buffer[64];
    for (const NamedPrice& p : out.prices) {
      std::snprintf(buffer, sizeof(buffer), "%s = %.6f  ", p.name.c_str(), p.value);
      os << buffer;
    }
    os << "\n";
    std::snprintf(buffer, sizeof(buffer), "demand = %.6f", out.demand);
    os << buffer << "\n";
    for (std::size_t u = 0; u < out.utilities.size(); ++u) {
      std::snprintf(buffer, sizeof(buffer), "u%zu = %.6f  ", u + 1, out.utilities[u]);
      os << buffer;
    }
    os << "\n";
    if (i < run.checks.size()) {
      const NashCheck& check = run.checks[i];
      os << "epsilon-nash: " << (check.pass ? "pass" : "FAIL") << " (epsilon = "
         << format_number(check.epsilon) << ", gains:";
      for (double gain : check.gain) os << " " << format_number(gain);
      os << ")\n";
    }
  }
}

void write_solve_json(std::ostream& os, const ScenarioRun& run) {
  nlohmann::ordered_json doc;
  doc["tool"] = "npg";
  doc["version"] = kToolVersion;
  doc["scenario"] = to_string(run.spec.variant);
  nlohmann::ordered_json params;
  params["d0"] = run.spec.params.D0;
  params["d"] = run.spec.params.d;
  params["ps"] = run.spec.transfers.ps;
  params["pa"] = run.spec.transfers.pa;
  if (run.spec.cls) {
    params["gamma"] = run.spec.cls->gamma;
    if (run.spec.cls->has_split()) {
      params["dl"] = *run.spec.cls->dl;
      params["dh"] = *run.spec.cls->dh;
      params["d2"] = *run.spec.cls->d2;
    }
  }
  if (run.spec.kind) params["stickiness"] = to_string(*run.spec.kind);
  if (run.spec.leader) params["leader"] = run.spec.leader == Leader::Isp ? "isp" : "cp";
  doc["params"] = params;

  doc["outcomes"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < run.outcomes.size(); ++i) {
    nlohmann::ordered_json node;
    append_json_outcome(node, run.outcomes[i]);
    if (i < run.checks.size()) {
      node["verify"] = {{"pass", run.checks[i].pass},
                        {"epsilon", run.checks[i].epsilon},
                        {"gains", run.checks[i].gain}};
    }
    doc["outcomes"].push_back(node);
  }
  if (run.line) {
    nlohmann::ordered_json node;
    node["regime"] = to_string(run.line->regime);
    node["delta_star"] = run.line->delta_star;
    node["price_gap"] = run.line->price_gap;
    node["points"] = run.line->points;
    if (!run.line->attractor.empty()) {
      nlohmann::ordered_json attractor;
      for (const NamedPrice& p : run.line->attractor) attractor[p.name] = p.value;
      node["attractor"] = attractor;
    }
    doc["line"] = node;
  }
  os << doc.dump(2) << "\n";
}

// --- discrepancy report ----------------------------------------------------

namespace {

enum class FieldScale { Price, Demand, Utility };

struct FieldValue {
  std::string name;
  FieldScale scale = FieldScale::Price;
  std::optional<double> closed, printed, oracle;
};

double scale_of(FieldScale scale, const MarketParams& params) {
  switch (scale) {
    case FieldScale::Price: return params.pmax();
    case FieldScale::Demand: return params.D0;
    case FieldScale::Utility: return params.Umax();
  }
  return 1.0;
}

// Numeric NEP for the scenario, found by the library's oracle machinery.
EquilibriumOutcome oracle_solve(const ScenarioSpec& spec) {
  const MarketParams& params = spec.params;
  const double pmax = params.pmax();
  switch (spec.variant) {
    case Variant::BasicCompetition:
    case Variant::SidePayment:
    case Variant::AdCompetition: {
      const GameView game = make_game_view(spec);
      const DynamicsResult run =
          best_response_dynamics(game, {0.4 * pmax, 0.4 * pmax});
      if (!run.converged) throw OracleError("oracle dynamics did not converge");
      const TwoPlayerUtilities u =
          utilities_two_player(params, spec.transfers, run.profile[0], run.profile[1]);
      EquilibriumOutcome out;
      out.prices = {{"p1", run.profile[0]}, {"p2", run.profile[1]}};
      out.demand = linear_demand(params, run.profile[0] + run.profile[1]);
      out.utilities = {u.u1, u.u2};
      out.source = Source::Oracle;
      return out;
    }
    case Variant::BasicCollaboration:
    case Variant::AdCollaboration: {
      const double pa = spec.transfers.pa;
      const double total = argmax_interval(
          [&](double t) { return linear_demand(params, t) * (t + pa); }, {0.0, pmax});
      EquilibriumOutcome out;
      out.prices = {{"p1", total / 2.0}, {"p2", total / 2.0}};
      out.demand = linear_demand(params, total);
      const double pooled = out.demand * (total + pa);
      out.utilities = {pooled / 2.0, pooled / 2.0};
      out.source = Source::Oracle;
      return out;
    }
    case Variant::MulticlassCollab:
      return solve_multiclass_collab_boundary(params, *spec.cls).branch_p2_zero;
    case Variant::MulticlassCompetition:
      return solve_multiclass_competition(params, *spec.cls);
    case Variant::Duopoly:
    case Variant::DuopolySidePayment: {
      const GameView game = make_game_view(spec);
      const DynamicsResult run =
          best_response_dynamics(game, {0.3 * pmax, 0.25 * pmax, 0.25 * pmax});
      if (!run.converged) throw OracleError("oracle dynamics did not converge");
      const StickinessKind kind =
          spec.variant == Variant::Duopoly ? *spec.kind : StickinessKind::Reciprocal;
      const double ps = spec.variant == Variant::Duopoly ? 0.0 : spec.transfers.ps;
      const DuopolyUtilities u =
          utilities_duopoly(params, kind, ps, run.profile[0], run.profile[1], run.profile[2]);
      EquilibriumOutcome out;
      out.prices = {{"p1", run.profile[0]}, {"p2", run.profile[1]}, {"p3", run.profile[2]}};
      out.demand = linear_demand(params, run.profile[0] + run.profile[1]);
      out.utilities = {u.u1, u.u2, u.u3};
      out.source = Source::Oracle;
      return out;
    }
    case Variant::Stackelberg: {
      const bool isp_leads = *spec.leader == Leader::Isp;
      const Bounds box{0.0, pmax};
      auto follower_reply = [&](double lead) {
        return argmax_interval(
            [&](double reply) {
              const TwoPlayerUtilities u =
                  isp_leads ? utilities_two_player(params, spec.transfers, lead, reply)
                            : utilities_two_player(params, spec.transfers, reply, lead);
              return isp_leads ? u.u2 : u.u1;
            },
            box);
      };
      const double lead = argmax_interval(
          [&](double candidate) {
            const double reply = follower_reply(candidate);
            const TwoPlayerUtilities u =
                isp_leads ? utilities_two_player(params, spec.transfers, candidate, reply)
                          : utilities_two_player(params, spec.transfers, reply, candidate);
            return isp_leads ? u.u1 : u.u2;
          },
          box, 801);
      const double reply = follower_reply(lead);
      const double p1 = isp_leads ? lead : reply;
      const double p2 = isp_leads ? reply : lead;
      const TwoPlayerUtilities u = utilities_two_player(params, spec.transfers, p1, p2);
      EquilibriumOutcome out;
      out.prices = {{"p1", p1}, {"p2", p2}};
      out.demand = linear_demand(params, p1 + p2);
      out.utilities = {u.u1, u.u2};
      out.source = Source::Oracle;
      return out;
    }
    case Variant::MulticlassLine:
      break;
  }
  throw DomainError("oracle_solve: unsupported scenario");
}

void push_entries(std::vector<ReportEntry>& entries, const std::string& scenario,
                  const MarketParams& params, const std::vector<FieldValue>& fields) {
  for (const FieldValue& field : fields) {
    ReportEntry entry;
    entry.scenario = scenario;
    entry.field = field.name;
    entry.closed_form = field.closed;
    entry.printed = field.printed;
    entry.oracle = field.oracle;
    if (field.printed && field.oracle) {
      entry.abs_gap = std::abs(*field.printed - *field.oracle);
      entry.rel_gap = entry.abs_gap / scale_of(field.scale, params);
      entry.consistent = entry.rel_gap <= 1e-6;
    }
    entries.push_back(entry);
  }
}

}  // namespace

std::vector<ReportEntry> report(const RunConfig& config) {
  std::vector<ReportEntry> entries;
  const MarketParams params{config.d0, config.d};
  params.validate();

  auto two_player_fields = [&](const EquilibriumOutcome& closed,
                               const EquilibriumOutcome& printed,
                               const EquilibriumOutcome& oracle, bool collab) {
    std::vector<FieldValue> fields;
    if (collab) {
      fields.push_back({"p_total", FieldScale::Price,
                        price(closed.prices, "p1") + price(closed.prices, "p2"),
                        price(printed.prices, "p1") + price(printed.prices, "p2"),
                        price(oracle.prices, "p1") + price(oracle.prices, "p2")});
      fields.push_back({"demand", FieldScale::Demand, closed.demand, printed.demand,
                        oracle.demand});
      fields.push_back({"u_total", FieldScale::Utility, closed.total_utility(),
                        printed.total_utility(), oracle.total_utility()});
    } else {
      fields.push_back({"p1", FieldScale::Price, price(closed.prices, "p1"),
                        price(printed.prices, "p1"), price(oracle.prices, "p1")});
      fields.push_back({"p2", FieldScale::Price, price(closed.prices, "p2"),
                        price(printed.prices, "p2"), price(oracle.prices, "p2")});
      fields.push_back({"demand", FieldScale::Demand, closed.demand, printed.demand,
                        oracle.demand});
      fields.push_back({"u1", FieldScale::Utility, closed.utilities.at(0),
                        printed.utilities.at(0), oracle.utilities.at(0)});
      fields.push_back({"u2", FieldScale::Utility, closed.utilities.at(1),
                        printed.utilities.at(1), oracle.utilities.at(1)});
    }
    return fields;
  };

  // basic competition / collaboration, side payments, advertising
  struct Simple {
    Variant variant;
    bool collab;
  };
  for (const Simple& simple :
       {Simple{Variant::BasicCompetition, false}, Simple{Variant::BasicCollaboration, true},
        Simple{Variant::SidePayment, false}, Simple{Variant::AdCompetition, false},
        Simple{Variant::AdCollaboration, true}, Simple{Variant::Stackelberg, false}}) {
    RunConfig point = config;
    point.scenario = to_string(simple.variant);
    const ScenarioSpec spec = make_scenario(point);
    const ScenarioRun run = run_scenario(point);
    const EquilibriumOutcome printed = paper_reference(spec);
    const EquilibriumOutcome oracle = oracle_solve(spec);
    push_entries(entries, point.scenario, params,
                 two_player_fields(run.outcomes.front(), printed, oracle, simple.collab));
  }

  // two-class collaboration: usage-priced branch plus the branch verdict
  {
    RunConfig point = config;
    point.scenario = to_string(Variant::MulticlassCollab);
    const ScenarioSpec spec = make_scenario(point);
    const MulticlassCollabResult result =
        solve_multiclass_collab_boundary(spec.params, *spec.cls);
    const EquilibriumOutcome& oracle = result.branch_p2_zero;
    const EquilibriumOutcome& printed = result.branch_p2_zero_printed;
    std::vector<FieldValue> fields;
    fields.push_back({"pl", FieldScale::Price, std::nullopt, price(printed.prices, "pl"),
                      price(oracle.prices, "pl")});
    fields.push_back({"ph", FieldScale::Price, std::nullopt, price(printed.prices, "ph"),
                      price(oracle.prices, "ph")});
    fields.push_back({"u_total", FieldScale::Utility, std::nullopt, printed.total_utility(),
                      oracle.total_utility()});
    push_entries(entries, point.scenario, params, fields);

    ReportEntry verdict;
    verdict.scenario = point.scenario;
    verdict.field = "best_branch";
    verdict.printed_tag = "flat-rate-access";  // the published conclusion
    verdict.oracle_tag = result.flat_rate_best ? "flat-rate-access" : "usage-priced-access";
    verdict.consistent = verdict.printed_tag == verdict.oracle_tag;
    entries.push_back(verdict);
  }

  // two-class competition
  {
    RunConfig point = config;
    point.scenario = to_string(Variant::MulticlassCompetition);
    const ScenarioSpec spec = make_scenario(point);
    const EquilibriumOutcome oracle = oracle_solve(spec);
    const EquilibriumOutcome printed = paper_reference(spec);
    std::vector<FieldValue> fields;
    fields.push_back({"ph", FieldScale::Price, std::nullopt, price(printed.prices, "ph"),
                      price(oracle.prices, "ph")});
    fields.push_back({"p2", FieldScale::Price, std::nullopt, price(printed.prices, "p2"),
                      price(oracle.prices, "p2")});
    fields.push_back({"demand", FieldScale::Demand, std::nullopt, printed.demand,
                      oracle.demand});
    fields.push_back({"u1", FieldScale::Utility, std::nullopt, printed.utilities.at(0),
                      oracle.utilities.at(0)});
    fields.push_back({"u2", FieldScale::Utility, std::nullopt, printed.utilities.at(1),
                      oracle.utilities.at(1)});
    push_entries(entries, point.scenario, params, fields);
  }

  // duopoly, both stickiness models, and side payments at the configured ps
  for (StickinessKind kind : {StickinessKind::Reciprocal, StickinessKind::Slackness}) {
    RunConfig point = config;
    point.scenario = to_string(Variant::Duopoly);
    point.stickiness = to_string(kind);
    const ScenarioSpec spec = make_scenario(point);
    const EquilibriumOutcome closed = solve_duopoly(params, kind);
    const EquilibriumOutcome printed = paper_reference(spec);
    const EquilibriumOutcome oracle = oracle_solve(spec);
    std::vector<FieldValue> fields;
    fields.push_back({"p1", FieldScale::Price, price(closed.prices, "p1"),
                      price(printed.prices, "p1"), price(oracle.prices, "p1")});
    fields.push_back({"pbar", FieldScale::Price, price(closed.prices, "p2"),
                      price(printed.prices, "p2"), price(oracle.prices, "p2")});
    fields.push_back({"demand", FieldScale::Demand, closed.demand, printed.demand,
                      oracle.demand});
    fields.push_back({"u1", FieldScale::Utility, closed.utilities.at(0),
                      printed.utilities.at(0), oracle.utilities.at(0)});
    fields.push_back({"u_cp", FieldScale::Utility, closed.utilities.at(1),
                      printed.utilities.at(1), oracle.utilities.at(1)});
    push_entries(entries, point.scenario + "-" + to_string(kind), params, fields);
  }
  {
    RunConfig point = config;
    point.scenario = to_string(Variant::DuopolySidePayment);
    const ScenarioSpec spec = make_scenario(point);
    const EquilibriumOutcome closed = solve_duopoly_side_payments(params, spec.transfers.ps).front();
    const EquilibriumOutcome printed = paper_reference(spec);
    const EquilibriumOutcome oracle = oracle_solve(spec);
    std::vector<FieldValue> fields;
    fields.push_back({"p1", FieldScale::Price, price(closed.prices, "p1"),
                      price(printed.prices, "p1"), price(oracle.prices, "p1")});
    fields.push_back({"pbar", FieldScale::Price, price(closed.prices, "p2"),
                      price(printed.prices, "p2"), price(oracle.prices, "p2")});
    fields.push_back({"u1", FieldScale::Utility, closed.utilities.at(0),
                      printed.utilities.at(0), oracle.utilities.at(0)});
    fields.push_back({"u_cp", FieldScale::Utility, closed.utilities.at(1),
                      printed.utilities.at(1), oracle.utilities.at(1)});
    push_entries(entries, point.scenario, params, fields);
  }

  return entries;
}

void write_report(std::ostream& os, const std::vector<ReportEntry>& entries) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), "%-28s %-12s %16s %16s %16s %10s  %s", "scenario",
                "field", "closed-form", "paper-printed", "oracle", "rel-gap", "verdict");
  os << buffer << "\n";
  auto cell = [](const std::optional<double>& v, const std::optional<std::string>& tag) {
    if (tag) return *tag;
    if (!v) return std::string("-");
    char tmp[32];
    std::snprintf(tmp, sizeof(tmp), "%.10g", *v);
    return std::string(tmp);
  };
  for (const ReportEntry& e : entries) {
    const bool tagged = e.printed_tag.has_value();
    std::snprintf(buffer, sizeof(buffer), "%-28s %-12s %16s %16s %16s %10s  %s",
                  e.scenario.c_str(), e.field.c_str(),
                  cell(e.closed_form, std::nullopt).c_str(),
                  cell(e.printed, e.printed_tag).c_str(), cell(e.oracle, e.oracle_tag).c_str(),
                  tagged ? "-" : format_number(e.rel_gap).c_str(),
                  e.consistent ? "CONSISTENT" : "DISCREPANT");
    os << buffer << "\n";
  }
}

void write_report_csv(std::ostream& os, const std::vector<ReportEntry>& entries) {
  os << "scenario,field,closed_form,paper_printed,oracle,abs_gap,rel_gap,verdict\n";
  auto cell = [](const std::optional<double>& v, const std::optional<std::string>& tag) {
    if (tag) return *tag;
    return v ? format_number(*v) : std::string();
  };
  for (const ReportEntry& e : entries) {
    os << e.scenario << "," << e.field << "," << cell(e.closed_form, std::nullopt) << ","
       << cell(e.printed, e.printed_tag) << "," << cell(e.oracle, e.oracle_tag) << ","
       << (e.printed_tag ? std::string() : format_number(e.abs_gap)) << ","
       << (e.printed_tag ? std::string() : format_number(e.rel_gap)) << ","
       << (e.consistent ? "CONSISTENT" : "DISCREPANT") << "\n";
  }
}

}  // namespace npg
