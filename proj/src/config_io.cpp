#include "eres/config_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "eres/errors.hpp"

namespace eres {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "potential.family",       "potential.u0_eV",           "potential.a_angstrom",
      "potential.lambda",       "system.mass_me",            "system.E_eV",
      "system.R_angstrom",      "system.H_tesla",            "tolerances.quadrature_rel_tol",
      "tolerances.root_abs_tol", "tolerances.ode_rel_tol",   "dissipation.deltaE_over_E",
      "dissipation.delta_u_eV", "run.N"};
  return keys;
}

double number(const pt::ptree& tree, const std::string& key) {
  const std::string raw = tree.get<std::string>(key);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != raw.size() || !std::isfinite(v))
    throw ConfigError("key '" + key + "': '" + raw + "' is not a finite number");
  return v;
}

std::optional<double> optional_number(const pt::ptree& tree, const std::string& key) {
  if (!tree.get_optional<std::string>(key)) return std::nullopt;
  return number(tree, key);
}

double required(const pt::ptree& tree, const std::string& key) {
  if (!tree.get_optional<std::string>(key)) throw ConfigError("missing required key '" + key + "'");
  return number(tree, key);
}

}  // namespace

ModelConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    std::ostringstream os;
    os << "config parse error at line " << e.line() << ": " << e.message();
    throw ConfigError(os.str());
  }

  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError("key '" + section + "' is outside any [section]");
    for (const auto& kv : body) {
      const std::string key = section + "." + kv.first;
      if (!known_keys().count(key)) throw ConfigError("unknown key '" + key + "'");
    }
  }

  ModelConfig cfg;
  const std::string family = tree.get<std::string>("potential.family", "double_harmonic");
  const PotentialFamily fam = parse_family(family);
  const double u0 = required(tree, "potential.u0_eV");
  const double a = required(tree, "potential.a_angstrom");
  double lambda = 0.0;
  if (fam == PotentialFamily::DoubleHarmonic) lambda = required(tree, "potential.lambda");
  cfg.potential = BarrierPotential(fam, u0, a, lambda);

  SystemConfig& s = cfg.system;
  if (auto m = optional_number(tree, "system.mass_me")) {
    s.mass_me = *m;
  } else {
    s.mass_me = 1.0;
    cfg.notes.push_back("system.mass_me not given; assuming the free electron mass (1.0)");
  }
  s.energy_depth = std::abs(required(tree, "system.E_eV"));
  if (auto r = optional_number(tree, "system.R_angstrom")) s.barrier_length = *r;
  if (auto h = optional_number(tree, "system.H_tesla")) s.field = *h;
  if (auto v = optional_number(tree, "tolerances.quadrature_rel_tol"))
    s.tolerances.quadrature_rel_tol = *v;
  if (auto v = optional_number(tree, "tolerances.root_abs_tol")) s.tolerances.root_abs_tol = *v;
  if (auto v = optional_number(tree, "tolerances.ode_rel_tol")) s.tolerances.ode_rel_tol = *v;
  s.validate();

  if (auto v = optional_number(tree, "dissipation.deltaE_over_E")) {
    if (*v < 0.0) throw ConfigError("dissipation.deltaE_over_E must be >= 0");
    cfg.dissipation.deltaE_over_E = *v;
  }
  if (auto v = optional_number(tree, "dissipation.delta_u_eV")) {
    if (*v < 0.0) throw ConfigError("dissipation.delta_u_eV must be >= 0");
    cfg.dissipation.delta_u = *v;
  }
  if (auto n = optional_number(tree, "run.N")) {
    if (*n < 1.0 || std::floor(*n) != *n) throw ConfigError("run.N must be a positive integer");
    cfg.N = static_cast<int>(*n);
  }
  return cfg;
}

ModelConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

std::string format_config(const ModelConfig& cfg) {
  const auto& p = cfg.potential;
  const auto& s = cfg.system;
  std::ostringstream os;
  os << "[potential]\n"
     << "family = " << to_string(p.family()) << "\n"
     << "u0_eV = " << format_number(p.u0()) << "\n"
     << "a_angstrom = " << format_number(p.a()) << "\n";
  if (p.family() == PotentialFamily::DoubleHarmonic)
    os << "lambda = " << format_number(p.lambda()) << "\n";
  os << "\n[system]\n"
     << "mass_me = " << format_number(s.mass_me) << "\n"
     << "E_eV = " << format_number(s.energy()) << "\n"
     << "R_angstrom = " << format_number(s.barrier_length) << "\n"
     << "H_tesla = " << format_number(s.field) << "\n"
     << "\n[tolerances]\n"
     << "quadrature_rel_tol = " << format_number(s.tolerances.quadrature_rel_tol) << "\n"
     << "root_abs_tol = " << format_number(s.tolerances.root_abs_tol) << "\n"
     << "ode_rel_tol = " << format_number(s.tolerances.ode_rel_tol) << "\n"
     << "\n[dissipation]\n"
     << "deltaE_over_E = " << format_number(cfg.dissipation.deltaE_over_E) << "\n"
     << "delta_u_eV = " << format_number(cfg.dissipation.delta_u) << "\n"
     << "\n[run]\n"
     << "N = " << cfg.N << "\n";
  return os.str();
}

ModelConfig example_config() {
  ModelConfig cfg;
  cfg.potential = BarrierPotential::double_harmonic(1.0, 50.0, 0.215);
  cfg.system.mass_me = 1.0;
  cfg.system.energy_depth = 0.01;
  cfg.system.barrier_length = 1000.0;
  cfg.system.field = 10.0;
  return cfg;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

void PlotTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("table '" + name + "': row has " + std::to_string(row.size()) +
                                " values, expected " + std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::string PlotTable::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_table(const PlotTable& t, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / (t.name + ".csv"), std::ios::binary);
  if (!out) throw Error(ErrorCode::Failure, "cannot write table " + t.name);
  out << t.to_csv();
}

std::filesystem::path write_summary(const std::string& run, const std::string& text,
                                    const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto path = dir / ("summary." + run + ".txt");
  for (int k = 2; std::filesystem::exists(path); ++k)
    path = dir / ("summary." + run + "-" + std::to_string(k) + ".txt");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Failure, "cannot write summary " + path.string());
  out << text;
  return path;
}

}  // namespace eres
