#include "rds_cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rds/construct_cantor.hpp"
#include "rds/construct_minimal.hpp"
#include "rds/diagnostics.hpp"
#include "rds/errors.hpp"
#include "rds/monte_carlo.hpp"
#include "rds/serialization.hpp"
#include "rds/stationary_solver.hpp"

namespace rds::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational positive_rational(const std::string& text, const char* flag) {
  Rational v;
  try {
    v = parse_rational(text);
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + " expects a number, got \"" + text + "\"");
  }
  if (v <= 0) throw UsageError(std::string(flag) + " must be positive");
  return v;
}

Interval parse_window(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--window expects lo,hi");
  try {
    const double lo = std::stod(text.substr(0, comma));
    const double hi = std::stod(text.substr(comma + 1));
    if (!(hi > lo)) throw UsageError("--window needs lo < hi");
    return {lo, hi};
  } catch (const std::invalid_argument&) {
    throw UsageError("--window expects lo,hi");
  } catch (const std::out_of_range&) {
    throw UsageError("--window value out of range");
  }
}

std::ostream& open_or(const std::string& path, std::ofstream& file, std::ostream& fallback) {
  if (path.empty() || path == "-") return fallback;
  file.open(path, std::ios::binary);
  if (!file) throw ParseError("cannot write " + path);
  return file;
}

std::optional<Bundle> try_bundle(const fs::path& path) {
  if (fs::is_directory(path) && fs::exists(path / "descriptor.json")) return load_bundle(path);
  return std::nullopt;
}

int cmd_validate(const std::string& path, bool as_json, std::ostream& out) {
  const RandomSystem s = load_system_or_bundle(path);
  const ValidityReport r = validate(s);
  if (as_json) {
    json j;
    j["valid"] = r.valid();
    for (const auto& c : r.conditions) {
      j["conditions"].push_back(
          {{"name", c.name}, {"description", c.description}, {"verdict", to_string(c.verdict)}, {"detail", c.detail}});
    }
    j["lambda_minus"] = r.lyapunov.lambda_minus;
    j["lambda_plus"] = r.lyapunov.lambda_plus;
    j["f0_derivatives"] = {r.derivatives_f0.first, r.derivatives_f0.second};
    j["f1_derivatives"] = {r.derivatives_f1.first, r.derivatives_f1.second};
    out << j.dump(2) << '\n';
  } else {
    for (const auto& c : r.conditions) {
      out << std::left << std::setw(6) << c.name << std::setw(10) << to_string(c.verdict) << c.description;
      if (!c.detail.empty()) out << "  [" << c.detail << ']';
      out << '\n';
    }
    out << std::setprecision(12);
    out << "Lambda_-inf: " << r.lyapunov.lambda_minus << '\n';
    out << "Lambda_+inf: " << r.lyapunov.lambda_plus << '\n';
    out << "F0'(0), F0'(1): " << r.derivatives_f0.first << ", " << r.derivatives_f0.second << '\n';
    out << "F1'(0), F1'(1): " << r.derivatives_f1.first << ", " << r.derivatives_f1.second << '\n';
  }
  if (!r.valid()) {
    out << "invalid: condition " << r.first_failure()->name << " fails\n";
    return kDomainFailure;
  }
  return kOk;
}

int cmd_perturb(const std::string& path, const std::string& mode, const std::string& eps_text,
                const std::string& out_dir, std::ostream& out) {
  const Rational eps = positive_rational(eps_text, "--eps");
  const RandomSystem s = load_system_or_bundle(path);
  if (mode == "cantor") {
    const CantorPerturbation g = perturb_cantor(s, eps);
    save_bundle(out_dir, g, eps);
    out << "cantor perturbation: M = " << g.params.M << ", M' = " << g.params.M_prime
        << ", boxes = " << g.chain0.boxes.size() << " + " << g.chain1.boxes.size() << ", d_m <= "
        << g.distance.d_m_upper << " < " << to_double(eps) << '\n';
  } else {
    const MinimalPerturbation g = perturb_minimal(s, eps);
    save_bundle(out_dir, g, eps);
    out << "minimal perturbation: eta0 = " << g.offsets.eta0.str() << ", eta1 = " << g.offsets.eta1.str()
        << ", d_m <= " << g.distance.d_m_upper << " < " << to_double(eps) << '\n';
  }
  out << "bundle written to " << out_dir << '\n';
  return kOk;
}

SolverOptions solver_options(const std::optional<Bundle>& bundle, double tol, int digits, std::int64_t points) {
  SolverOptions o;
  o.tol = tol;
  o.points = points;
  if (bundle && bundle->cantor) {
    o.cantor_set = bundle->cantor->set;
    o.cantor_digits = digits;
  }
  return o;
}

json envelope_json(const CdfEnvelope& env) {
  return {{"gap", env.gap},
          {"converged", env.converged},
          {"iterations", env.iterations},
          {"refinements", env.refinements},
          {"window", {env.w_lo, env.w_hi}},
          {"tail_mass", {env.tail_mass_lo, env.tail_mass_hi}},
          {"tail_M", env.certificate.M},
          {"tail_alpha", env.certificate.alpha},
          {"tail_x0", env.certificate.x0},
          {"max_atom_weight", env.max_atom_weight}};
}

int cmd_stationary(const std::string& path, double tol, int digits, std::int64_t points, const std::string& out_path,
                   std::ostream& out) {
  if (!(tol > 0)) throw UsageError("--tol must be positive");
  const RandomSystem s = load_system_or_bundle(path);
  const auto bundle = try_bundle(path);
  const CdfEnvelope env = stationary_solve(s, solver_options(bundle, tol, digits, points));
  std::ofstream file;
  std::ostream& csv = open_or(out_path, file, out);
  write_cdf_csv(csv, env);
  if (&csv != &out) out << envelope_json(env).dump(2) << '\n';
  return env.converged ? kOk : kDomainFailure;
}

int cmd_diagnose(const std::string& path, const std::string& mode, int depth, const std::string& window_text,
                 int cells, std::optional<double> tol, std::int64_t points, const std::string& out_path,
                 std::ostream& out) {
  const RandomSystem s = load_system_or_bundle(path);
  const auto bundle = try_bundle(path);
  json j;
  j["mode"] = mode;
  int code = kOk;
  if (mode == "singular") {
    if (!bundle || !bundle->cantor) throw UsageError("singular mode needs a cantor bundle directory");
    if (depth < 0) throw UsageError("--depth must be nonnegative");
    const double t = tol.value_or(0.005);
    if (!(t > 0)) throw UsageError("--tol must be positive");
    const CdfEnvelope env = stationary_solve(s, solver_options(bundle, t, std::max(depth, 1), points));
    std::optional<Interval> window;
    if (!window_text.empty()) window = parse_window(window_text);
    const CoverMass c = cover_mass(env, bundle->cantor->set, depth, window);
    j["depth"] = depth;
    j["cover_mass"] = c.chain_mass;
    j["interval_bound"] = c.interval_bound;
    j["cells"] = c.cells;
    j["window_length"] = to_string(c.window_length);
    j["cover_length"] = to_string(c.cover_length);
    j["length_factor"] = c.length_factor;
    j["solver"] = envelope_json(env);
    if (!env.converged) code = kDomainFailure;
  } else {
    const Interval window = window_text.empty() ? Interval{-5, 5} : parse_window(window_text);
    if (cells < 1) throw UsageError("--cells must be positive");
    const double t = tol.value_or(5e-4);
    if (!(t > 0)) throw UsageError("--tol must be positive");
    const CdfEnvelope env = stationary_solve(s, solver_options(bundle, t, std::max(depth, 1), points));
    const auto masses = support_grid_mass(env, window, cells);
    double min_lower = 1.0;
    json arr = json::array();
    for (const auto& m : masses) {
      min_lower = std::min(min_lower, m.lower);
      arr.push_back({{"lo", m.lo}, {"hi", m.hi}, {"lower", m.lower}, {"upper", m.upper}});
    }
    j["window"] = {window.lo, window.hi};
    j["cells"] = arr;
    j["min_lower"] = min_lower;
    j["all_positive"] = min_lower > 0;
    j["solver"] = envelope_json(env);
    if (bundle && bundle->minimal) {
      const MinimalDescriptor& d = *bundle->minimal;
      const double K = std::max(std::fabs(window.lo), std::fabs(window.hi));
      const DensityReport rep = density_diagnostic(s, d.offsets.eta0, d.offsets.eta1, -d.R - d.offsets.eps,
                                                   Rational(0), K, cells);
      std::int64_t visited = 0;
      for (auto h : rep.hits) visited += h > 0;
      j["density"] = {{"window", {-K, K}}, {"cells", rep.cells}, {"visited", visited},
                      {"conclusive", rep.conclusive}, {"steps", rep.steps}, {"word_length", rep.word_length}};
    }
    if (!env.converged) code = kDomainFailure;
  }
  std::ofstream file;
  open_or(out_path, file, out) << j.dump(2) << '\n';
  return code;
}

int cmd_distance(const std::string& a, const std::string& b, int samples, std::ostream& out) {
  const RandomSystem sa = load_system_or_bundle(a);
  const RandomSystem sb = load_system_or_bundle(b);
  const SystemDistance d = system_distance(sa, sb, samples);
  json j = {{"d_m_lower", d.d_m_lower}, {"d_m_upper", d.d_m_upper}, {"d_0", d.d_0}, {"dp", d.dp},
            {"d0_sup", {d.d0_sup.lower, d.d0_sup.upper}}, {"d1_sup", {d.d1_sup.lower, d.d1_sup.upper}}};
  out << j.dump(2) << '\n';
  return kOk;
}

int cmd_orbit(const std::string& path, std::uint64_t seed, std::int64_t samples, double start,
              const std::string& out_path, std::ostream& out) {
  if (samples < 1) throw UsageError("--samples must be positive");
  const RandomSystem s = load_system_or_bundle(path);
  const auto orbit = sample_orbit(s, start, samples, seed);
  std::ofstream file;
  write_orbit_csv(open_or(out_path, file, out), orbit);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random dynamical systems of real-line homeomorphisms", "rds"};
  app.require_subcommand(1);

  std::string path, path_b, mode, eps, out_path, window;
  double tol = 0.005;
  std::optional<double> diag_tol;
  int depth = 6, cells = 40, samples_d = 20000;
  std::int64_t points = 8192, samples = 1000;
  std::uint64_t seed = 1;
  double start = 0.0;
  bool as_json = false;

  auto* validate_cmd = app.add_subcommand("validate", "check conditions (i)-(v) of a system file");
  validate_cmd->add_option("system", path, "system file or bundle directory")->required();
  validate_cmd->add_flag("--json", as_json, "machine-readable report");

  auto* perturb_cmd = app.add_subcommand("perturb", "build a Cantor or minimal perturbation bundle");
  perturb_cmd->add_option("system", path)->required();
  perturb_cmd->add_option("--mode", mode)->required()->check(CLI::IsMember({"cantor", "minimal"}));
  perturb_cmd->add_option("--eps", eps, "closeness budget (rational or decimal)")->required();
  perturb_cmd->add_option("--out", out_path, "bundle directory")->required();

  auto* stationary_cmd = app.add_subcommand("stationary", "certified CDF envelope of the stationary measure");
  stationary_cmd->add_option("system", path)->required();
  stationary_cmd->add_option("--tol", tol, "gap + tail mass target");
  stationary_cmd->add_option("--depth", depth, "triadic digits of the lattice for cantor bundles");
  stationary_cmd->add_option("--points", points, "lattice cells across the window");
  stationary_cmd->add_option("--out", out_path, "CSV path (default stdout)");

  auto* diagnose_cmd = app.add_subcommand("diagnose", "singularity or full-support diagnostics");
  diagnose_cmd->add_option("system", path)->required();
  diagnose_cmd->add_option("--mode", mode)->required()->check(CLI::IsMember({"singular", "support"}));
  diagnose_cmd->add_option("--depth", depth, "cover generation (singular)");
  diagnose_cmd->add_option("--window", window, "lo,hi");
  diagnose_cmd->add_option("--cells", cells, "grid cells (support)");
  diagnose_cmd->add_option("--tol", diag_tol, "solver tolerance");
  diagnose_cmd->add_option("--points", points, "lattice cells across the window");
  diagnose_cmd->add_option("--out", out_path, "JSON report path (default stdout)");

  auto* distance_cmd = app.add_subcommand("distance", "d_m and d_0 between two systems");
  distance_cmd->add_option("a", path)->required();
  distance_cmd->add_option("b", path_b)->required();
  distance_cmd->add_option("--samples", samples_d, "unit-coordinate samples for d_0");

  auto* orbit_cmd = app.add_subcommand("orbit", "sample one random orbit as CSV");
  orbit_cmd->add_option("system", path)->required();
  orbit_cmd->add_option("--seed", seed);
  orbit_cmd->add_option("--samples", samples, "orbit steps");
  orbit_cmd->add_option("--start", start);
  orbit_cmd->add_option("--out", out_path, "CSV path (default stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(path, as_json, out);
    if (perturb_cmd->parsed()) return cmd_perturb(path, mode, eps, out_path, out);
    if (stationary_cmd->parsed()) return cmd_stationary(path, tol, depth, points, out_path, out);
    if (diagnose_cmd->parsed()) {
      return cmd_diagnose(path, mode, depth, window, cells, diag_tol, points, out_path, out);
    }
    if (distance_cmd->parsed()) return cmd_distance(path, path_b, samples_d, out);
    if (orbit_cmd->parsed()) return cmd_orbit(path, seed, samples, start, out_path, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kInputError;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const InvalidMapError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const ConstructionError& e) {
    err << "construction failed: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomainFailure;
  }
  return kInputError;
}

}  // namespace rds::cli
