// Command-line front end: single-point computations, parameter sweeps,
// correction reports and the self-validation suite, with CSV/JSON output.
//
// Units at the boundary are micrometres and piconewtons; everything inside
// the library is SI.
//
// Exit codes: 0 success, 1 configuration error, 2 convergence warning,
// 3 validation failure.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "casimir/casimir.hpp"
#include "casimir/validation.hpp"

namespace {

using nlohmann::json;

struct SweepSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  bool log = false;
};

struct RunConfig {
  std::string model = "plasma";
  double omega_p = 2e16;    // rad/s
  double omega_tau = 0.0;   // rad/s; must be given explicitly for drude (typical: 5e13)
  double radius_um = 100.0;
  double gap_um = 0.1;
  std::optional<SweepSpec> sweep;
  double temperature_K = 300.0;
  double rel_tol = 1e-9;
  std::string format = "csv";
  std::string output;
  int jobs = 0;
};

std::string fmt10(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

SweepSpec parse_sweep(const std::string& text) {
  SweepSpec sw;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() < 3 || parts.size() > 4)
    throw std::invalid_argument("gap-sweep must be start:stop:count[:log]");
  sw.start = std::stod(parts[0]);
  sw.stop = std::stod(parts[1]);
  sw.count = std::stoi(parts[2]);
  if (parts.size() == 4) {
    if (parts[3] == "log")
      sw.log = true;
    else if (parts[3] == "linear")
      sw.log = false;
    else
      throw std::invalid_argument("gap-sweep scale must be 'log' or 'linear'");
  }
  return sw;
}

std::vector<double> sweep_gaps_um(const RunConfig& cfg) {
  if (!cfg.sweep) return {cfg.gap_um};
  const SweepSpec& sw = *cfg.sweep;
  std::vector<double> gaps(sw.count);
  for (int i = 0; i < sw.count; ++i) {
    const double f = static_cast<double>(i) / (sw.count - 1);
    gaps[i] = sw.log ? sw.start * std::pow(sw.stop / sw.start, f)
                     : sw.start + (sw.stop - sw.start) * f;
  }
  return gaps;
}

// Returns an error message naming the offending field, or empty when valid.
std::string validate_config(const RunConfig& cfg) {
  if (cfg.model != "ideal" && cfg.model != "plasma" && cfg.model != "drude")
    return "model must be one of ideal, plasma, drude";
  if (cfg.model != "ideal" && !(cfg.omega_p > 0.0)) return "omega_p must be positive";
  if (cfg.model == "drude" && !(cfg.omega_tau > 0.0))
    return "model=drude requires omega_tau (--omega-tau), the relaxation frequency in rad/s";
  if (!(cfg.radius_um > 0.0)) return "radius_um must be positive";
  if (cfg.sweep) {
    if (cfg.sweep->count < 2) return "gap-sweep count must be >= 2";
    if (!(cfg.sweep->start > 0.0) || !(cfg.sweep->stop > 0.0))
      return "gap-sweep range must be positive";
  } else if (!(cfg.gap_um > 0.0)) {
    return "gap_um must be positive";
  }
  for (double g : sweep_gaps_um(cfg))
    if (!(g < cfg.radius_um)) return "gap_um must be smaller than radius_um";
  if (!(cfg.temperature_K > 0.0)) return "temperature_K must be positive";
  if (!(cfg.rel_tol > 0.0) || cfg.rel_tol > 1e-2) return "rel_tol must be in (0, 1e-2]";
  if (cfg.format != "csv" && cfg.format != "json") return "format must be csv or json";
  return "";
}

casimir::Material make_material(const RunConfig& cfg) {
  if (cfg.model == "ideal") return casimir::Material::ideal_metal();
  if (cfg.model == "plasma") return casimir::Material::plasma(cfg.omega_p);
  return casimir::Material::drude(cfg.omega_p, cfg.omega_tau);
}

/// Run `work(i)` for i in [0, n) on a pool of `jobs` threads; rows keep
/// their input order regardless of completion order.
void parallel_rows(int n, int jobs, const std::function<void(int)>& work) {
  if (jobs < 1) jobs = 1;
  jobs = std::min(jobs, n);
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) work(i);
    });
  for (auto& th : pool) th.join();
}

void write_out(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + cfg.output);
  f << text;
}

int cmd_force(const RunConfig& cfg) {
  const auto gaps = sweep_gaps_um(cfg);
  const casimir::Material mat = make_material(cfg);
  casimir::NumericSettings s;
  s.rel_tol = cfg.rel_tol;

  struct Row {
    double gap_um = 0.0;
    casimir::ForceResult sum, integral;
    bool failed = false;
  };
  std::vector<Row> rows(gaps.size());
  parallel_rows(static_cast<int>(gaps.size()), cfg.jobs, [&](int i) {
    Row& row = rows[i];
    row.gap_um = gaps[i];
    try {
      const casimir::Geometry geom(cfg.radius_um * 1e-6, gaps[i] * 1e-6);
      row.sum = casimir::force_sum(mat, geom, cfg.temperature_K, s);
      row.integral = casimir::force_integral(mat, geom, s);
    } catch (const std::exception&) {
      row.failed = true;
    }
  });

  bool warn = false;
  if (cfg.format == "csv") {
    std::ostringstream out;
    out << "gap_um,force_pN_sum,force_pN_integral,n_terms,abs_err_pN\n";
    for (const auto& r : rows) {
      const double err_pN = (r.sum.abs_error + r.integral.abs_error) * 1e12;
      out << fmt10(r.gap_um) << ',' << fmt10(r.sum.force * 1e12) << ','
          << fmt10(r.integral.force * 1e12) << ',' << r.sum.truncation_index << ','
          << fmt10(err_pN) << '\n';
      warn = warn || r.failed || !r.sum.converged || !r.integral.converged;
    }
    write_out(cfg, out.str());
  } else {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"gap_um", r.gap_um},
                     {"force_pN_sum", r.sum.force * 1e12},
                     {"force_pN_integral", r.integral.force * 1e12},
                     {"n_terms", r.sum.truncation_index},
                     {"abs_err_pN", (r.sum.abs_error + r.integral.abs_error) * 1e12}});
      warn = warn || r.failed || !r.sum.converged || !r.integral.converged;
    }
    write_out(cfg, arr.dump(2) + "\n");
  }
  return warn ? 2 : 0;
}

int cmd_correction(const RunConfig& cfg) {
  const auto gaps = sweep_gaps_um(cfg);
  const casimir::Material mat = make_material(cfg);
  casimir::NumericSettings s;
  s.rel_tol = cfg.rel_tol;

  struct Row {
    double gap_um = 0.0;
    casimir::CorrectionReport rep;
    bool failed = false;
  };
  std::vector<Row> rows(gaps.size());
  parallel_rows(static_cast<int>(gaps.size()), cfg.jobs, [&](int i) {
    Row& row = rows[i];
    row.gap_um = gaps[i];
    try {
      const casimir::Geometry geom(cfg.radius_um * 1e-6, gaps[i] * 1e-6);
      row.rep = casimir::correction_report(mat, geom, cfg.temperature_K, s);
    } catch (const std::exception&) {
      row.failed = true;
    }
  });

  bool warn = false;
  if (cfg.format == "csv") {
    std::ostringstream out;
    out << "gap_um,delta_numeric_pN,delta_closed_pN,delta_expansion_pN,alpha,"
           "relative_to_force\n";
    for (const auto& r : rows) {
      out << fmt10(r.gap_um) << ',' << fmt10(r.rep.delta_numeric * 1e12) << ','
          << (r.rep.delta_closed ? fmt10(*r.rep.delta_closed * 1e12) : "") << ','
          << (r.rep.delta_expansion ? fmt10(*r.rep.delta_expansion * 1e12) : "") << ','
          << (r.rep.alpha ? fmt10(*r.rep.alpha) : "") << ','
          << fmt10(r.rep.relative_to_force) << '\n';
      warn = warn || r.failed || r.rep.error_warning;
    }
    write_out(cfg, out.str());
  } else {
    json arr = json::array();
    for (const auto& r : rows) {
      json obj = {{"gap_um", r.gap_um},
                  {"delta_numeric_pN", r.rep.delta_numeric * 1e12},
                  {"alpha", nullptr},
                  {"delta_closed_pN", nullptr},
                  {"delta_expansion_pN", nullptr},
                  {"relative_to_force", r.rep.relative_to_force}};
      if (r.rep.alpha) obj["alpha"] = *r.rep.alpha;
      if (r.rep.delta_closed) obj["delta_closed_pN"] = *r.rep.delta_closed * 1e12;
      if (r.rep.delta_expansion) obj["delta_expansion_pN"] = *r.rep.delta_expansion * 1e12;
      arr.push_back(obj);
      warn = warn || r.failed || r.rep.error_warning;
    }
    write_out(cfg, arr.dump(2) + "\n");
  }
  return warn ? 2 : 0;
}

int cmd_validate(const RunConfig& cfg, double perturb) {
  const auto checks = casimir::run_validation(perturb);
  write_out(cfg, casimir::format_validation_report(checks));
  return casimir::all_passed(checks) ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  double perturb = 1.0;
  std::string sweep_text;

  CLI::App app{"Finite-temperature sphere-plate Casimir force (Lifshitz/Matsubara)"};
  app.set_config("--config", "", "configuration file, key=value lines");
  app.add_option("--model", cfg.model, "dielectric model: ideal | plasma | drude")
      ->capture_default_str();
  app.add_option("--omega-p", cfg.omega_p, "plasma frequency, rad/s")->capture_default_str();
  app.add_option("--omega-tau", cfg.omega_tau,
                 "relaxation frequency, rad/s (required for drude; typical 5e13)");
  app.add_option("--radius-um", cfg.radius_um, "sphere radius, um")->capture_default_str();
  app.add_option("--gap-um", cfg.gap_um, "sphere-plate gap, um")->capture_default_str();
  app.add_option("--gap-sweep", sweep_text, "gap sweep start:stop:count[:log], um");
  app.add_option("--temperature-K", cfg.temperature_K, "temperature, K")
      ->capture_default_str();
  app.add_option("--rel-tol", cfg.rel_tol, "relative tolerance")->capture_default_str();
  app.add_option("--format", cfg.format, "output format: csv | json")->capture_default_str();
  app.add_option("--output", cfg.output, "output path (default: stdout)");
  app.add_option("--jobs", cfg.jobs, "worker threads for sweeps (default: #processors)");
  app.add_option("--perturb", perturb)->group("");  // test-only hook for validate

  CLI::App* force = app.add_subcommand("force", "force vs gap (sum and integral forms)");
  CLI::App* correction =
      app.add_subcommand("correction", "linear-in-T correction report");
  CLI::App* validate = app.add_subcommand("validate", "run the self-validation suite");
  for (CLI::App* sub : {force, correction, validate}) sub->fallthrough();
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!sweep_text.empty()) cfg.sweep = parse_sweep(sweep_text);
    if (cfg.jobs <= 0)
      cfg.jobs = std::max(1u, std::thread::hardware_concurrency());

    if (validate->parsed()) return cmd_validate(cfg, perturb);

    const std::string err = validate_config(cfg);
    if (!err.empty()) {
      std::cerr << "error: " << err << "\n";
      return 1;
    }
    if (force->parsed()) return cmd_force(cfg);
    return cmd_correction(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
