#include "qdefect/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "qdefect/anholonomy.hpp"
#include "qdefect/boundary.hpp"
#include "qdefect/detsolver.hpp"
#include "qdefect/error.hpp"
#include "qdefect/isospectral.hpp"
#include "qdefect/spectrum.hpp"

namespace qdefect {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double x) {
  if (std::isnan(x)) return "null";
  if (std::isinf(x)) return x > 0 ? "1e999" : "-1e999";
  return fmt::format("{:.17g}", x);
}

std::string csv_num(double x) { return std::isfinite(x) ? fmt::format("{:.17g}", x) : ""; }

/// Ordered record; renders as a JSON object or a CSV row.
class Record {
 public:
  Record& add(std::string key, double v) {
    fields_.push_back({std::move(key), num(v), csv_num(v)});
    return *this;
  }
  Record& add(std::string key, int v) {
    fields_.push_back({std::move(key), std::to_string(v), std::to_string(v)});
    return *this;
  }
  Record& add(std::string key, bool v) {
    fields_.push_back({std::move(key), v ? "true" : "false", v ? "true" : "false"});
    return *this;
  }
  Record& add(std::string key, std::string_view v) {
    fields_.push_back({std::move(key), fmt::format("\"{}\"", v), std::string(v)});
    return *this;
  }

  std::string json() const {
    std::string s = "{";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      if (i) s += ",";
      s += fmt::format("\"{}\":{}", fields_[i].key, fields_[i].json);
    }
    return s + "}";
  }

  std::string csv(const std::vector<std::string>& header) const {
    std::string s;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) s += ",";
      for (const auto& f : fields_) {
        if (f.key == header[i]) {
          s += f.csv;
          break;
        }
      }
    }
    return s;
  }

 private:
  struct Field {
    std::string key, json, csv;
  };
  std::vector<Field> fields_;
};

class Emitter {
 public:
  Emitter(std::ostream& out, bool csv, std::vector<std::string> header)
      : out_(out), csv_(csv), header_(std::move(header)) {}

  void emit(const Record& r) {
    if (csv_) {
      if (!header_written_) {
        std::string h;
        for (std::size_t i = 0; i < header_.size(); ++i) h += (i ? "," : "") + header_[i];
        out_ << h << '\n';
        header_written_ = true;
      }
      out_ << r.csv(header_) << '\n';
    } else {
      out_ << r.json() << '\n';
    }
  }

 private:
  std::ostream& out_;
  bool csv_;
  std::vector<std::string> header_;
  bool header_written_ = false;
};

struct RunConfig {
  double xi = 0.0, rho = 0.0, mu = 0.0, nu = 0.0;
  std::optional<double> theta_plus, theta_minus;
  std::vector<double> matrix;
  double l = 1.0;
  double L0 = 1.0;
  int n_levels = 6;
  std::string solver = "channel";
  int n_interior = 512;
  int grid_mu = 8, grid_nu = 8;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string output;
  // eigenfunction
  int level = 0;
  int points = 201;
  // trace
  int winding_plus = 0, winding_minus = 0;
  int steps = 256;
  int tracked = 12;
  // oracle-compare
  double tol_det = 1e-9;
  double tol_fd = 5e-3;
};

constexpr std::array<const char*, 8> kBcFlags = {"--xi", "--rho", "--mu", "--nu", "--theta-plus",
                                                 "--theta-minus", "--matrix", "--seed"};

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--xi", cfg.xi, "Overall phase xi (radians)");
  sub->add_option("--rho", cfg.rho, "Eigenphase half-splitting rho (radians)");
  sub->add_option("--mu", cfg.mu, "Frame polar angle mu (radians)");
  sub->add_option("--nu", cfg.nu, "Frame azimuth nu (radians)");
  sub->add_option("--theta-plus", cfg.theta_plus, "Eigenphase theta+ (sets xi, rho)");
  sub->add_option("--theta-minus", cfg.theta_minus, "Eigenphase theta- (sets xi, rho)");
  sub->add_option("--matrix", cfg.matrix,
                  "Explicit U as 8 reals: re/im of a11 a12 a21 a22")
      ->expected(8);
  sub->add_option("--l", cfg.l, "Half-width of the box");
  sub->add_option("--L0", cfg.L0, "Length constant of the boundary condition");
  sub->add_option("-n,--levels", cfg.n_levels, "Number of levels")->check(CLI::PositiveNumber);
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--output", cfg.output, "Output file (default: standard output)");
  sub->add_option("--seed", cfg.seed, "Draw random parameters from this seed");
}

UnitaryParams params_from(const RunConfig& cfg) {
  if (cfg.theta_plus.has_value() != cfg.theta_minus.has_value()) {
    throw Error(ErrorKind::InvalidArgument, "--theta-plus and --theta-minus must be given together");
  }
  UnitaryParams p{cfg.xi, cfg.rho, cfg.mu, cfg.nu};
  if (cfg.theta_plus) {
    // Round trip through U gives the canonical ρ ∈ [0, π) for the same matrix.
    p = matrix_to_params(
        params_to_matrix(UnitaryParams::from_thetas(*cfg.theta_plus, *cfg.theta_minus, cfg.mu, cfg.nu)));
  }
  for (double a : {p.xi, p.rho, p.mu, p.nu, cfg.l, cfg.L0}) {
    if (!std::isfinite(a)) throw Error(ErrorKind::InvalidArgument, "non-finite parameter");
  }
  return p;
}

UnitaryParams random_params(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  UnitaryParams p;
  p.xi = 2.0 * kPi * u(rng);
  p.rho = kPi * u(rng);
  p.mu = kPi * u(rng);
  p.nu = 2.0 * kPi * u(rng);
  return p;
}

BoundaryCondition bc_from(const RunConfig& cfg) {
  if (!cfg.matrix.empty()) {
    const auto& m = cfg.matrix;
    const Matrix2 u{cplx(m[0], m[1]), cplx(m[2], m[3]), cplx(m[4], m[5]), cplx(m[6], m[7])};
    return BoundaryCondition::make(u, cfg.L0, cfg.l);
  }
  const UnitaryParams p = cfg.seed ? random_params(*cfg.seed) : params_from(cfg);
  return BoundaryCondition::from_params(p, cfg.L0, cfg.l);
}

Record level_record(const EigenLevel& lv, int position) {
  Record r;
  r.add("index", position)
      .add("channel", to_string(lv.channel))
      .add("channel_index", lv.index)
      .add("kind", to_string(lv.kind))
      .add("k_or_kappa", lv.k_or_kappa)
      .add("E", lv.E)
      .add("degenerate", lv.degenerate_with.has_value());
  return r;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const BoundaryCondition bc = bc_from(cfg);
  const auto choice = parse_solver(cfg.solver);
  if (!choice) throw Error(ErrorKind::InvalidArgument, "unknown solver " + cfg.solver);
  std::vector<EigenLevel> levels;
  switch (*choice) {
    case SolverChoice::channel: levels = solve_spectrum(bc, cfg.n_levels).levels; break;
    case SolverChoice::determinant: levels = det_spectrum(bc, cfg.n_levels); break;
    case SolverChoice::fd: {
      const auto fd = fd_spectrum(bc, cfg.n_levels, cfg.n_interior);
      for (std::size_t i = 0; i < fd.levels.size(); ++i) {
        levels.push_back(EigenLevel::from_energy(fd.levels[i], ChannelTag::none, static_cast<int>(i)));
      }
      link_degenerate(levels);
      break;
    }
  }
  Emitter em(out, cfg.format == "csv",
             {"index", "channel", "channel_index", "kind", "k_or_kappa", "E", "degenerate"});
  for (std::size_t i = 0; i < levels.size(); ++i) em.emit(level_record(levels[i], static_cast<int>(i)));
  return kExitOk;
}

int cmd_eigenfunction(const RunConfig& cfg, std::ostream& out) {
  const BoundaryCondition bc = bc_from(cfg);
  if (cfg.level < 0) throw Error(ErrorKind::InvalidArgument, "--level must be >= 0");
  if (cfg.points < 2) throw Error(ErrorKind::InvalidArgument, "--points must be >= 2");
  const Spectrum spec = solve_spectrum(bc, cfg.level + 1);
  const EigenLevel& lv = spec.levels.at(cfg.level);
  const auto fs = build_eigenfunction(bc, lv);
  const Eigenfunction* f = &fs.front();
  for (const auto& g : fs) {
    if (g.channel == lv.channel) f = &g;
  }

  // Grid over [−l, l]; the excluded point 0 is replaced by its one-sided limits.
  std::vector<double> xs;
  for (int i = 0; i < cfg.points; ++i) {
    double x = -bc.l + 2.0 * bc.l * i / (cfg.points - 1);
    if (x == 0.0 || std::abs(x) < 1e-15 * bc.l) x = 0.0;
    if (x == 0.0) {
      xs.push_back(-1e-300);
      xs.push_back(1e-300);
    } else {
      xs.push_back(x);
    }
  }
  const auto vals = sample_eigenfunction(*f, xs);
  Emitter em(out, cfg.format == "csv",
             {"record", "x", "re", "im", "E", "channel", "kind", "residual", "current_mismatch",
              "degenerate"});
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Record r;
    r.add("record", std::string_view("sample")).add("x", xs[i]).add("re", vals[i].real()).add("im", vals[i].imag());
    em.emit(r);
  }
  const BoundaryVectors bv = boundary_vectors(*f);
  Record s;
  s.add("record", std::string_view("summary"))
      .add("E", f->E)
      .add("channel", to_string(f->channel))
      .add("kind", to_string(f->kind))
      .add("residual", boundary_residual(bc, bv))
      .add("current_mismatch", current_mismatch(bv))
      .add("degenerate", f->degenerate);
  em.emit(s);
  return kExitOk;
}

int cmd_isospectral(const RunConfig& cfg, std::ostream& out) {
  UnitaryParams d = cfg.seed ? random_params(*cfg.seed) : params_from(cfg);
  const auto choice = parse_solver(cfg.solver);
  if (!choice) throw Error(ErrorKind::InvalidArgument, "unknown solver " + cfg.solver);
  const SphereGrid grid = SphereGrid::make(cfg.grid_mu, cfg.grid_nu);
  const IsoReport rep = check_isospectral(d, grid, cfg.n_levels, *choice, cfg.L0, cfg.l, cfg.n_interior);
  Emitter em(out, cfg.format == "csv",
             {"xi", "rho", "max_level_deviation", "relative", "worst_mu", "worst_nu", "n_levels_checked",
              "n_members", "solver"});
  Record r;
  r.add("xi", rep.base_params.xi)
      .add("rho", rep.base_params.rho)
      .add("max_level_deviation", rep.max_level_deviation)
      .add("relative", rep.relative)
      .add("worst_mu", rep.worst_point.first)
      .add("worst_nu", rep.worst_point.second)
      .add("n_levels_checked", rep.n_levels_checked)
      .add("n_members", rep.n_members)
      .add("solver", to_string(rep.solver_used));
  em.emit(r);
  return kExitOk;
}

int cmd_trace(const RunConfig& cfg, std::ostream& out) {
  PathSpec path;
  path.base = cfg.seed ? random_params(*cfg.seed) : params_from(cfg);
  path.winding_plus = cfg.winding_plus;
  path.winding_minus = cfg.winding_minus;
  path.n_steps = cfg.steps;
  path.levels_tracked = cfg.tracked;
  path.l = cfg.l;
  path.L0 = cfg.L0;
  const TraceResult tr = trace_path(path);
  const LoopShift shift = loop_shift(tr);

  Emitter em(out, cfg.format == "csv",
             {"record", "trajectory", "channel", "t", "E", "start_index", "end_index", "floored",
              "shift_plus", "shift_minus", "winding_plus", "winding_minus", "steps_taken"});
  for (std::size_t i = 0; i < tr.trajectories.size(); ++i) {
    const auto& t = tr.trajectories[i];
    for (std::size_t j = 0; j < t.t_values.size(); ++j) {
      Record r;
      r.add("record", std::string_view("step"))
          .add("trajectory", static_cast<int>(i))
          .add("channel", to_string(t.channel))
          .add("t", t.t_values[j])
          .add("E", t.E_values[j]);
      em.emit(r);
    }
  }
  for (std::size_t i = 0; i < tr.trajectories.size(); ++i) {
    const auto& t = tr.trajectories[i];
    Record r;
    r.add("record", std::string_view("trajectory"))
        .add("trajectory", static_cast<int>(i))
        .add("channel", to_string(t.channel))
        .add("start_index", t.start_index)
        .add("end_index", t.end_index)
        .add("floored", t.floored);
    em.emit(r);
  }
  Record s;
  s.add("record", std::string_view("summary"))
      .add("shift_plus", shift.plus)
      .add("shift_minus", shift.minus)
      .add("winding_plus", cfg.winding_plus)
      .add("winding_minus", cfg.winding_minus)
      .add("steps_taken", tr.steps_taken);
  em.emit(s);
  return kExitOk;
}

int cmd_oracle_compare(const RunConfig& cfg, std::ostream& out) {
  const BoundaryCondition bc = bc_from(cfg);
  const auto ch = solve_spectrum(bc, cfg.n_levels).levels;
  const auto det = det_spectrum(bc, cfg.n_levels);
  const auto fd = fd_spectrum(bc, cfg.n_levels, cfg.n_interior);
  Emitter em(out, cfg.format == "csv",
             {"record", "level", "E_channel", "E_det", "E_fd", "delta_det", "delta_fd_rel", "ok",
              "max_delta_det", "max_delta_fd_rel", "pass"});
  double max_det = 0.0, max_fd = 0.0;
  for (int i = 0; i < cfg.n_levels; ++i) {
    const double e = ch[i].E;
    const double dd = std::abs(det[i].E - e);
    const double df = std::abs(fd.levels[i] - e) / std::max(1.0, std::abs(e));
    max_det = std::max(max_det, dd);
    max_fd = std::max(max_fd, df);
    Record r;
    r.add("record", std::string_view("level"))
        .add("level", i)
        .add("E_channel", e)
        .add("E_det", det[i].E)
        .add("E_fd", fd.levels[i])
        .add("delta_det", dd)
        .add("delta_fd_rel", df)
        .add("ok", dd <= cfg.tol_det && df <= cfg.tol_fd);
    em.emit(r);
  }
  const bool pass = max_det <= cfg.tol_det && max_fd <= cfg.tol_fd;
  Record s;
  s.add("record", std::string_view("summary"))
      .add("max_delta_det", max_det)
      .add("max_delta_fd_rel", max_fd)
      .add("pass", pass);
  em.emit(s);
  return pass ? kExitOk : kExitTolerance;
}

// Appends "--key value" for every key=value line of the config file whose
// flag is not already on the command line.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (path.empty()) return out;
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open config file " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    const std::string flag = key.size() == 1 ? "-" + key : "--" + key;
    const std::string alias = flag == "-n" ? "--levels" : flag == "--levels" ? "-n" : flag;
    const bool given = std::any_of(out.begin(), out.end(), [&](const std::string& a) {
      return a == flag || a == alias || a.rfind(flag + "=", 0) == 0 || a.rfind(alias + "=", 0) == 0;
    });
    if (given) continue;
    out.push_back(flag);
    std::istringstream vs(value);
    for (std::string tok; vs >> tok;) out.push_back(tok);
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Spectra of a particle in a box with a U(2) point defect"};
  app.require_subcommand(1);

  auto* spectrum = app.add_subcommand("spectrum", "Lowest levels of one system");
  add_common(spectrum, cfg);
  spectrum->add_option("--solver", cfg.solver, "channel | det | fd")
      ->check(CLI::IsMember({"channel", "det", "determinant", "fd"}));
  spectrum->add_option("--n-interior", cfg.n_interior, "FD points per side")->check(CLI::Range(64, 1 << 14));

  auto* eigfn = app.add_subcommand("eigenfunction", "Sample one eigenfunction");
  add_common(eigfn, cfg);
  eigfn->add_option("--level", cfg.level, "Level position in the spectrum");
  eigfn->add_option("--points", cfg.points, "Number of sample points");

  auto* iso = app.add_subcommand("isospectral", "Sweep the isospectral sphere");
  add_common(iso, cfg);
  iso->add_option("--solver", cfg.solver, "channel | det | fd")
      ->check(CLI::IsMember({"channel", "det", "determinant", "fd"}));
  iso->add_option("--grid-mu", cfg.grid_mu, "Interior mu points")->check(CLI::PositiveNumber);
  iso->add_option("--grid-nu", cfg.grid_nu, "nu points")->check(CLI::PositiveNumber);
  iso->add_option("--n-interior", cfg.n_interior, "FD points per side")->check(CLI::Range(64, 1 << 14));

  auto* trace = app.add_subcommand("trace", "Follow levels around a closed theta loop");
  add_common(trace, cfg);
  trace->add_option("--winding-plus", cfg.winding_plus, "Windings of theta+");
  trace->add_option("--winding-minus", cfg.winding_minus, "Windings of theta-");
  trace->add_option("--steps", cfg.steps, "Base number of steps (>= 64)");
  trace->add_option("--tracked", cfg.tracked, "Number of tracked levels (>= 2)");

  auto* oracle = app.add_subcommand("oracle-compare", "Channel vs determinant vs finite differences");
  add_common(oracle, cfg);
  oracle->add_option("--n-interior", cfg.n_interior, "FD points per side")->check(CLI::Range(64, 1 << 14));
  oracle->add_option("--tol-det", cfg.tol_det, "Absolute tolerance channel vs det");
  oracle->add_option("--tol-fd", cfg.tol_fd, "Relative tolerance channel vs fd");

  try {
    std::vector<std::string> args = merge_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  if (spectrum->parsed()) cfg.solver = cfg.solver.empty() ? "channel" : cfg.solver;
  if (iso->parsed() && iso->count("--solver") == 0) cfg.solver = "det";
  if (iso->parsed() && iso->count("--n-interior") == 0) cfg.n_interior = 256;
  if (trace->parsed()) {
    // U = I is degenerate at t = 0; default to the base θ₊ = π, θ₋ = 0.
    const bool bc_given = std::any_of(
        kBcFlags.begin(), kBcFlags.end(), [&](const char* f) { return trace->count(f) > 0; });
    if (!bc_given) cfg.xi = cfg.rho = 0.5 * kPi;
  }

  std::ostringstream buffer;
  int code = kExitOk;
  try {
    if (spectrum->parsed()) code = cmd_spectrum(cfg, buffer);
    else if (eigfn->parsed()) code = cmd_eigenfunction(cfg, buffer);
    else if (iso->parsed()) code = cmd_isospectral(cfg, buffer);
    else if (trace->parsed()) code = cmd_trace(cfg, buffer);
    else if (oracle->parsed()) code = cmd_oracle_compare(cfg, buffer);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::InvalidArgument:
      case ErrorKind::NotUnitary:
      case ErrorKind::BadDirection:
      case ErrorKind::OutOfDomain:
      case ErrorKind::DegeneratePath:
        return kExitInvalid;
      default:
        return kExitSolver;
    }
  }

  if (cfg.output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream f(cfg.output);
    if (!f) {
      err << "error: cannot write " << cfg.output << '\n';
      return kExitInvalid;
    }
    f << buffer.str();
  }
  return code;
}

}  // namespace qdefect
