#include "ptspec/cli/app.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>
#include <omp.h>

#include "ptspec/cli/cache.hpp"
#include "ptspec/cli/output.hpp"
#include "ptspec/errors.hpp"
#include "ptspec/hobasis.hpp"
#include "ptspec/potential.hpp"
#include "ptspec/semiclassical.hpp"
#include "ptspec/shooting.hpp"
#include "ptspec/sweep.hpp"
#include "ptspec/toymodels.hpp"

#ifndef PTSPEC_VERSION
#define PTSPEC_VERSION "dev"
#endif

namespace ptspec::cli {

namespace {

struct Common {
  std::string format = "csv";
  std::string cache_dir;
  bool no_cache = false;
  int threads = -1;
};

struct Outcome {
  ResultTable table;
  int exit_code = kExitOk;
  std::vector<std::string> notes;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

NGrid parse_grid(const std::string& text) {
  NGrid g;
  char c1 = 0;
  char c2 = 0;
  std::istringstream in(text);
  if (!(in >> g.start >> c1 >> g.stop >> c2 >> g.step) || c1 != ':' ||
      c2 != ':' || !(in >> std::ws).eof()) {
    throw UsageError("grid must look like start:stop:step, got '" + text + "'");
  }
  return g;
}

std::vector<Method> parse_methods(const std::vector<std::string>& tags) {
  std::vector<Method> out;
  for (const auto& t : tags) {
    const auto m = parse_method(t);
    if (!m) throw UsageError("unknown method '" + t + "' (expected M0..M3)");
    out.push_back(*m);
  }
  return out;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "csv, json or table")
      ->check(CLI::IsMember({"csv", "json", "table"}))
      ->capture_default_str();
  sub->add_option("--cache-dir", c.cache_dir,
                  "Result cache directory (default: $PTSPEC_CACHE_DIR, else off)");
  sub->add_flag("--no-cache", c.no_cache, "Bypass the result cache");
  sub->add_option("--threads", c.threads,
                  "Thread budget; 0 = all cores (default: $PTSPEC_THREADS, else all)")
      ->check(CLI::NonNegativeNumber);
}

// Canonical request text for the cache key: subcommand, every option with
// its effective value, and the code version.  Options that cannot change
// the output are left out.
std::string canonical_request(const CLI::App* sub, const Common& c) {
  std::string text = std::string("version=") + PTSPEC_VERSION + "\n" +
                     "command=" + sub->get_name() + "\n" +
                     "format=" + c.format + "\n";
  std::istringstream config(sub->config_to_str(true, false));
  std::string line;
  while (std::getline(config, line)) {
    if (line.rfind("cache-dir", 0) == 0 || line.rfind("no-cache", 0) == 0 ||
        line.rfind("threads", 0) == 0 || line.rfind("format", 0) == 0) {
      continue;
    }
    text += line + "\n";
  }
  return text;
}

void apply_threads(const Common& c) {
  int threads = c.threads;
  if (threads < 0) {
    const char* env = std::getenv("PTSPEC_THREADS");
    if (env != nullptr && *env != '\0') {
      try {
        threads = std::stoi(env);
      } catch (const std::exception&) {
        throw UsageError(std::string("PTSPEC_THREADS is not an integer: ") + env);
      }
      if (threads < 0) throw UsageError("PTSPEC_THREADS must be >= 0");
    }
  }
  if (threads > 0) omp_set_num_threads(threads);
}

// --- subcommands ---------------------------------------------------------

struct CwkbArgs {
  double n = 0.0;
  int levels = 5;
  std::string method = "mxtp";
};

Outcome run_cwkb(const CwkbArgs& a) {
  Outcome o;
  o.table.columns = {"N", "n", "method", "energy"};
  for (int n = 0; n < a.levels; ++n) {
    WkbEnergy e;
    if (a.method == "bb") e = energy_bb(a.n, n);
    else if (a.method == "mxtp") e = energy_mxtp(a.n, n);
    else if (a.method == "hermitian") e = energy_hermitian(a.n, n);
    else e = invert_action(a.n, n);
    o.table.add({a.n, static_cast<long>(n), std::string(to_string(e.method)),
                 e.energy});
  }
  return o;
}

struct ShootArgs {
  double n = 0.0;
  int levels = 5;
  double e_max = 0.0;
  double d = 0.0;
  double root_tol = 1e-6;
  double ode_tol = 1e-10;
  double d_tol = 1e-2;
  double step = 0.0;
  bool trace = false;
};

Outcome run_shoot(const ShootArgs& a) {
  Outcome o;
  ShootingOptions so;
  so.scan_e_max = a.e_max > 0.0 ? a.e_max : estimate_e_max(a.n, a.levels);
  if (a.d > 0.0) {
    so.d_policy = DPolicy::kFixed;
    so.d_fixed = a.d;
  }
  so.root_tol = a.root_tol;
  so.local_ode_tol = a.ode_tol;
  so.d_convergence_tol = a.d_tol;
  so.scan_step = a.step;
  const PotentialSpec spec(a.n);
  const auto r = find_eigenvalues(spec, so);
  if (a.trace) {
    o.table.columns = {"N", "energy", "f", "im_residual"};
    for (const auto& s : r.trace.samples) {
      o.table.add({a.n, s.energy, s.f, s.im_residual});
    }
    return o;
  }
  o.table.columns = {"N", "n", "energy", "d", "energy_grown_d", "d_shift",
                     "converged"};
  bool all_converged = true;
  for (const auto& ev : r.eigenvalues) {
    o.table.add({a.n, static_cast<long>(ev.n), ev.energy, ev.d_used,
                 std::isnan(ev.energy_grown_d) ? Cell{} : Cell{ev.energy_grown_d},
                 ev.d_shift_change, ev.converged});
    all_converged = all_converged && ev.converged;
  }
  if (!r.diagnostic.empty()) o.notes.push_back(r.diagnostic);
  const bool short_count =
      a.e_max <= 0.0 && static_cast<int>(r.eigenvalues.size()) < a.levels;
  if (short_count) {
    o.notes.push_back(fmt::format("found {} of {} requested levels",
                                  r.eigenvalues.size(), a.levels));
  }
  if (!all_converged || short_count || r.eigenvalues.empty()) {
    o.exit_code = kExitNonConvergence;
  }
  return o;
}

struct DiagArgs {
  double n = 0.0;
  std::size_t size = 400;
  double growth = 1.25;
  double imag_tol = 1e-6;
  double stability_tol = 1e-2;
  int levels = 5;
  bool raw = false;
  std::string dump_h;
};

Outcome run_diag(const DiagArgs& a) {
  Outcome o;
  const PotentialSpec spec(a.n);
  if (!a.dump_h.empty()) {
    std::ofstream f(a.dump_h, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + a.dump_h);
    write_matrix(f, build_hamiltonian(spec, a.size));
    if (!f) throw std::runtime_error("write failed: " + a.dump_h);
  }
  if (a.raw) {
    const auto r = raw_spectrum(spec, a.size);
    auto values = r.values;
    std::sort(values.begin(), values.end(), [](auto x, auto y) {
      return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    o.table.columns = {"N", "size", "re", "im"};
    for (const auto& v : values) {
      o.table.add({a.n, static_cast<long>(a.size), v.real(), v.imag()});
    }
    return o;
  }
  BasisOptions bo;
  bo.size = a.size;
  bo.growth_factor = a.growth;
  bo.imag_tol = a.imag_tol;
  bo.stability_tol = a.stability_tol;
  const auto r = spectrum(spec, bo);
  o.table.columns = {"N", "n", "energy", "stability", "size", "grown_size"};
  for (const auto& l : r.accepted) {
    if (a.levels > 0 && l.n >= a.levels) break;
    o.table.add({a.n, static_cast<long>(l.n), l.energy, l.stability,
                 static_cast<long>(r.size), static_cast<long>(r.grown_size)});
  }
  if (a.levels > 0 && static_cast<int>(r.accepted.size()) < a.levels) {
    o.notes.push_back(fmt::format("accepted {} of {} requested levels",
                                  r.accepted.size(), a.levels));
    o.exit_code = kExitNonConvergence;
  }
  return o;
}

struct SweepArgs {
  std::vector<std::string> methods{"M1"};
  std::string grid = "2:12:0.5";
  int levels = 5;
  std::size_t size = 400;
  bool ip = false;
  double null_spectrum = 0.0;
  double window = 0.2;
};

Outcome run_sweep_cmd(const SweepArgs& a) {
  Outcome o;
  if (a.null_spectrum > 0.0) {
    NullSpectrumOptions no;
    no.levels = a.levels;
    const auto rep = null_spectrum_report(a.null_spectrum, a.window, no);
    o.table.columns = {"N", "method", "energy", "spread", "converged"};
    for (const auto& p : rep.points) {
      for (const auto& l : p.shooting) {
        o.table.add({p.big_n, std::string("M2"), l.energy, l.spread, l.converged});
      }
      for (const auto& l : p.basis) {
        o.table.add({p.big_n, std::string("M3"), l.energy, l.spread, l.converged});
      }
      o.notes.push_back(fmt::format("N={}: {} converged (M2), {} converged (M3)",
                                    p.big_n, p.shooting_converged,
                                    p.basis_converged));
    }
    return o;
  }
  SweepRequest req;
  req.methods = parse_methods(a.methods);
  req.grid = parse_grid(a.grid);
  req.levels = a.levels;
  req.basis.size = a.size;
  const auto table = run_sweep(req);
  if (a.ip) {
    o.table.columns = {"method", "n", "N_star"};
    for (Method m : req.methods) {
      for (int l = 0; l < req.levels; ++l) {
        for (double x : detect_isolated_points(table, m, l)) {
          o.table.add({std::string(to_string(m)), static_cast<long>(l), x});
        }
      }
    }
    return o;
  }
  o.table.columns = {"method", "N", "n", "energy", "converged", "diagnostic"};
  for (const auto& s : table.series) {
    for (const auto& e : s.entries) {
      o.table.add({std::string(to_string(s.method)), e.big_n,
                   static_cast<long>(s.level),
                   e.energy ? Cell{*e.energy} : Cell{}, e.converged,
                   e.diagnostic});
    }
  }
  return o;
}

struct TurningArgs {
  double n = 0.0;
  double energy = 1.0;
};

Outcome run_turning(const TurningArgs& a) {
  Outcome o;
  const PotentialSpec spec(a.n);
  const auto set = turning_points(spec, a.energy);
  const auto mx = select_maximal_pair(spec, a.energy);
  o.table.columns = {"N", "E", "k", "partner", "re", "im", "residual",
                     "valid", "maximal", "minimal"};
  const auto add = [&](const TurningPoint& p, bool valid) {
    o.table.add({a.n, a.energy, static_cast<long>(p.k), p.partner, p.x.real(),
                 p.x.imag(), p.residual, valid, valid && p.k == mx.k,
                 valid && p.k == 0});
  };
  for (const auto& p : set.points) add(p, true);
  for (const auto& p : set.rejected) add(p, false);
  return o;
}

struct ToyArgs {
  std::string model = "A";
  double lambda = 0.0;
  bool lambda_given = false;
  std::string grid = "-3:5:0.1";
  bool classify = false;
  bool hft = false;
  double h = 1e-4;
};

Outcome run_toy(const ToyArgs& a) {
  Outcome o;
  const auto model = parse_toy_model(a.model);
  if (!model) throw UsageError("unknown model '" + a.model + "' (expected A..D)");
  if (a.classify) {
    const auto pc = classify_point(*model, a.lambda, a.h);
    o.table.columns = {"model", "lambda_star", "kind", "left_slope",
                       "right_slope", "complex_side"};
    o.table.add({a.model, a.lambda, std::string(to_string(pc.kind)),
                 pc.left_slope, pc.right_slope, pc.complex_side});
    return o;
  }
  if (a.hft) {
    o.table.columns = {"model", "lambda", "hft_residual"};
    o.table.add({std::string("B"), a.lambda, hft_residual(a.lambda, a.h)});
    return o;
  }
  std::vector<double> lambdas;
  if (a.lambda_given) {
    lambdas.push_back(a.lambda);
  } else {
    double lo = 0, hi = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(a.grid);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' ||
        !(step > 0.0) || hi < lo) {
      throw UsageError("lambda grid must look like min:max:step");
    }
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= count; ++i) lambdas.push_back(lo + static_cast<double>(i) * step);
  }
  o.table.columns = {"model", "lambda", "e1_re", "e1_im", "e2_re", "e2_im",
                     "numeric_dev"};
  for (double l : lambdas) {
    const auto [c1, c2] = toy_closed_form(*model, l);
    const auto [n1, n2] = toy_numeric(*model, l);
    const double dev = std::max(std::abs(c1 - n1), std::abs(c2 - n2));
    o.table.add({std::string(to_string(*model)), l, c1.real(), c1.imag(),
                 c2.real(), c2.imag(), dev});
  }
  return o;
}

struct CompareArgs {
  int levels = 5;
  std::size_t size = 400;
  std::size_t size_large = 800;
  std::vector<std::string> methods{"M1", "M2", "M3"};
};

Outcome run_compare(const CompareArgs& a) {
  Outcome o;
  CompareOptions co;
  co.levels = a.levels;
  co.basis_size = a.size;
  co.basis_size_large_n = a.size_large;
  co.methods = parse_methods(a.methods);
  o.table.columns = {"N", "n", "method", "computed", "reference", "abs_dev",
                     "tolerance", "within", "note"};
  int outside = 0;
  for (const auto& r : table1_compare(co)) {
    o.table.add({r.big_n, static_cast<long>(r.n), std::string(to_string(r.method)),
                 r.computed ? Cell{*r.computed} : Cell{}, r.reference,
                 r.abs_dev, r.tolerance, r.within, r.note});
    outside += !r.within;
  }
  o.notes.push_back(fmt::format("{} of {} cells outside tolerance", outside,
                                o.table.rows.size()));
  return o;
}

struct FiguresArgs {
  std::vector<std::string> which{"fig1", "fig2", "fig3"};
  std::string out_dir = "figures";
  std::vector<std::string> fig2_methods{"M0", "M1"};
  std::string fig2_grid = "2:12:0.05";
  bool json_mirror = false;
};

Outcome run_figures(const FiguresArgs& a) {
  Outcome o;
  FigureOptions fo;
  fo.fig2.methods = parse_methods(a.fig2_methods);
  fo.fig2.grid = parse_grid(a.fig2_grid);
  o.table.columns = {"figure", "path", "rows"};
  for (const auto& tag : a.which) {
    const auto fig = parse_figure(tag);
    if (!fig) throw UsageError("unknown figure '" + tag + "'");
    const CsvTable t = figure_table(*fig, fo);
    std::filesystem::create_directories(a.out_dir);
    const auto path = std::filesystem::path(a.out_dir) / (tag + ".csv");
    {
      std::ofstream f(path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open " + path.string());
      write_csv(f, t);
      if (!f) throw std::runtime_error("write failed: " + path.string());
    }
    if (a.json_mirror) {
      auto arr = nlohmann::json::array();
      for (const auto& row : t.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t k = 0; k < row.size(); ++k) obj[t.header[k]] = row[k];
        arr.push_back(std::move(obj));
      }
      const auto jpath = std::filesystem::path(a.out_dir) / (tag + ".json");
      std::ofstream f(jpath, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open " + jpath.string());
      f << arr.dump(2) << '\n';
    }
    o.table.add({tag, path.string(), static_cast<long>(t.rows.size())});
  }
  return o;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Spectra of the PT-symmetric potential V(x) = -(ix)^N", "ptspec"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PTSPEC_VERSION);
  Common common;

  CwkbArgs cwkb;
  auto* c_cwkb = app.add_subcommand("cwkb", "Semiclassical closed-form energies");
  c_cwkb->add_option("--N", cwkb.n, "Exponent N")->required();
  c_cwkb->add_option("--levels", cwkb.levels)->check(CLI::PositiveNumber)->capture_default_str();
  c_cwkb->add_option("--method", cwkb.method, "bb, mxtp, hermitian or action")
      ->check(CLI::IsMember({"bb", "mxtp", "hermitian", "action"}))
      ->capture_default_str();
  add_common(c_cwkb, common);

  ShootArgs shoot;
  auto* c_shoot = app.add_subcommand("shoot", "Dirichlet eigenvalues by real-line shooting");
  c_shoot->add_option("--N", shoot.n, "Exponent N")->required();
  c_shoot->add_option("--levels", shoot.levels)->check(CLI::PositiveNumber)->capture_default_str();
  c_shoot->add_option("--emax", shoot.e_max, "Scan ceiling (default: from semiclassical levels)");
  c_shoot->add_option("--d", shoot.d, "Fixed matching distance (default: automatic)");
  c_shoot->add_option("--root-tol", shoot.root_tol)->capture_default_str();
  c_shoot->add_option("--ode-tol", shoot.ode_tol)->capture_default_str();
  c_shoot->add_option("--d-tol", shoot.d_tol, "d-convergence tolerance")->capture_default_str();
  c_shoot->add_option("--step", shoot.step, "Scan step (0 = adaptive)")->capture_default_str();
  c_shoot->add_flag("--trace", shoot.trace, "Emit the miss-function scan instead");
  add_common(c_shoot, common);

  DiagArgs diag;
  auto* c_diag = app.add_subcommand("diag", "Eigenvalues in the oscillator basis");
  c_diag->add_option("--N", diag.n, "Exponent N")->required();
  c_diag->add_option("--size", diag.size)->check(CLI::Range(8, 20000))->capture_default_str();
  c_diag->add_option("--growth", diag.growth)->capture_default_str();
  c_diag->add_option("--imag-tol", diag.imag_tol)->capture_default_str();
  c_diag->add_option("--stability-tol", diag.stability_tol)->capture_default_str();
  c_diag->add_option("--levels", diag.levels, "Levels to report, 0 = all")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  c_diag->add_flag("--raw", diag.raw, "Emit the unfiltered spectrum at --size");
  c_diag->add_option("--dump-h", diag.dump_h, "Write H as text (re,im pairs)");
  add_common(c_diag, common);

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("sweep", "E_n over a grid of N");
  c_sweep->add_option("--methods", sweep.methods, "Comma list of M0..M3")
      ->delimiter(',')->capture_default_str();
  c_sweep->add_option("--grid", sweep.grid, "start:stop:step")->capture_default_str();
  c_sweep->add_option("--levels", sweep.levels)->check(CLI::PositiveNumber)->capture_default_str();
  c_sweep->add_option("--size", sweep.size, "Basis size for M3")->capture_default_str();
  c_sweep->add_flag("--ip", sweep.ip, "Report isolated points instead of the table");
  c_sweep->add_option("--null-spectrum", sweep.null_spectrum,
                      "Null-spectrum report around this N (4 or 8)");
  c_sweep->add_option("--window", sweep.window)->capture_default_str();
  add_common(c_sweep, common);

  TurningArgs turning;
  auto* c_turning = app.add_subcommand("turning-points", "Complex turning points");
  c_turning->add_option("--N", turning.n, "Exponent N")->required();
  c_turning->add_option("--E", turning.energy)->capture_default_str();
  add_common(c_turning, common);

  ToyArgs toy;
  auto* c_toy = app.add_subcommand("toy", "2x2 toy models");
  c_toy->add_option("--model", toy.model, "A, B, C or D")->capture_default_str();
  auto* lambda_opt = c_toy->add_option("--lambda", toy.lambda);
  c_toy->add_option("--grid", toy.grid, "min:max:step")->capture_default_str();
  c_toy->add_flag("--classify", toy.classify, "Classify --lambda as EP, IP or ANALYTIC");
  c_toy->add_flag("--hft", toy.hft, "Hellmann-Feynman residual of B at --lambda");
  c_toy->add_option("--fd-step", toy.h, "Finite-difference step")->capture_default_str();
  add_common(c_toy, common);

  CompareArgs compare;
  auto* c_compare = app.add_subcommand("compare", "Side-by-side with the reference table");
  c_compare->add_option("--levels", compare.levels)->check(CLI::Range(1, 5))->capture_default_str();
  c_compare->add_option("--size", compare.size)->capture_default_str();
  c_compare->add_option("--size-large", compare.size_large, "Basis size at N >= 10")
      ->capture_default_str();
  c_compare->add_option("--methods", compare.methods)->delimiter(',')->capture_default_str();
  add_common(c_compare, common);

  FiguresArgs figures;
  auto* c_figures = app.add_subcommand("figures", "Write figure data as CSV");
  c_figures->add_option("--which", figures.which)->delimiter(',')->capture_default_str();
  c_figures->add_option("--out", figures.out_dir)->capture_default_str();
  c_figures->add_option("--fig2-methods", figures.fig2_methods)->delimiter(',')
      ->capture_default_str();
  c_figures->add_option("--fig2-grid", figures.fig2_grid)->capture_default_str();
  c_figures->add_flag("--json-mirror", figures.json_mirror, "Also write <fig>.json");
  add_common(c_figures, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << PTSPEC_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "ptspec: error: usage: " << one_line(e.what()) << '\n';
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  toy.lambda_given = lambda_opt->count() > 0;

  const std::map<std::string, std::function<Outcome()>> handlers{
      {"cwkb", [&] { return run_cwkb(cwkb); }},
      {"shoot", [&] { return run_shoot(shoot); }},
      {"diag", [&] { return run_diag(diag); }},
      {"sweep", [&] { return run_sweep_cmd(sweep); }},
      {"turning-points", [&] { return run_turning(turning); }},
      {"toy", [&] { return run_toy(toy); }},
      {"compare", [&] { return run_compare(compare); }},
      {"figures", [&] { return run_figures(figures); }},
  };

  try {
    apply_threads(common);
    const Format format = *parse_format(common.format);
    std::string cache_dir = common.cache_dir;
    if (cache_dir.empty()) {
      if (const char* env = std::getenv("PTSPEC_CACHE_DIR")) cache_dir = env;
    }
    const bool side_effects = sub->get_name() == "figures" || !diag.dump_h.empty();
    std::optional<Cache> cache;
    std::string key;
    if (!cache_dir.empty() && !common.no_cache && !side_effects) {
      cache.emplace(cache_dir, err);
      key = Cache::make_key(canonical_request(sub, common));
      if (auto hit = cache->lookup(key)) {
        out << hit->payload << std::flush;
        return hit->exit_code;
      }
    }

    const Outcome outcome = handlers.at(sub->get_name())();
    const std::string text = render(outcome.table, format);
    out << text << std::flush;
    for (const auto& note : outcome.notes) err << "ptspec: note: " << one_line(note) << '\n';
    if (outcome.exit_code == kExitNonConvergence) {
      err << "ptspec: error: convergence: results incomplete or not converged\n";
    }
    if (cache && cache->enabled()) {
      const auto now = std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch());
      cache->store({key, outcome.exit_code, now.count(), text});
    }
    return outcome.exit_code;
  } catch (const UsageError& e) {
    err << "ptspec: error: usage: " << one_line(e.what()) << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "ptspec: error: usage: " << one_line(e.what()) << '\n';
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "ptspec: error: convergence: " << one_line(e.what()) << '\n';
    return kExitNonConvergence;
  } catch (const IntegrationError& e) {
    err << "ptspec: error: convergence: " << one_line(e.what()) << '\n';
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    err << "ptspec: error: internal: " << one_line(e.what()) << '\n';
    return kExitInternal;
  }
}

}  // namespace ptspec::cli
