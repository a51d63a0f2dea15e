#include "ptspec/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "ptspec/errors.hpp"
#include "ptspec/potential.hpp"
#include "ptspec/semiclassical.hpp"
#include "ptspec/toymodels.hpp"

namespace ptspec {

namespace detail {
extern const char* const kTable1Csv;
}

namespace {

using numerics::Complex;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Candidate {
  std::optional<double> energy;
  bool converged = false;
  std::string diagnostic;
};

using PointResult = std::vector<Candidate>;

PointResult evaluate_closed_form(Method method, double big_n, int levels) {
  PointResult out;
  for (int n = 0; n < levels; ++n) {
    const double e = method == Method::kM0 ? energy_bb(big_n, n).energy
                                           : energy_mxtp(big_n, n).energy;
    out.push_back({e, true, {}});
  }
  return out;
}

PointResult evaluate_shooting(const SweepRequest& req, double big_n,
                              bool parallel) {
  ShootingOptions o = req.shooting;
  o.parallel = parallel;
  if (req.auto_e_max) o.scan_e_max = estimate_e_max(big_n, req.levels);
  const auto result = find_eigenvalues(PotentialSpec(big_n), o);
  PointResult out;
  for (const auto& ev : result.eigenvalues) {
    if (ev.converged) {
      out.push_back({ev.energy, true, {}});
    } else {
      out.push_back({std::nullopt, false,
                     fmt::format("not d-converged: E={:.6g} shift={:.3g}",
                                 ev.energy, ev.d_shift_change)});
    }
  }
  if (out.empty()) out.push_back({std::nullopt, false, result.diagnostic});
  return out;
}

PointResult evaluate_basis(const SweepRequest& req, double big_n,
                           bool parallel) {
  BasisOptions o = req.basis;
  o.parallel = parallel;
  const auto result = spectrum(PotentialSpec(big_n), o);
  PointResult out;
  for (const auto& level : result.accepted) {
    out.push_back({level.energy, true, {}});
  }
  return out;
}

PointResult evaluate(Method method, const SweepRequest& req, double big_n,
                     bool parallel) {
  switch (method) {
    case Method::kM0:
    case Method::kM1:
      return evaluate_closed_form(method, big_n, req.levels);
    case Method::kM2:
      return evaluate_shooting(req, big_n, parallel);
    case Method::kM3:
      return evaluate_basis(req, big_n, parallel);
  }
  throw DomainError("unknown method");
}

// Assigns the candidates at one N to levels by rank.  When fewer than
// `levels` candidates exist and earlier values are known, each value instead
// continues the level whose previous value is nearest, keeping the
// assignment monotone.
std::vector<SweepEntry> stitch(const PointResult& point, double big_n,
                               int levels,
                               const std::vector<std::optional<double>>& prev) {
  const auto lv = static_cast<std::size_t>(levels);
  std::vector<SweepEntry> row(lv);
  for (auto& e : row) {
    e.big_n = big_n;
    e.diagnostic = "no value for this level";
  }
  const bool have_prev = std::any_of(prev.begin(), prev.end(),
                                     [](const auto& v) { return v.has_value(); });
  if (point.size() >= lv || !have_prev) {
    for (std::size_t n = 0; n < lv && n < point.size(); ++n) {
      row[n].energy = point[n].energy;
      row[n].converged = point[n].converged;
      row[n].diagnostic = point[n].diagnostic;
    }
    return row;
  }
  std::size_t next_level = 0;
  for (const auto& c : point) {
    if (!c.energy) continue;
    std::size_t best = lv;
    double best_dist = kInf;
    for (std::size_t l = next_level; l < lv; ++l) {
      if (!prev[l]) continue;
      const double dist = std::abs(*prev[l] - *c.energy);
      if (dist < best_dist) {
        best = l;
        best_dist = dist;
      }
    }
    if (best == lv) best = next_level;
    if (best >= lv) break;
    row[best].energy = c.energy;
    row[best].converged = c.converged;
    row[best].diagnostic = c.diagnostic;
    next_level = best + 1;
  }
  return row;
}

template <class Body>
void for_each_index(std::size_t count, bool parallel, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double median(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<long>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Nearest value to x among `values`, or nullopt.
std::optional<Complex> nearest(const std::vector<Complex>& values, Complex x) {
  std::optional<Complex> best;
  for (const auto& v : values) {
    if (!best || std::abs(v - x) < std::abs(*best - x)) best = v;
  }
  return best;
}

std::vector<LevelSpread> spreads(
    const std::vector<std::vector<Complex>>& runs, std::size_t reference,
    const std::vector<double>& real_tols, double e_max, int levels,
    double tolerance) {
  std::vector<Complex> ref;
  for (const auto& v : runs[reference]) {
    if (std::abs(v.imag()) <= real_tols[reference] && v.real() > 0.0 &&
        v.real() <= e_max) {
      ref.push_back(v);
    }
  }
  std::sort(ref.begin(), ref.end(),
            [](Complex a, Complex b) { return a.real() < b.real(); });
  if (ref.size() > static_cast<std::size_t>(2 * levels)) {
    ref.resize(static_cast<std::size_t>(2 * levels));
  }
  std::vector<LevelSpread> out;
  for (const auto& r : ref) {
    double lo = r.real();
    double hi = r.real();
    bool partnered = true;
    for (std::size_t k = 0; k < runs.size(); ++k) {
      if (k == reference) continue;
      const auto p = nearest(runs[k], r);
      if (!p || std::abs(p->imag()) > real_tols[k]) {
        partnered = false;
        break;
      }
      lo = std::min(lo, p->real());
      hi = std::max(hi, p->real());
    }
    const double spread = partnered ? hi - lo : kInf;
    out.push_back({r.real(), spread, spread <= tolerance});
  }
  return out;
}

std::string note_join(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "; " + b;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kM0: return "M0";
    case Method::kM1: return "M1";
    case Method::kM2: return "M2";
    case Method::kM3: return "M3";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view tag) {
  if (tag.size() != 2 || std::toupper(static_cast<unsigned char>(tag[0])) != 'M') {
    return std::nullopt;
  }
  switch (tag[1]) {
    case '0': return Method::kM0;
    case '1': return Method::kM1;
    case '2': return Method::kM2;
    case '3': return Method::kM3;
    default: return std::nullopt;
  }
}

std::vector<double> NGrid::points() const {
  validate();
  const auto count =
      static_cast<long>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count + 1));
  for (long i = 0; i <= count; ++i) {
    out.push_back(start + static_cast<double>(i) * step);
  }
  return out;
}

void NGrid::validate() const {
  if (!(step > 0.0)) throw DomainError("N grid: step must be positive");
  if (!(start >= PotentialSpec::kMinN && stop <= PotentialSpec::kMaxN &&
        start <= stop)) {
    throw DomainError(fmt::format(
        "N grid: need {} <= start <= stop <= {}, got {}:{}",
        PotentialSpec::kMinN, PotentialSpec::kMaxN, start, stop));
  }
}

void SweepRequest::validate() const {
  grid.validate();
  if (levels < 1) throw DomainError("sweep: levels must be >= 1");
  if (methods.empty()) throw DomainError("sweep: no methods requested");
  shooting.validate();
  basis.validate();
}

const SweepSeries* SweepTable::find(Method method, int level) const {
  for (const auto& s : series) {
    if (s.method == method && s.level == level) return &s;
  }
  return nullptr;
}

SweepTable run_sweep(const SweepRequest& req) {
  req.validate();
  SweepTable table;
  table.grid = req.grid.points();
  const std::size_t npts = table.grid.size();
  const bool outer = req.parallel && npts > 1;
  const bool inner = req.parallel && !outer;

  for (Method method : req.methods) {
    std::vector<PointResult> points(npts);
    for_each_index(npts, outer, [&](std::size_t i) {
      try {
        points[i] = evaluate(method, req, table.grid[i], inner);
      } catch (const std::exception& e) {
        points[i] = {Candidate{std::nullopt, false, e.what()}};
      }
    });

    std::vector<SweepSeries> series(static_cast<std::size_t>(req.levels));
    for (int l = 0; l < req.levels; ++l) {
      series[static_cast<std::size_t>(l)].method = method;
      series[static_cast<std::size_t>(l)].level = l;
    }
    std::vector<std::optional<double>> prev(static_cast<std::size_t>(req.levels));
    for (std::size_t i = 0; i < npts; ++i) {
      const auto row = stitch(points[i], table.grid[i], req.levels, prev);
      for (int l = 0; l < req.levels; ++l) {
        const auto& e = row[static_cast<std::size_t>(l)];
        series[static_cast<std::size_t>(l)].entries.push_back(e);
        if (e.energy) prev[static_cast<std::size_t>(l)] = e.energy;
      }
    }
    for (auto& s : series) table.series.push_back(std::move(s));
  }
  return table;
}

std::vector<double> detect_isolated_points(const SweepTable& table,
                                           Method method, int level) {
  const SweepSeries* s = table.find(method, level);
  if (s == nullptr) {
    throw DomainError(fmt::format("no series for {} level {}",
                                  to_string(method), level));
  }
  const auto& g = table.grid;
  if (g.size() < 4) throw DomainError("detect_isolated_points: grid too short");
  const double h = g[1] - g[0];
  if (h > 0.05 + 1e-12) {
    throw DomainError(fmt::format(
        "detect_isolated_points: grid step {} exceeds 0.05", h));
  }

  constexpr std::size_t kWindow = 10;
  constexpr double kFactor = 5.0;
  std::vector<double> found;
  std::size_t i = 0;
  const auto& e = s->entries;
  while (i < e.size()) {
    std::size_t j = i;
    while (j < e.size() && e[j].energy) ++j;
    // Segment [i, j) has values.
    if (j - i >= 3) {
      std::vector<double> slope;
      for (std::size_t k = i; k + 1 < j; ++k) {
        slope.push_back((*e[k + 1].energy - *e[k].energy) / h);
      }
      double scale = 0.0;
      for (std::size_t k = i; k < j; ++k) {
        scale = std::max(scale, std::abs(*e[k].energy));
      }
      // jump[m] is centred on grid index i + m + 1.
      std::vector<double> jump;
      for (std::size_t k = 1; k < slope.size(); ++k) {
        jump.push_back(slope[k] - slope[k - 1]);
      }
      std::vector<bool> flagged(jump.size(), false);
      for (std::size_t m = 3; m < jump.size(); ++m) {
        const std::size_t from = m > kWindow ? m - kWindow : 0;
        std::vector<double> window;
        for (std::size_t k = from; k < m; ++k) window.push_back(std::abs(jump[k]));
        const double noise = std::max(median(window), 1e-12 * scale);
        flagged[m] = std::abs(jump[m]) > kFactor * noise;
      }
      for (std::size_t m = 0; m < jump.size();) {
        if (!flagged[m]) {
          ++m;
          continue;
        }
        std::size_t best = m;
        std::size_t k = m;
        while (k < jump.size() && flagged[k]) {
          if (std::abs(jump[k]) > std::abs(jump[best])) best = k;
          ++k;
        }
        found.push_back(g[i + best + 1]);
        m = k;
      }
    }
    i = j + 1;
  }
  return found;
}

NullSpectrumReport null_spectrum_report(double n_star, double window,
                                        const NullSpectrumOptions& opts) {
  if (!(window > 0.0)) throw DomainError("null_spectrum_report: window must be positive");
  if (opts.d_values.empty() || opts.sizes.empty()) {
    throw DomainError("null_spectrum_report: need d values and sizes");
  }
  NullSpectrumReport report;
  report.n_star = n_star;
  report.window = window;
  for (double big_n : {n_star - window, n_star, n_star + window}) {
    const PotentialSpec spec(big_n);
    NullSpectrumPoint point;
    point.big_n = big_n;
    const double e_max = estimate_e_max(big_n, opts.levels);

    ShootingOptions so;
    so.scan_e_max = e_max;
    so.parallel = opts.parallel;
    const auto grid = scan_grid(spec, so);
    std::vector<std::vector<Complex>> runs;
    for (double d : opts.d_values) {
      const auto trace = scan_miss_function(spec, grid, d, so);
      const auto roots = roots_from_trace(spec, trace, d, so);
      runs.emplace_back(roots.begin(), roots.end());
    }
    const std::vector<double> zero_tol(runs.size(), 0.0);
    point.shooting = spreads(runs, opts.d_values.size() / 2, zero_tol,
                             e_max, opts.levels, opts.tolerance);

    if (opts.include_basis) {
      std::vector<std::vector<Complex>> raw;
      std::vector<double> tols;
      for (std::size_t size : opts.sizes) {
        auto r = raw_spectrum(spec, size, opts.parallel);
        tols.push_back(realness_tolerance(1e-6, r.norm, size));
        raw.push_back(std::move(r.values));
      }
      point.basis = spreads(raw, opts.sizes.size() / 2, tols, e_max,
                            opts.levels, opts.tolerance);
    }
    for (const auto& l : point.shooting) point.shooting_converged += l.converged;
    for (const auto& l : point.basis) point.basis_converged += l.converged;
    report.points.push_back(std::move(point));
  }
  return report;
}

const std::vector<ReferenceCell>& table1_reference() {
  static const std::vector<ReferenceCell> cells = [] {
    std::vector<ReferenceCell> out;
    std::istringstream in(detail::kTable1Csv);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      if (header) {
        header = false;
        continue;
      }
      std::vector<std::string> f;
      std::size_t pos = 0;
      for (int k = 0; k < 4; ++k) {
        const auto comma = line.find(',', pos);
        if (comma == std::string::npos) throw DomainError("bad reference row: " + line);
        f.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
      }
      f.push_back(line.substr(pos));
      const auto method = parse_method(f[0]);
      if (!method) throw DomainError("bad reference method: " + f[0]);
      out.push_back({*method, std::stod(f[1]), std::stoi(f[2]),
                     std::stod(f[3]), f[4]});
    }
    return out;
  }();
  return cells;
}

double comparison_tolerance(Method method) {
  switch (method) {
    case Method::kM0:
    case Method::kM1: return 5e-4;
    case Method::kM2: return 1e-2;
    case Method::kM3: return 2e-2;
  }
  return 0.0;
}

std::vector<ComparisonRow> table1_compare(const CompareOptions& opts) {
  std::vector<ComparisonRow> rows;
  const auto wanted = [&](Method m) {
    return std::find(opts.methods.begin(), opts.methods.end(), m) !=
           opts.methods.end();
  };
  for (double big_n : opts.n_values) {
    const PotentialSpec spec(big_n);
    std::vector<std::optional<double>> m1;
    std::vector<std::optional<double>> m2;
    std::vector<std::optional<double>> m3;
    std::vector<std::string> m2_notes(static_cast<std::size_t>(opts.levels));
    if (wanted(Method::kM1)) {
      for (int n = 0; n < opts.levels; ++n) m1.push_back(energy_mxtp(big_n, n).energy);
    }
    if (wanted(Method::kM2)) {
      ShootingOptions so;
      so.scan_e_max = estimate_e_max(big_n, opts.levels);
      so.parallel = opts.parallel;
      const auto r = find_eigenvalues(spec, so);
      for (int n = 0; n < opts.levels; ++n) {
        if (static_cast<std::size_t>(n) < r.eigenvalues.size()) {
          const auto& ev = r.eigenvalues[static_cast<std::size_t>(n)];
          m2.push_back(ev.energy);
          if (!ev.converged) {
            m2_notes[static_cast<std::size_t>(n)] =
                fmt::format("not d-converged (shift {:.3g})", ev.d_shift_change);
          }
        } else {
          m2.push_back(std::nullopt);
        }
      }
    }
    if (wanted(Method::kM3)) {
      BasisOptions bo;
      bo.size = big_n >= 10.0 ? opts.basis_size_large_n : opts.basis_size;
      bo.parallel = opts.parallel;
      const auto r = spectrum(spec, bo);
      for (int n = 0; n < opts.levels; ++n) {
        if (static_cast<std::size_t>(n) < r.accepted.size()) {
          m3.push_back(r.accepted[static_cast<std::size_t>(n)].energy);
        } else {
          m3.push_back(std::nullopt);
        }
      }
    }
    for (const auto& cell : table1_reference()) {
      if (std::abs(cell.big_n - big_n) > 1e-9 || !wanted(cell.method) ||
          cell.n >= opts.levels) {
        continue;
      }
      const auto& source = cell.method == Method::kM1   ? m1
                           : cell.method == Method::kM2 ? m2
                                                        : m3;
      if (source.empty()) continue;
      ComparisonRow row;
      row.big_n = big_n;
      row.n = cell.n;
      row.method = cell.method;
      row.reference = cell.value;
      row.tolerance = comparison_tolerance(cell.method);
      row.computed = source[static_cast<std::size_t>(cell.n)];
      row.note = cell.note;
      if (cell.method == Method::kM2) {
        row.note = note_join(row.note, m2_notes[static_cast<std::size_t>(cell.n)]);
      }
      if (row.computed) {
        row.abs_dev = std::abs(*row.computed - cell.value);
        row.within = row.abs_dev <= row.tolerance;
      } else {
        row.abs_dev = kInf;
        row.note = note_join(row.note, "no computed value");
      }
      rows.push_back(std::move(row));
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.big_n != b.big_n) return a.big_n < b.big_n;
    if (a.n != b.n) return a.n < b.n;
    return a.method < b.method;
  });
  return rows;
}

std::string_view to_string(Figure figure) {
  switch (figure) {
    case Figure::kFig1: return "fig1";
    case Figure::kFig2: return "fig2";
    case Figure::kFig3: return "fig3";
  }
  return "?";
}

std::optional<Figure> parse_figure(std::string_view tag) {
  if (tag == "fig1") return Figure::kFig1;
  if (tag == "fig2") return Figure::kFig2;
  if (tag == "fig3") return Figure::kFig3;
  return std::nullopt;
}

SweepRequest default_figure_sweep() {
  SweepRequest req;
  req.methods = {Method::kM0, Method::kM1};
  req.grid = {2.0, 12.0, 0.05};
  return req;
}

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

CsvTable sweep_csv(const SweepTable& table) {
  CsvTable out;
  out.header = {"method", "N", "n", "energy", "converged", "diagnostic"};
  for (const auto& s : table.series) {
    for (const auto& e : s.entries) {
      out.rows.push_back({std::string(to_string(s.method)),
                          format_number(e.big_n), std::to_string(s.level),
                          e.energy ? format_number(*e.energy) : "GAP",
                          e.converged ? "1" : "0", e.diagnostic});
    }
  }
  return out;
}

CsvTable figure_table(Figure figure, const FigureOptions& opts) {
  CsvTable out;
  switch (figure) {
    case Figure::kFig1: {
      out.header = {"N", "mntp_re", "mntp_im", "mxtp_re", "mxtp_im", "mxtp_k"};
      for (double big_n : opts.fig1_grid.points()) {
        const PotentialSpec spec(big_n);
        const auto mn = minimal_pair(spec, 1.0);
        const auto mx = select_maximal_pair(spec, 1.0);
        out.rows.push_back({format_number(big_n), format_number(mn.right.real()),
                            format_number(mn.right.imag()),
                            format_number(mx.right.real()),
                            format_number(mx.right.imag()), std::to_string(mx.k)});
      }
      break;
    }
    case Figure::kFig2:
      return sweep_csv(run_sweep(opts.fig2));
    case Figure::kFig3: {
      out.header = {"model", "lambda", "e1_re", "e1_im", "e2_re", "e2_im"};
      if (!(opts.fig3_lambda_step > 0.0) ||
          !(opts.fig3_lambda_max >= opts.fig3_lambda_min)) {
        throw DomainError("fig3: bad lambda grid");
      }
      const auto count = static_cast<long>(std::floor(
          (opts.fig3_lambda_max - opts.fig3_lambda_min) / opts.fig3_lambda_step +
          1e-9));
      for (ToyModel m : {ToyModel::kA, ToyModel::kB, ToyModel::kC, ToyModel::kD}) {
        for (long i = 0; i <= count; ++i) {
          const double lambda =
              opts.fig3_lambda_min + static_cast<double>(i) * opts.fig3_lambda_step;
          const auto [e1, e2] = toy_closed_form(m, lambda);
          out.rows.push_back({std::string(to_string(m)), format_number(lambda),
                              format_number(e1.real()), format_number(e1.imag()),
                              format_number(e2.real()), format_number(e2.imag())});
        }
      }
      break;
    }
  }
  return out;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  const auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (k > 0) out << ',';
      out << csv_field(fields[k]);
    }
    out << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
}

std::filesystem::path emit_figure_data(Figure figure,
                                       const std::filesystem::path& dir,
                                       const FigureOptions& opts) {
  const CsvTable table = figure_table(figure, opts);
  std::filesystem::create_directories(dir);
  const auto path = dir / (std::string(to_string(figure)) + ".csv");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  write_csv(out, table);
  if (!out) throw std::runtime_error("write failed: " + path.string());
  return path;
}

}  // namespace ptspec
