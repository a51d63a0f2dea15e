#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptspec/hobasis.hpp"
#include "ptspec/shooting.hpp"

namespace ptspec {

/// M0: closed form with the minimal pair, M1: closed form with the maximal
/// pair, M2: shooting, M3: oscillator basis.
enum class Method { kM0, kM1, kM2, kM3 };

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view tag);

struct NGrid {
  double start = 2.0;
  double stop = 12.0;
  double step = 0.5;

  /// start + i * step for every i with the point not past stop (1e-9 slack).
  std::vector<double> points() const;
  void validate() const;
};

struct SweepRequest {
  std::vector<Method> methods{Method::kM1};
  NGrid grid;
  int levels = 5;
  ShootingOptions shooting;
  /// Derive the shooting scan ceiling from the semiclassical levels at each N.
  bool auto_e_max = true;
  BasisOptions basis;
  bool parallel = true;

  void validate() const;
};

struct SweepEntry {
  double big_n = 0.0;
  /// Empty for a gap.
  std::optional<double> energy;
  bool converged = false;
  std::string diagnostic;
};

struct SweepSeries {
  Method method = Method::kM1;
  int level = 0;
  std::vector<SweepEntry> entries;
};

struct SweepTable {
  std::vector<double> grid;
  std::vector<SweepSeries> series;

  const SweepSeries* find(Method method, int level) const;
};

SweepTable run_sweep(const SweepRequest& req);

/// N values where the slope of E_level(N) jumps by more than 5x the median
/// absolute second difference over the preceding 10 points.  Needs a grid
/// step of at most 0.05.
std::vector<double> detect_isolated_points(const SweepTable& table,
                                           Method method, int level);

struct LevelSpread {
  double energy = 0.0;
  /// max - min over the runs, infinite when a run has no partner.
  double spread = 0.0;
  bool converged = false;
};

struct NullSpectrumPoint {
  double big_n = 0.0;
  std::vector<LevelSpread> shooting;
  std::vector<LevelSpread> basis;
  int shooting_converged = 0;
  int basis_converged = 0;
};

struct NullSpectrumOptions {
  std::vector<double> d_values{8.0, 10.0, 12.0};
  std::vector<std::size_t> sizes{200, 400, 800};
  int levels = 5;
  double tolerance = 1e-2;
  bool include_basis = true;
  bool parallel = true;
};

struct NullSpectrumReport {
  double n_star = 0.0;
  double window = 0.0;
  /// N* - window, N*, N* + window.
  std::vector<NullSpectrumPoint> points;
};

NullSpectrumReport null_spectrum_report(double n_star, double window,
                                        const NullSpectrumOptions& opts = {});

struct ReferenceCell {
  Method method = Method::kM1;
  double big_n = 0.0;
  int n = 0;
  double value = 0.0;
  std::string note;
};

/// Published reference values, parsed from the embedded data file.
const std::vector<ReferenceCell>& table1_reference();

struct ComparisonRow {
  double big_n = 0.0;
  int n = 0;
  Method method = Method::kM1;
  std::optional<double> computed;
  double reference = 0.0;
  double abs_dev = 0.0;
  double tolerance = 0.0;
  bool within = false;
  std::string note;
};

struct CompareOptions {
  std::vector<double> n_values{2.5, 3.0, 3.8, 4.2, 5.0, 6.0, 6.8, 10.0};
  std::vector<Method> methods{Method::kM1, Method::kM2, Method::kM3};
  int levels = 5;
  std::size_t basis_size = 400;
  /// Basis size used at N >= 10.
  std::size_t basis_size_large_n = 800;
  bool parallel = true;
};

/// Tolerances: 5e-4 for M1, 1e-2 for M2, 2e-2 for M3.
double comparison_tolerance(Method method);

std::vector<ComparisonRow> table1_compare(const CompareOptions& opts = {});

enum class Figure { kFig1, kFig2, kFig3 };

std::string_view to_string(Figure figure);
std::optional<Figure> parse_figure(std::string_view tag);

/// M0 and M1 on 2:12:0.05.
SweepRequest default_figure_sweep();

struct FigureOptions {
  NGrid fig1_grid{2.0, 12.0, 0.05};
  SweepRequest fig2 = default_figure_sweep();
  double fig3_lambda_min = -3.0;
  double fig3_lambda_max = 5.0;
  double fig3_lambda_step = 0.01;
};

/// Column header and rows as already formatted CSV lines.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable figure_table(Figure figure, const FigureOptions& opts = {});
CsvTable sweep_csv(const SweepTable& table);

/// Writes <dir>/<fig>.csv and returns the path.
std::filesystem::path emit_figure_data(Figure figure,
                                       const std::filesystem::path& dir,
                                       const FigureOptions& opts = {});

/// 17 significant digits ("%.17g").
std::string format_number(double v);

void write_csv(std::ostream& out, const CsvTable& table);

}  // namespace ptspec
