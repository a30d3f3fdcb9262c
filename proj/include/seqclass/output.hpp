#pragma once

#include "seqclass/config.hpp"
#include "seqclass/exponents.hpp"
#include "seqclass/montecarlo.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqclass {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CurveRow {
  double sweep_value = 0;
  double renyi_term = 0;
  double kappa = 0;
  double mu = 0;
  double nu = 0;
  double e_fix = 0;
  double e_seq = 0;
  double e_semi1 = 0;
  double e_semi2 = 0;

  static const std::array<const char*, 9>& columns();
  std::array<double, 9> values() const;
  static CurveRow from_values(const std::array<double, 9>& v);
  static CurveRow from_report(double sweep_value, const ExponentReport& r);
};

// %.17g, "inf" for +infinity.
std::string format_real(double x);
double parse_real_token(const std::string& s);

std::string curve_csv(const std::vector<CurveRow>& rows);
std::vector<CurveRow> parse_curve_csv(const std::string& text);

// One polyline per column; non-finite points are skipped.
std::string curve_svg(const std::vector<CurveRow>& rows, const std::string& x_label, bool log_x);

std::string report_json(const ExponentReport& r, const ProblemInstance& inst, const SearchConfig& cfg);

std::string trials_csv(const std::vector<TrialReport>& reports);

// temp file in the same directory, then rename
void write_atomic(const std::string& path, const std::string& content);
void ensure_directory(const std::string& dir);

}  // namespace seqclass
