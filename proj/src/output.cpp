#include "seqclass/output.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace seqclass {

namespace fs = std::filesystem;

const std::array<const char*, 9>& CurveRow::columns() {
  static const std::array<const char*, 9> c = {"sweep_value", "renyi_term", "kappa", "mu", "nu",
                                               "e_fix", "e_seq", "e_semi1", "e_semi2"};
  return c;
}

std::array<double, 9> CurveRow::values() const {
  return {sweep_value, renyi_term, kappa, mu, nu, e_fix, e_seq, e_semi1, e_semi2};
}

CurveRow CurveRow::from_values(const std::array<double, 9>& v) {
  return CurveRow{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]};
}

CurveRow CurveRow::from_report(double sweep_value, const ExponentReport& r) {
  return CurveRow{sweep_value, r.renyi_term, r.kappa, r.mu, r.nu, r.e_fix, r.e_seq, r.e_semi1, r.e_semi2};
}

std::string format_real(double x) {
  if (std::isinf(x) && x > 0) return "inf";
  if (std::isinf(x)) return "-inf";
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_real_token(const std::string& s) {
  if (s == "inf") return kInf;
  if (s == "-inf") return -kInf;
  double x = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) throw std::invalid_argument("bad numeric token '" + s + "'");
  return x;
}

std::string curve_csv(const std::vector<CurveRow>& rows) {
  std::string out;
  const auto& cols = CurveRow::columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += cols[i];
  }
  out += '\n';
  for (const auto& r : rows) {
    const auto v = r.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ',';
      out += format_real(v[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<CurveRow> parse_curve_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) throw std::invalid_argument("empty curve file");
  std::string expect;
  for (const char* c : CurveRow::columns()) expect += std::string(expect.empty() ? "" : ",") + c;
  if (line != expect) throw std::invalid_argument("unexpected curve header '" + line + "'");
  std::vector<CurveRow> rows;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::array<double, 9> v{};
    std::stringstream ls(line);
    std::string tok;
    std::size_t i = 0;
    while (std::getline(ls, tok, ',')) {
      if (i >= v.size()) throw std::invalid_argument("too many fields");
      v[i++] = parse_real_token(tok);
    }
    if (i != v.size()) throw std::invalid_argument("too few fields");
    rows.push_back(CurveRow::from_values(v));
  }
  return rows;
}

std::string curve_svg(const std::vector<CurveRow>& rows, const std::string& x_label, bool log_x) {
  const double W = 800, H = 600, left = 80, right = 170, top = 40, bottom = 70;
  const double pw = W - left - right, ph = H - top - bottom;
  auto xmap = [&](double x) { return log_x ? std::log10(x) : x; };

  double x0 = kInf, x1 = -kInf, y0 = 0, y1 = -kInf;
  for (const auto& r : rows) {
    const auto v = r.values();
    if (!(log_x && v[0] <= 0)) {
      x0 = std::min(x0, xmap(v[0]));
      x1 = std::max(x1, xmap(v[0]));
    }
    for (std::size_t i = 1; i < v.size(); ++i)
      if (std::isfinite(v[i])) y1 = std::max(y1, v[i]);
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1;
  if (x1 <= x0) x1 = x0 + 1;
  if (!std::isfinite(y1) || y1 <= y0) y1 = y0 + 1;
  y1 *= 1.05;
  auto px = [&](double x) { return left + (xmap(x) - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return top + ph - (y - y0) / (y1 - y0) * ph; };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b",
                                 "#e377c2", "#7f7f7f", "#bcbd22"};
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  s << "<g stroke=\"black\" stroke-width=\"1\">\n";
  s << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph
    << "\"/>\n";
  s << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph << "\"/>\n";
  s << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int k = 0; k <= 5; ++k) {
    const double fx = x0 + (x1 - x0) * k / 5.0;
    const double xv = log_x ? std::pow(10.0, fx) : fx;
    const double X = left + pw * k / 5.0;
    char lab[32];
    std::snprintf(lab, sizeof lab, "%.3g", xv);
    s << "<line x1=\"" << X << "\" y1=\"" << top + ph << "\" x2=\"" << X << "\" y2=\"" << top + ph + 5
      << "\" stroke=\"black\"/>";
    s << "<text x=\"" << X << "\" y=\"" << top + ph + 20 << "\" text-anchor=\"middle\">" << lab << "</text>\n";
    const double yv = y0 + (y1 - y0) * k / 5.0;
    const double Y = py(yv);
    std::snprintf(lab, sizeof lab, "%.3g", yv);
    s << "<line x1=\"" << left - 5 << "\" y1=\"" << Y << "\" x2=\"" << left << "\" y2=\"" << Y
      << "\" stroke=\"black\"/>";
    s << "<text x=\"" << left - 8 << "\" y=\"" << Y + 4 << "\" text-anchor=\"end\">" << lab << "</text>\n";
  }
  s << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 20 << "\" text-anchor=\"middle\">" << x_label
    << (log_x ? " (log scale)" : "") << "</text>\n";
  s << "<text x=\"20\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
    << top + ph / 2 << ")\">exponent (bits)</text>\n";

  const auto& cols = CurveRow::columns();
  for (std::size_t c = 1; c < cols.size(); ++c) {
    const char* color = colors[(c - 1) % 8];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& r : rows) {
      const auto v = r.values();
      if (!std::isfinite(v[c]) || (log_x && v[0] <= 0)) continue;
      s << (first ? "" : " ") << px(v[0]) << "," << py(v[c]);
      first = false;
    }
    s << "\"/>\n";
    const double ly = top + 10 + 20.0 * static_cast<double>(c - 1);
    s << "<line x1=\"" << W - right + 15 << "\" y1=\"" << ly << "\" x2=\"" << W - right + 40 << "\" y2=\"" << ly
      << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>";
    s << "<text x=\"" << W - right + 46 << "\" y=\"" << ly + 4 << "\">" << cols[c] << "</text>\n";
  }
  s << "</g>\n</svg>\n";
  return s.str();
}

namespace {

nlohmann::ordered_json num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

}  // namespace

std::string report_json(const ExponentReport& r, const ProblemInstance& inst, const SearchConfig& cfg) {
  nlohmann::ordered_json j;
  j["renyi_term"] = num(r.renyi_term);
  j["kappa"] = num(r.kappa);
  j["mu"] = num(r.mu);
  j["nu"] = num(r.nu);
  j["e_fix"] = num(r.e_fix);
  j["e_seq"] = num(r.e_seq);
  j["e_semi1"] = num(r.e_semi1);
  j["e_semi2"] = num(r.e_semi2);
  j["kappa_status"] = to_string(r.kappa_status);
  nlohmann::ordered_json in;
  in["P0"] = inst.P0.to_vector();
  in["P1"] = inst.P1.to_vector();
  in["alpha"] = inst.alpha;
  in["beta"] = inst.beta;
  in["epsilon"] = inst.eps.value();
  in["lambda"] = inst.lambda.describe();
  j["instance"] = in;
  nlohmann::ordered_json so;
  so["coarse_m"] = cfg.coarse_m;
  so["refine_rounds"] = cfg.refine_rounds;
  so["refine_factor"] = cfg.refine_factor;
  long res = cfg.coarse_m;
  for (int i = 0; i < cfg.refine_rounds; ++i) res *= cfg.refine_factor;
  so["resolution"] = 1.0 / static_cast<double>(res);
  j["solver"] = so;
  return j.dump(2) + "\n";
}

std::string trials_csv(const std::vector<TrialReport>& reports) {
  std::string out =
      "setup,n,trials,trials_theta0,trials_theta1,errors_theta0,errors_theta1,mean_tau_theta0,mean_tau_theta1,"
      "ci95_tau_theta0,ci95_tau_theta1,mean_tau,ci95_tau,capped\n";
  for (const auto& r : reports) {
    out += to_string(r.setup) + "," + std::to_string(r.n) + "," + std::to_string(r.trials) + "," +
           std::to_string(r.trials_theta0) + "," + std::to_string(r.trials_theta1) + "," +
           std::to_string(r.errors_theta0) + "," + std::to_string(r.errors_theta1) + "," +
           format_real(r.mean_tau_theta0) + "," + format_real(r.mean_tau_theta1) + "," +
           format_real(r.ci95_tau_theta0) + "," + format_real(r.ci95_tau_theta1) + "," +
           format_real(r.mean_tau()) + "," + format_real(r.ci95_tau) + "," + std::to_string(r.capped) + "\n";
  }
  return out;
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
}

void write_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename into '" + path + "'");
  }
}

}  // namespace seqclass
