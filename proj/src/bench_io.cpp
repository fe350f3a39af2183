#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "nmps/bench.hpp"
#include "nmps/errors.hpp"
#include "nmps/format.hpp"

namespace nmps {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_real(const std::string& text) {
  // strtod rather than stod: subnormal values must load without an exception.
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) throw std::invalid_argument(text);
  return v;
}

std::size_t parse_count(const std::string& text) {
  std::size_t used = 0;
  const unsigned long long v = std::stoull(text, &used);
  if (used != text.size()) throw std::invalid_argument(text);
  return static_cast<std::size_t>(v);
}

std::string tau_label(double tau) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", tau);
  return buf;
}

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                               "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace

void write_results_csv(std::ostream& out, std::span<const RunRecord> records) {
  out << "problem,strategy,n,fe,iters,stop,f0,f_final\n";
  for (const auto& r : records) {
    out << r.problem << ',' << r.strategy << ',' << r.n << ',' << r.fe << ',' << r.iterations
        << ',' << (r.failed ? std::string("error") : std::string(stop_label(r.stop))) << ','
        << format_real(r.f0) << ',' << format_real(r.f_final) << '\n';
  }
}

void write_history_csv(std::ostream& out, std::span<const RunRecord> records) {
  out << "problem,strategy,fe,best_f\n";
  for (const auto& r : records) {
    for (const auto& [fe, f] : r.best_so_far) {
      out << r.problem << ',' << r.strategy << ',' << fe << ',' << format_real(f) << '\n';
    }
  }
}

void write_profile_csv(std::ostream& out, std::span<const ProfileCurve> curves) {
  out << "strategy,tau,alpha,rho\n";
  for (const auto& c : curves) {
    for (const auto& [alpha, rho] : c.points) {
      out << c.strategy << ',' << format_real(c.tau) << ',' << format_real(alpha) << ','
          << format_real(rho) << '\n';
    }
  }
}

void write_unsolved_csv(std::ostream& out, std::span<const RatioMatrix> ratios) {
  out << "tau,problem\n";
  for (const auto& m : ratios) {
    for (const auto& p : m.dropped) out << format_real(m.tau) << ',' << p << '\n';
  }
}

void write_profile_svg(std::ostream& out, std::span<const ProfileCurve> curves) {
  std::vector<double> taus;
  std::vector<std::string> strategies;
  double max_log_alpha = 1.0;
  for (const auto& c : curves) {
    if (std::find(taus.begin(), taus.end(), c.tau) == taus.end()) taus.push_back(c.tau);
    if (std::find(strategies.begin(), strategies.end(), c.strategy) == strategies.end()) {
      strategies.push_back(c.strategy);
    }
    for (const auto& pt : c.points) max_log_alpha = std::max(max_log_alpha, std::log2(pt.first));
  }
  max_log_alpha = std::ceil(max_log_alpha);

  constexpr double kPanelW = 420, kPanelH = 320, kLeft = 55, kRight = 15, kTop = 35,
                   kBottom = 50;
  const double plot_w = kPanelW - kLeft - kRight;
  const double plot_h = kPanelH - kTop - kBottom;
  const double width = kPanelW * static_cast<double>(std::max<std::size_t>(taus.size(), 1));
  const double legend_h = 22.0 * static_cast<double>(strategies.size()) + 10.0;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << kPanelH + legend_h << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t panel = 0; panel < taus.size(); ++panel) {
    const double x0 = kPanelW * static_cast<double>(panel) + kLeft;
    const double y0 = kTop;
    const auto px = [&](double alpha) { return x0 + plot_w * std::log2(alpha) / max_log_alpha; };
    const auto py = [&](double rho) { return y0 + plot_h * (1.0 - rho); };

    out << "<g>\n";
    out << "<text x=\"" << x0 + plot_w / 2 << "\" y=\"20\" text-anchor=\"middle\">tau = "
        << tau_label(taus[panel]) << "</text>\n";
    out << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << plot_w << "\" height=\""
        << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= static_cast<int>(max_log_alpha); ++tick) {
      const double x = x0 + plot_w * tick / max_log_alpha;
      out << "<text x=\"" << x << "\" y=\"" << y0 + plot_h + 15
          << "\" text-anchor=\"middle\">" << tick << "</text>\n";
    }
    for (int tick = 0; tick <= 4; ++tick) {
      const double rho = tick / 4.0;
      out << "<text x=\"" << x0 - 6 << "\" y=\"" << py(rho) + 4 << "\" text-anchor=\"end\">"
          << rho << "</text>\n";
    }
    out << "<text x=\"" << x0 + plot_w / 2 << "\" y=\"" << y0 + plot_h + 35
        << "\" text-anchor=\"middle\">alpha (log2)</text>\n";
    out << "<text x=\"" << x0 - 40 << "\" y=\"" << y0 + plot_h / 2 << "\" transform=\"rotate(-90 "
        << x0 - 40 << ' ' << y0 + plot_h / 2 << ")\" text-anchor=\"middle\">rho</text>\n";

    for (const auto& c : curves) {
      if (c.tau != taus[panel] || c.points.empty()) continue;
      const auto si = static_cast<std::size_t>(
          std::find(strategies.begin(), strategies.end(), c.strategy) - strategies.begin());
      out << "<polyline fill=\"none\" stroke-width=\"2\" stroke=\"" << kColors[si % 8]
          << "\" points=\"";
      double prev_rho = c.points.front().second;
      out << px(c.points.front().first) << ',' << py(prev_rho);
      for (std::size_t i = 1; i < c.points.size(); ++i) {
        const auto [alpha, rho] = c.points[i];
        out << ' ' << px(alpha) << ',' << py(prev_rho) << ' ' << px(alpha) << ',' << py(rho);
        prev_rho = rho;
      }
      out << "\"/>\n";
    }
    out << "</g>\n";
  }
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    const double y = kPanelH + 12.0 + 22.0 * static_cast<double>(s);
    out << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + 30 << "\" y2=\""
        << y << "\" stroke-width=\"2\" stroke=\"" << kColors[s % 8] << "\"/>\n";
    out << "<text x=\"" << kLeft + 38 << "\" y=\"" << y + 4 << "\">" << strategies[s]
        << "</text>\n";
  }
  out << "</svg>\n";
}

std::vector<RunRecord> read_records(std::istream& results, std::istream& history) {
  std::vector<RunRecord> records;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  std::string line;
  std::size_t line_no = 0;

  const auto malformed = [&](const std::string& what) {
    return IoError("malformed " + what + " at line " + std::to_string(line_no) + ": " + line);
  };

  if (!std::getline(results, line) || line != "problem,strategy,n,fe,iters,stop,f0,f_final") {
    throw IoError("results CSV has an unexpected header");
  }
  line_no = 1;
  while (std::getline(results, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 8) throw malformed("results row");
    RunRecord r;
    try {
      r.problem = f[0];
      r.strategy = f[1];
      r.n = parse_count(f[2]);
      r.fe = parse_count(f[3]);
      r.iterations = parse_count(f[4]);
      if (f[5] == "error") {
        r.failed = true;
      } else {
        r.stop = stop_from_label(f[5]);
      }
      r.f0 = parse_real(f[6]);
      r.f_final = parse_real(f[7]);
    } catch (const std::exception&) {
      throw malformed("results row");
    }
    index[{r.problem, r.strategy}] = records.size();
    records.push_back(std::move(r));
  }

  line_no = 0;
  if (!std::getline(history, line) || line != "problem,strategy,fe,best_f") {
    throw IoError("history CSV has an unexpected header");
  }
  line_no = 1;
  while (std::getline(history, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 4) throw malformed("history row");
    const auto it = index.find({f[0], f[1]});
    if (it == index.end()) throw malformed("history row (unknown run)");
    try {
      records[it->second].best_so_far.emplace_back(parse_count(f[2]), parse_real(f[3]));
    } catch (const std::exception&) {
      throw malformed("history row");
    }
  }
  return records;
}

std::string history_path_for(const std::string& results_path) {
  std::string stem = results_path;
  if (stem.size() >= 4 && stem.compare(stem.size() - 4, 4, ".csv") == 0) {
    stem.resize(stem.size() - 4);
  }
  return stem + ".history.csv";
}

void save_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string load_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace nmps
