#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "hdr/errors.hpp"
#include "hdr/io.hpp"

namespace hdr {

double gap_percent(double value, Cost reference) {
  const auto ref = static_cast<double>(reference);
  return (value - ref) / ref * 100.0;
}

std::string format_gap(double percent) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f%%", percent);
  return buf;
}

ResultsReport report_results(std::vector<RunRecord> runs,
                             std::optional<Cost> reference) {
  if (runs.empty()) throw ContractViolation("report needs at least one run");
  if (reference && *reference <= 0) {
    throw ContractViolation("reference cost must be positive");
  }
  ResultsReport r;
  r.runs = std::move(runs);
  r.reference = reference;
  r.best = r.runs.front().cost;
  double sum = 0.0;
  for (const auto& run : r.runs) {
    r.best = std::min(r.best, run.cost);
    sum += static_cast<double>(run.cost);
    r.total_seconds += run.seconds;
  }
  r.average = sum / static_cast<double>(r.runs.size());
  if (reference) {
    r.best_gap = gap_percent(static_cast<double>(r.best), *reference);
    r.average_gap = gap_percent(r.average, *reference);
    for (const auto& run : r.runs) {
      r.run_gaps.push_back(gap_percent(static_cast<double>(run.cost), *reference));
    }
  } else {
    r.run_gaps.assign(r.runs.size(), std::nullopt);
  }
  return r;
}

std::string ResultsReport::to_structured() const {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& run = runs[i];
    os << "run instance=" << run.instance << " seed=" << run.seed
       << " cost=" << run.cost;
    if (run_gaps[i]) os << " gap=" << format_gap(*run_gaps[i]);
    os << " seconds=" << run.seconds << " rounds=" << run.rounds
       << " levels=" << run.levels << '\n';
  }
  os << "summary runs=" << runs.size() << " best=" << best
     << " average=" << std::setprecision(1) << average;
  if (reference) {
    os << " reference=" << *reference << " best_gap=" << format_gap(*best_gap)
       << " average_gap=" << format_gap(*average_gap);
  }
  os << " time=" << std::setprecision(3) << total_seconds << '\n';
  return os.str();
}

std::string ResultsReport::to_table() const {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Run", "Instance", "Seed", "Cost", "Gap", "Time (s)"});
  auto secs = [](double s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << s;
    return os.str();
  };
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& run = runs[i];
    rows.push_back({std::to_string(i + 1), run.instance,
                    std::to_string(run.seed), std::to_string(run.cost),
                    run_gaps[i] ? format_gap(*run_gaps[i]) : "-",
                    secs(run.seconds)});
  }
  std::ostringstream avg;
  avg << std::fixed << std::setprecision(1) << average;
  rows.push_back({"Best", "", "", std::to_string(best),
                  best_gap ? format_gap(*best_gap) : "-", ""});
  rows.push_back({"Average", "", "", avg.str(),
                  average_gap ? format_gap(*average_gap) : "-",
                  secs(total_seconds)});

  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) os << "  ";
      // Text columns left aligned, numbers right aligned.
      if (c == 1) {
        os << std::left << std::setw(static_cast<int>(width[c])) << row[c];
      } else {
        os << std::right << std::setw(static_cast<int>(width[c])) << row[c];
      }
    }
    os << '\n';
  }
  return os.str();
}

RunRecord make_run_record(const std::string& instance, std::uint64_t seed,
                          const SolveResult& result) {
  RunRecord r;
  r.instance = instance;
  r.seed = seed;
  r.cost = result.tour.cost();
  r.seconds = result.stats.total_seconds;
  r.rounds = result.stats.total_rounds;
  r.levels = result.stats.max_level + 1;
  return r;
}

std::string render_svg(const Instance& inst, const Tour& tour) {
  double lo_x = inst.coord(0).x, hi_x = lo_x, lo_y = inst.coord(0).y, hi_y = lo_y;
  for (const Point& p : inst.coords()) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  const double side = std::max({hi_x - lo_x, hi_y - lo_y, 1.0});
  const double stroke = side / 1000.0;
  std::ostringstream os;
  os << std::setprecision(10);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << lo_x << ' '
     << lo_y << ' ' << side << ' ' << side << "\">\n";
  os << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"" << stroke
     << "\" points=\"";
  for (int i = 0; i < tour.size(); ++i) {
    const Point& p = inst.coord(tour.at(i));
    if (i > 0) os << ' ';
    // Flip y so the picture matches the usual axis orientation.
    os << p.x << ',' << (lo_y + hi_y - p.y);
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

}  // namespace hdr
