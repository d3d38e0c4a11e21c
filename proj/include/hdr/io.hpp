#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hdr/hierarchy.hpp"
#include "hdr/instance.hpp"
#include "hdr/tour.hpp"

namespace hdr {

// ---- TSPLIB instances ------------------------------------------------------

/// Reads a TSPLIB TSP file with EUC_2D or CEIL_2D weights.
/// Throws UnsupportedFormat for other TYPE / EDGE_WEIGHT_TYPE values and
/// MalformedFile for syntax errors or a DIMENSION / coordinate mismatch.
/// A missing file is reported as MalformedFile too.
Instance parse_tsplib(const std::filesystem::path& path);
Instance parse_tsplib_text(const std::string& text);

/// Writes NAME, TYPE, DIMENSION, EDGE_WEIGHT_TYPE, NODE_COORD_SECTION, EOF.
/// Coordinates use shortest round-trip formatting. Forced edges are not
/// representable and raise ContractViolation.
void write_tsplib(const std::filesystem::path& path, const Instance& inst);
std::string format_tsplib(const Instance& inst);

// ---- TSPLIB tours ----------------------------------------------------------

/// Reads a TOUR_SECTION (1-based ids, terminated by -1 or EOF) and checks it
/// is a permutation of 0..n-1. Throws MalformedFile otherwise.
std::vector<Vertex> parse_tour(const std::filesystem::path& path, int n);
std::vector<Vertex> parse_tour_text(const std::string& text, int n);

void write_tour(const std::filesystem::path& path, const Tour& tour,
                const std::string& name = "tour");
std::string format_tour(const Tour& tour, const std::string& name = "tour");

// ---- Generators ------------------------------------------------------------

enum class InstanceKind { kUniform, kClustered };

struct GeneratedInstance {
  Instance instance;
  std::vector<Point> centers;       // clustered only
  std::vector<int> assignment;      // clustered only: center index per point
  double sigma = 0.0;               // clustered only
};

/// Integer coordinates on [0, square]^2, deterministic per seed.
/// Clustered: ceil(n/100) uniform centers, round-robin assignment, Gaussian
/// offsets with sigma = square/100, clamped to the square.
GeneratedInstance generate_instance_detailed(InstanceKind kind, int n,
                                             std::int64_t square,
                                             std::uint64_t seed);
Instance generate_instance(InstanceKind kind, int n, std::int64_t square,
                           std::uint64_t seed);

// ---- Reports ---------------------------------------------------------------

struct RunRecord {
  std::string instance;
  std::uint64_t seed = 0;
  Cost cost = 0;
  double seconds = 0.0;
  std::int64_t rounds = 0;
  int levels = 0;
};

struct ResultsReport {
  std::vector<RunRecord> runs;
  std::optional<Cost> reference;
  Cost best = 0;
  double average = 0.0;
  std::optional<double> best_gap;     // percent
  std::optional<double> average_gap;  // percent
  std::vector<std::optional<double>> run_gaps;
  double total_seconds = 0.0;

  /// key = value records: one per run plus a summary line.
  std::string to_structured() const;
  /// Aligned table with one row per run and Best / Average rows.
  std::string to_table() const;
};

/// (value - reference) / reference in percent.
double gap_percent(double value, Cost reference);

/// Formats a percentage with 4 decimals and a trailing '%'.
std::string format_gap(double percent);

/// Throws ContractViolation on an empty run list or a nonpositive reference.
ResultsReport report_results(std::vector<RunRecord> runs,
                             std::optional<Cost> reference = std::nullopt);

RunRecord make_run_record(const std::string& instance, std::uint64_t seed,
                          const SolveResult& result);

/// Straight-segment SVG of a tour, viewport = bounding square of the points.
std::string render_svg(const Instance& inst, const Tour& tour);

}  // namespace hdr
