#include <algorithm>
#include <cmath>
#include <numbers>

#include "hdr/errors.hpp"
#include "hdr/io.hpp"
#include "hdr/rng.hpp"

namespace hdr {
namespace {

double uniform_coord(Rng& rng, std::int64_t square) {
  return static_cast<double>(
      uniform_below(rng, static_cast<std::uint64_t>(square) + 1));
}

// Box-Muller on the portable uniform source, so instances match across
// standard libraries.
double standard_normal(Rng& rng) {
  double u1;
  do {
    u1 = uniform_unit(rng);
  } while (u1 <= 0.0);
  const double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

GeneratedInstance generate_instance_detailed(InstanceKind kind, int n,
                                             std::int64_t square,
                                             std::uint64_t seed) {
  if (n < 3) throw ContractViolation("n must be >= 3");
  if (square < 1) throw ContractViolation("square must be >= 1");
  GeneratedInstance out;
  std::vector<Point> pts(n);
  const auto side = static_cast<double>(square);
  std::string name;
  if (kind == InstanceKind::kUniform) {
    Rng rng(derive_seed({seed, 0x75}));
    for (auto& p : pts) {
      p.x = uniform_coord(rng, square);
      p.y = uniform_coord(rng, square);
    }
    name = "E" + std::to_string(n) + "." + std::to_string(seed);
  } else {
    Rng rng(derive_seed({seed, 0x63}));
    const int centers = (n + 99) / 100;
    out.sigma = side / 100.0;
    out.centers.resize(centers);
    for (auto& c : out.centers) {
      c.x = uniform_coord(rng, square);
      c.y = uniform_coord(rng, square);
    }
    out.assignment.resize(n);
    for (int i = 0; i < n; ++i) {
      const int c = i % centers;
      out.assignment[i] = c;
      const double dx = standard_normal(rng) * out.sigma;
      const double dy = standard_normal(rng) * out.sigma;
      pts[i].x = std::clamp(std::round(out.centers[c].x + dx), 0.0, side);
      pts[i].y = std::clamp(std::round(out.centers[c].y + dy), 0.0, side);
    }
    name = "C" + std::to_string(n) + "." + std::to_string(seed);
  }
  out.instance = Instance(std::move(pts), Metric::kEuc2D, {}, 0, name);
  return out;
}

Instance generate_instance(InstanceKind kind, int n, std::int64_t square,
                           std::uint64_t seed) {
  return generate_instance_detailed(kind, n, square, seed).instance;
}

}  // namespace hdr
