#pragma once

#include "hdr/config.hpp"
#include "hdr/instance.hpp"
#include "hdr/rng.hpp"
#include "hdr/tour.hpp"

namespace hdr {

/// Sampled-insertion construction followed by windowed 2-opt.
///
/// A random subset of ceil(n^e) units is linked into a nearest-neighbor
/// tour, every other unit is appended behind its closest sample, and each
/// span of `window_subpaths` consecutive sample-to-sample sub-paths is
/// polished once with two_opt_window. Forced paths are placed as atomic
/// units, so the result always contains every forced edge.
Tour build_initial_tour(const Instance& inst, const InitConfig& cfg, Rng& rng);

/// First-improvement 2-opt over the path at positions
/// [window_start, window_start + window_len) (cyclic). Only edges inside the
/// window are exchanged, forced edges are never removed, and the window's two
/// end vertices stay in place. Runs until no improving exchange is left.
///
/// Returns the total cost decrease (0 means the tour is untouched).
/// Throws ContractViolation if window_len < 4 or exceeds the tour size.
Cost two_opt_window(const Instance& inst, Tour& t, int window_start,
                    int window_len);

}  // namespace hdr
