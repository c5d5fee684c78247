#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "csets/names.hpp"

namespace csets {

/// Query sweeps (validation grids, rasters, benchmark workloads) are data
/// parallel: every (q, n) cell is independent and oracle queries are
/// memoized behind a thread-safe table. Parallel is the OpenMP kernel;
/// Serial is the reference implementation kept for testing and as the
/// baseline of the sweep benchmark.
enum class SweepMode { Serial, Parallel };

/// Runs body(i) for i in [0, count), either serially (in order) or with the
/// OpenMP kernel. body must write results only to its own index slot.
void sweep_indexed(std::size_t count, SweepMode mode, const std::function<void(std::size_t)>& body);

/// Answers of `name` on a query batch; results are index-aligned with the
/// input, so both modes produce identical output.
std::vector<Answer> sweep_queries(const RepName& name, const std::vector<std::pair<DyadicPoint, Precision>>& queries,
                                  SweepMode mode);

/// P2 (ASCII PGM) raster of the 1-answers of a bit-valued name over
/// D^2_n within [lo, hi]^2; deterministic bytes. Row order is decreasing
/// second coordinate.
std::string raster_bits(const RepName& name, const DyadicPoint& lo, const DyadicPoint& hi,
                        Precision n, SweepMode mode);

/// d = 1 fallback: text list of positive grid points, one per line.
std::string point_list_bits(const RepName& name, const Dyadic& lo, const Dyadic& hi, Precision n,
                            SweepMode mode);

}  // namespace csets
