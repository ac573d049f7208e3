#ifndef CRATERRIM_PIPELINE_HPP
#define CRATERRIM_PIPELINE_HPP

#include "craterrim/crater.hpp"
#include "craterrim/raster.hpp"
#include "craterrim/rim_trace.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace craterrim {

struct ExtractOutcome {
  std::optional<RimPolygon> rim;
  std::string error;
};

/// Called from worker threads with the crater index and its pipeline steps.
using StepSink = std::function<void(std::size_t, const CraterRecord&, const RimRegionSteps&)>;

/// Runs extract_rim for every crater on `jobs` threads. Results are indexed
/// like the input regardless of completion order.
std::vector<ExtractOutcome> extract_batch(const DemRaster& dem, const SlopeRaster& slope,
                                          const std::vector<CraterRecord>& craters, const TraceParams& params,
                                          unsigned jobs = 1, const StepSink& sink = {});

/// Runs fn(i) for i in [0, n) on up to `jobs` threads.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace craterrim

#endif  // CRATERRIM_PIPELINE_HPP
