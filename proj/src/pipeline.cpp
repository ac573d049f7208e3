#include "craterrim/pipeline.hpp"

#include <atomic>
#include <exception>
#include <thread>

namespace craterrim {

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::vector<ExtractOutcome> extract_batch(const DemRaster& dem, const SlopeRaster& slope,
                                          const std::vector<CraterRecord>& craters, const TraceParams& params,
                                          unsigned jobs, const StepSink& sink) {
  std::vector<ExtractOutcome> out(craters.size());
  parallel_for(craters.size(), jobs, [&](std::size_t i) {
    try {
      RimRegionSteps steps;
      out[i].rim = extract_rim(dem, slope, craters[i], params, sink ? &steps : nullptr);
      if (sink) sink(i, craters[i], steps);
    } catch (const std::exception& e) {
      out[i].error = e.what();
    }
  });
  return out;
}

}  // namespace craterrim
