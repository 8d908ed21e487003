#pragma once

#include <functional>

namespace isocone {

// Process-wide worker count for replicate loops; 0 means all cores. Results
// are independent of the setting because every replicate owns its RNG stream
// and outputs land in index-addressed slots.
void set_default_threads(int threads);
int default_threads();

void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace isocone
