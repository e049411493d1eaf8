#pragma once

#include <functional>
#include <vector>

namespace vhed {

// Run independent tasks on `workers` threads (1 = inline). Tasks must write
// to disjoint state; results are required to be identical for any worker
// count. The first task exception is rethrown after all threads join.
void run_tasks(std::vector<std::function<void()>> tasks, int workers);

}  // namespace vhed
