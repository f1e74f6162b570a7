// Runs independent tasks on up to `jobs` threads. Each task writes its own
// slot, so results do not depend on the schedule. The first failure in task
// order is rethrown.
#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace msrs {

template <class Task>
void run_tasks(std::vector<Task>& tasks, int jobs) {
  std::vector<std::exception_ptr> errs(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t k = next++;
      if (k >= tasks.size()) return;
      try {
        tasks[k]();
      } catch (...) {
        errs[k] = std::current_exception();
      }
    }
  };
  int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> ts;
    for (int t = 0; t < nthreads; ++t) ts.emplace_back(worker);
    for (auto& t : ts) t.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace msrs
