#ifndef DOF_SRC_PARALLEL_HPP
#define DOF_SRC_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dof::detail {

// Runs f(i) for i in [0, n) on up to `jobs` threads. f returns false to stop
// handing out indices above i; every index below the smallest such i still runs.
template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& f) {
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> stop_at{n};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || i > stop_at.load()) return;
      try {
        if (!f(i)) {
          std::size_t cur = stop_at.load();
          while (i < cur && !stop_at.compare_exchange_weak(cur, i)) {
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        stop_at.store(0);
      }
    }
  };
  if (jobs <= 1 || n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const unsigned count = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace dof::detail

#endif  // DOF_SRC_PARALLEL_HPP
