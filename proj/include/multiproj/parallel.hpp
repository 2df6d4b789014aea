#ifndef MULTIPROJ_PARALLEL_HPP
#define MULTIPROJ_PARALLEL_HPP

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "multiproj/errors.hpp"

namespace multiproj {

struct ExecConfig {
  unsigned workers = 1;
};

/// Fixed-size worker pool. parallel_for splits [0, count) into `workers`
/// contiguous chunks of size ceil(count / workers); each chunk runs on one
/// thread and the caller blocks until all complete. Chunk boundaries depend
/// only on (count, workers), so floating-point evaluation order inside a
/// chunk is fixed and results are reproducible.
class ThreadPool {
 public:
  explicit ThreadPool(unsigned workers);
  ~ThreadPool();

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  unsigned workers() const { return workers_; }

  /// body(begin, end) is invoked once per nonempty chunk.
  void parallel_for(std::size_t count,
                    const std::function<void(std::size_t, std::size_t)>& body);

 private:
  void worker_loop();

  unsigned workers_;
  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  const std::function<void(std::size_t, std::size_t)>* body_ = nullptr;
  std::vector<std::pair<std::size_t, std::size_t>> chunks_;
  std::size_t next_chunk_ = 0;
  std::size_t pending_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
};

/// Runs body over [0, count) using pool chunking, or sequentially as one
/// chunk when pool is null or has a single worker.
void parallel_for(ThreadPool* pool, std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body);

/// Worker count from the MULTIPROJ_WORKERS environment variable, default 1.
unsigned default_workers();

}  // namespace multiproj

#endif
