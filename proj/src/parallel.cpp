#include "multiproj/parallel.hpp"

#include <cstdlib>
#include <string>

namespace multiproj {

ThreadPool::ThreadPool(unsigned workers) : workers_(workers) {
  if (workers == 0) throw ConfigError("worker count must be >= 1");
  threads_.reserve(workers_);
  for (unsigned i = 0; i < workers_; ++i)
    threads_.emplace_back([this] { worker_loop(); });
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard lock(mutex_);
    stop_ = true;
  }
  wake_.notify_all();
  for (auto& t : threads_) t.join();
}

void ThreadPool::worker_loop() {
  std::uint64_t seen_generation = 0;
  std::unique_lock lock(mutex_);
  for (;;) {
    wake_.wait(lock, [&] {
      return stop_ || (generation_ != seen_generation && next_chunk_ < chunks_.size());
    });
    if (stop_) return;
    while (next_chunk_ < chunks_.size()) {
      auto [begin, end] = chunks_[next_chunk_++];
      const auto* body = body_;
      lock.unlock();
      (*body)(begin, end);
      lock.lock();
      if (--pending_ == 0) done_.notify_all();
    }
    seen_generation = generation_;
  }
}

void ThreadPool::parallel_for(
    std::size_t count,
    const std::function<void(std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  std::size_t chunk = (count + workers_ - 1) / workers_;
  std::unique_lock lock(mutex_);
  chunks_.clear();
  for (std::size_t begin = 0; begin < count; begin += chunk)
    chunks_.emplace_back(begin, std::min(begin + chunk, count));
  body_ = &body;
  next_chunk_ = 0;
  pending_ = chunks_.size();
  ++generation_;
  wake_.notify_all();
  done_.wait(lock, [&] { return pending_ == 0; });
  body_ = nullptr;
}

void parallel_for(ThreadPool* pool, std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  if (pool == nullptr || pool->workers() == 1) {
    body(0, count);
    return;
  }
  pool->parallel_for(count, body);
}

unsigned default_workers() {
  const char* env = std::getenv("MULTIPROJ_WORKERS");
  if (env == nullptr) return 1;
  int v = std::atoi(env);
  return v >= 1 ? static_cast<unsigned>(v) : 1;
}

}  // namespace multiproj
