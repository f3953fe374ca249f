#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ipmu {

/// Fixed set of workers running blocking index loops.
///
/// `parallel_for(count, fn)` calls `fn(index, worker)` once for every index
/// in [0, count); `worker` is in [0, size()) and identifies per-worker scratch
/// space. The calling thread takes part as worker 0. Callers reduce results
/// by index, so outcomes never depend on the thread count.
class ThreadPool {
  public:
    explicit ThreadPool(std::size_t threads = 0);
    ~ThreadPool();

    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

    std::size_t size() const { return workers_.size() + 1; }

    void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& fn);

  private:
    void worker_loop(std::size_t worker);
    void run_chunk(std::size_t worker);

    std::vector<std::thread> workers_;
    std::mutex mutex_;
    std::condition_variable wake_;
    std::condition_variable done_;
    const std::function<void(std::size_t, std::size_t)>* task_ = nullptr;
    std::size_t count_ = 0;
    std::size_t next_ = 0;
    std::size_t busy_ = 0;
    std::size_t generation_ = 0;
    bool stop_ = false;
    std::exception_ptr error_;
};

/// Runs on `pool` when given, inline otherwise.
inline void parallel_for(ThreadPool* pool, std::size_t count,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
    if (pool == nullptr || pool->size() == 1 || count < 2) {
        for (std::size_t k = 0; k < count; ++k) {
            fn(k, 0);
        }
        return;
    }
    pool->parallel_for(count, fn);
}

std::size_t default_thread_count();

} // namespace ipmu
