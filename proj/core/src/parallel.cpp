#include "ipmu/parallel.hpp"

#include <algorithm>

namespace ipmu {

namespace {
constexpr std::size_t kGrain = 8;
}

std::size_t default_thread_count() {
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

ThreadPool::ThreadPool(std::size_t threads) {
    if (threads == 0) {
        threads = default_thread_count();
    }
    workers_.reserve(threads - 1);
    for (std::size_t w = 1; w < threads; ++w) {
        workers_.emplace_back([this, w] { worker_loop(w); });
    }
}

ThreadPool::~ThreadPool() {
    {
        std::lock_guard lock(mutex_);
        stop_ = true;
    }
    wake_.notify_all();
    for (auto& t : workers_) {
        t.join();
    }
}

void ThreadPool::run_chunk(std::size_t worker) {
    for (;;) {
        std::size_t begin = 0;
        std::size_t end = 0;
        {
            std::lock_guard lock(mutex_);
            if (next_ >= count_ || error_) {
                return;
            }
            begin = next_;
            end = std::min(count_, begin + kGrain);
            next_ = end;
        }
        try {
            for (std::size_t k = begin; k < end; ++k) {
                (*task_)(k, worker);
            }
        } catch (...) {
            std::lock_guard lock(mutex_);
            if (!error_) {
                error_ = std::current_exception();
            }
            return;
        }
    }
}

void ThreadPool::worker_loop(std::size_t worker) {
    std::size_t seen = 0;
    for (;;) {
        {
            std::unique_lock lock(mutex_);
            wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
            if (stop_) {
                return;
            }
            seen = generation_;
            ++busy_;
        }
        run_chunk(worker);
        {
            std::lock_guard lock(mutex_);
            --busy_;
        }
        done_.notify_all();
    }
}

void ThreadPool::parallel_for(std::size_t count,
                              const std::function<void(std::size_t, std::size_t)>& fn) {
    {
        std::lock_guard lock(mutex_);
        task_ = &fn;
        count_ = count;
        next_ = 0;
        error_ = nullptr;
        ++generation_;
    }
    wake_.notify_all();
    run_chunk(0);
    std::exception_ptr error;
    {
        std::unique_lock lock(mutex_);
        done_.wait(lock, [&] { return busy_ == 0 && (next_ >= count_ || error_); });
        task_ = nullptr;
        count_ = 0;
        error = error_;
        error_ = nullptr;
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace ipmu
