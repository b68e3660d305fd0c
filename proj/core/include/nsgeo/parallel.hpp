#pragma once

#include <atomic>
#include <condition_variable>
#include <functional>
#include <mutex>
#include <thread>

namespace nsgeo {

namespace detail {

/// One persistent helper thread; spawning per call is far too expensive for
/// the per-stage transform batches.
class HelperThread {
 public:
  static HelperThread& instance() {
    static HelperThread pool;
    return pool;
  }

  // Returns false when the helper is already busy (nested use); the caller
  // then runs everything inline.
  bool try_run(std::function<void()> task) {
    bool expected = false;
    if (!busy_.compare_exchange_strong(expected, true)) return false;
    {
      std::lock_guard<std::mutex> lock(m_);
      task_ = std::move(task);
      pending_ = true;
    }
    cv_.notify_one();
    return true;
  }

  void wait() {
    std::unique_lock<std::mutex> lock(m_);
    done_cv_.wait(lock, [this] { return !pending_ && !running_; });
    busy_.store(false);
  }

  ~HelperThread() {
    {
      std::lock_guard<std::mutex> lock(m_);
      stop_ = true;
    }
    cv_.notify_one();
    worker_.join();
  }

 private:
  HelperThread() : worker_([this] { loop(); }) {}

  void loop() {
    std::unique_lock<std::mutex> lock(m_);
    for (;;) {
      cv_.wait(lock, [this] { return pending_ || stop_; });
      if (stop_) return;
      pending_ = false;
      running_ = true;
      std::function<void()> task = std::move(task_);
      lock.unlock();
      task();
      lock.lock();
      running_ = false;
      done_cv_.notify_all();
    }
  }

  std::mutex m_;
  std::condition_variable cv_, done_cv_;
  std::function<void()> task_;
  bool pending_ = false, running_ = false, stop_ = false;
  std::atomic<bool> busy_{false};
  std::thread worker_;  // must start after the state above is constructed
};

}  // namespace detail

/// Runs f(0..njobs-1) across the caller and the shared helper thread. Jobs
/// must be independent. Nested calls degrade to serial execution.
template <typename F>
void par2(long njobs, F&& f) {
  if (njobs <= 1) {
    for (long i = 0; i < njobs; ++i) f(i);
    return;
  }
  std::atomic<long> next{0};
  auto& pool = detail::HelperThread::instance();
  const bool helped = pool.try_run([&] {
    for (long i; (i = next.fetch_add(1)) < njobs;) f(i);
  });
  for (long i; (i = next.fetch_add(1)) < njobs;) f(i);
  if (helped) pool.wait();
}

}  // namespace nsgeo
