#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace attobeat::io {

template <class T>
void ordered_parallel_map(std::size_t n, int workers, const std::function<T(std::size_t)>& fn,
                          const std::function<void(std::size_t, T&)>& sink) {
  if (n == 0) return;
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      T v = fn(i);
      sink(i, v);
    }
    return;
  }
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::mutex m;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  // bounded look-ahead keeps memory flat for large results
  const std::size_t window = static_cast<std::size_t>(workers) * 4;
  std::size_t emitted = 0;

  auto work = [&] {
    for (;;) {
      std::size_t i;
      {
        std::unique_lock lk(m);
        cv.wait(lk, [&] { return stop || next.load() < emitted + window || next.load() >= n; });
        if (stop || next.load() >= n) return;
        i = next++;
      }
      std::optional<T> v;
      std::exception_ptr err;
      try {
        v.emplace(fn(i));
      } catch (...) {
        err = std::current_exception();
      }
      {
        std::lock_guard lk(m);
        slots[i] = std::move(v);
        errors[i] = err;
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  const std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  for (std::size_t w = 0; w < nw; ++w) pool.emplace_back(work);

  std::exception_ptr failure;
  while (emitted < n && !failure) {
    std::optional<T> v;
    {
      std::unique_lock lk(m);
      cv.wait(lk, [&] { return slots[emitted].has_value() || errors[emitted]; });
      if (errors[emitted]) {
        failure = errors[emitted];
        stop = true;
      } else {
        v = std::move(slots[emitted]);
        slots[emitted].reset();
      }
    }
    if (failure) break;
    try {
      sink(emitted, *v);
    } catch (...) {
      failure = std::current_exception();
      std::lock_guard lk(m);
      stop = true;
    }
    {
      std::lock_guard lk(m);
      ++emitted;
    }
    cv.notify_all();
  }
  cv.notify_all();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace attobeat::io
