#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

namespace lls::cli {

template <class T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& job) {
  std::vector<std::optional<T>> slots(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i] = job(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned n = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace lls::cli
