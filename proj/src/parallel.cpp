#include "rtshuffle/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace rtshuffle {

unsigned worker_count() {
  if (const char* env = std::getenv("RTSHUFFLE_THREADS")) {
    try {
      const int value = std::stoi(env);
      if (value > 0) {
        return static_cast<unsigned>(value);
      }
    } catch (const std::exception&) {
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(worker_count(), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      body(i);
    }
    return;
  }
  constexpr std::size_t kBlock = 16;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (;;) {
        const std::size_t begin = next.fetch_add(kBlock);
        if (begin >= count) {
          return;
        }
        const std::size_t end = std::min(count, begin + kBlock);
        try {
          for (std::size_t i = begin; i < end; ++i) {
            body(i);
          }
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) {
            failure = std::current_exception();
          }
          next.store(count);
          return;
        }
      }
    });
  }
  threads.clear();
  if (failure) {
    std::rethrow_exception(failure);
  }
}

}  // namespace rtshuffle
