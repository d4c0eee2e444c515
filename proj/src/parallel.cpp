#include "clifft/parallel.hpp"

#include <cstdlib>
#include <future>
#include <thread>
#include <vector>

namespace clifft::detail {

int thread_cap() {
  const char* env = std::getenv("CLIFFT_THREADS");
  if (env == nullptr) return 1;
  const int parsed = std::atoi(env);
  if (parsed <= 1) return 1;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? parsed : std::min<int>(parsed, static_cast<int>(hw));
}

void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& fn) {
  const int cap = thread_cap();
  if (cap <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(cap, count);
  std::vector<std::future<void>> tasks;
  tasks.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    }));
  }
  for (auto& t : tasks) t.get();
}

}  // namespace clifft::detail
