#pragma once

#include <cstdint>
#include <optional>

namespace gdyn {

/// Caps the OpenMP worker count for every parallel kernel; nullopt restores the default.
void set_thread_limit(std::optional<int> threads);
int thread_limit();

/// Stateless 64-bit mixer; used to derive independent per-task seeds from one run seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t task_seed(std::uint64_t run_seed, std::uint64_t task) {
  return splitmix64(run_seed ^ splitmix64(task + 1));
}

}  // namespace gdyn
