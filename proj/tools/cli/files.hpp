#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace kwsum::cli {

// Throws Error(kIo).
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

// File name up to the first '.', so "d061.ET3Rank.txt" and "d061.A.txt" both
// map to "d061".
std::string file_stem(const std::filesystem::path& path);
// Second dot-separated component of the file name, or "" if there is none
// besides the extension ("d061.ET3Rank.txt" -> "ET3Rank").
std::string file_tag(const std::filesystem::path& path);

// Regular, non-hidden files of a directory sorted by name; a plain file is
// returned as itself. Throws Error(kIo) when the path does not exist.
std::vector<std::filesystem::path> list_files(const std::filesystem::path& path);

// Runs f(0..n-1) on up to `jobs` threads. The first exception is rethrown
// after all workers stop.
template <typename F>
void parallel_for(std::size_t n, std::size_t jobs, F&& f) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace kwsum::cli
