#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

#include "contactqm/error.hpp"

// Grid sweeps. parallel_map must give results bitwise identical to serial_map;
// every grid point is an independent pure call, so only the schedule differs.
namespace contactqm::sweep {

std::vector<double> linspace(double lo, double hi, std::size_t n);

template <class T>
std::vector<T> serial_map(std::size_t n, const std::function<T(std::size_t)>& f) {
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
  return out;
}

// The first failing index (lowest) is rethrown, matching the serial loop.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& f, int jobs) {
  if (jobs < 1) throw Error(ErrorCode::InvalidArgument, "jobs must be positive");
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (long long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

template <class T>
std::vector<T> map(std::size_t n, const std::function<T(std::size_t)>& f, int jobs) {
  return jobs <= 1 ? serial_map<T>(n, f) : parallel_map<T>(n, f, jobs);
}

}  // namespace contactqm::sweep
