#pragma once

// Data-parallel inner loops. Every parallel kernel has a serial twin with the
// same signature; the serial versions are the reference the tests and the
// benchmark compare against.
//
// Reductions are blocked: the index range is cut into fixed-size blocks that
// do not depend on the thread count, each block is summed left to right, and
// the block partials are summed left to right afterwards. Results are
// therefore bit-identical for any number of threads.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dnb::kernels {

inline constexpr std::size_t kBlock = 256;

inline void set_num_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(std::max(1, n));
#else
  (void)n;
#endif
}

inline int num_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace detail {

// Exceptions must not cross an OpenMP region boundary; the first one thrown
// inside a region is parked here and rethrown by the calling thread.
class ExceptionSlot {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
      std::lock_guard<std::mutex> lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

}  // namespace detail

/// Σ term(i) over i ∈ [0, n), blocked and deterministic.
template <class Term>
double sum(std::size_t n, Term&& term) {
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  detail::ExceptionSlot slot;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    slot.run([&] {
      const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
      const std::size_t hi = std::min(n, lo + kBlock);
      double s = 0.0;
      for (std::size_t i = lo; i < hi; ++i) s += term(i);
      partial[static_cast<std::size_t>(b)] = s;
    });
  }
  slot.rethrow();
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

template <class Term>
double sum_serial(std::size_t n, Term&& term) {
  double total = 0.0;
  for (std::size_t lo = 0; lo < n; lo += kBlock) {
    const std::size_t hi = std::min(n, lo + kBlock);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    total += s;
  }
  return total;
}

/// max term(i) over i ∈ [0, n); -inf for n == 0. NaN terms are ignored.
template <class Term>
double max(std::size_t n, Term&& term) {
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, -std::numeric_limits<double>::infinity());
  detail::ExceptionSlot slot;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    slot.run([&] {
      const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
      const std::size_t hi = std::min(n, lo + kBlock);
      double m = -std::numeric_limits<double>::infinity();
      for (std::size_t i = lo; i < hi; ++i) m = std::fmax(m, term(i));
      partial[static_cast<std::size_t>(b)] = m;
    });
  }
  slot.rethrow();
  double m = -std::numeric_limits<double>::infinity();
  for (double v : partial) m = std::fmax(m, v);
  return m;
}

template <class Term>
double max_serial(std::size_t n, Term&& term) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, term(i));
  return m;
}

/// out[i] = f(i) for i ∈ [0, n).
template <class T, class F>
std::vector<T> map(std::size_t n, F&& f) {
  std::vector<T> out(n);
  detail::ExceptionSlot slot;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    slot.run([&] { out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i)); });
  }
  slot.rethrow();
  return out;
}

template <class T, class F>
std::vector<T> map_serial(std::size_t n, F&& f) {
  std::vector<T> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
  return out;
}

/// log Σ exp(log_term(i)), stable for terms far outside double range.
/// -inf terms contribute nothing; returns -inf when every term is -inf.
template <class LogTerm>
double log_sum_exp(std::size_t n, LogTerm&& log_term) {
  std::vector<double> logs = map<double>(n, log_term);
  double top = -std::numeric_limits<double>::infinity();
  for (double v : logs) top = std::fmax(top, v);
  if (!std::isfinite(top)) return top;
  const double s = sum(n, [&](std::size_t i) { return std::exp(logs[i] - top); });
  return top + std::log(s);
}

template <class LogTerm>
double log_sum_exp_serial(std::size_t n, LogTerm&& log_term) {
  std::vector<double> logs = map_serial<double>(n, log_term);
  double top = -std::numeric_limits<double>::infinity();
  for (double v : logs) top = std::fmax(top, v);
  if (!std::isfinite(top)) return top;
  const double s = sum_serial(n, [&](std::size_t i) { return std::exp(logs[i] - top); });
  return top + std::log(s);
}

}  // namespace dnb::kernels
