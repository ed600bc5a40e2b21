#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "arctanpi/numerics/precision.hpp"

namespace arctanpi {

enum class SummationKernel { sequential, compensated, pairwise };

inline std::string_view to_string(SummationKernel k) {
  switch (k) {
    case SummationKernel::sequential: return "sequential";
    case SummationKernel::compensated: return "compensated";
    case SummationKernel::pairwise: return "pairwise";
  }
  return "unknown";
}

inline SummationKernel parse_summation_kernel(std::string_view name) {
  if (name == "sequential") return SummationKernel::sequential;
  if (name == "compensated") return SummationKernel::compensated;
  if (name == "pairwise") return SummationKernel::pairwise;
  throw InvalidArgument("unknown summation kernel '" + std::string(name) + "'");
}

namespace detail {

inline double checked(double term, std::size_t index) {
  if (!std::isfinite(term)) {
    throw InvalidArgument("summation: non-finite term at index " + std::to_string(index));
  }
  return term;
}

/// Neumaier's variant of Kahan summation. The carry also captures the
/// low-order part when the incoming term dominates the running sum.
class CompensatedAccumulator {
 public:
  void add(double term) noexcept {
    const double t = sum_ + term;
    if (std::fabs(sum_) >= std::fabs(term)) {
      carry_ += (sum_ - t) + term;
    } else {
      carry_ += (term - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Balanced reduction of partials[lo, hi) with a fixed split point.
inline double tree_reduce(std::span<const double> partials) {
  if (partials.empty()) return 0.0;
  if (partials.size() == 1) return partials.front();
  const std::size_t mid = partials.size() / 2;
  return tree_reduce(partials.first(mid)) + tree_reduce(partials.subspan(mid));
}

}  // namespace detail

/// Left-to-right sum of term(0) ... term(n-1).
template <class TermFn>
double sum_sequential_indexed(std::size_t n, TermFn&& term) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += detail::checked(term(i), i);
  return s;
}

template <class TermFn>
double sum_compensated_indexed(std::size_t n, TermFn&& term) {
  detail::CompensatedAccumulator acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(detail::checked(term(i), i));
  return acc.value();
}

/// Chunked pairwise sum. Each contiguous chunk of `chunk` terms is summed
/// left to right, then the chunk sums are combined by a balanced tree in
/// index order. The result depends only on (n, term, chunk); `threads` only
/// changes who computes which chunk.
template <class TermFn>
double sum_pairwise_indexed(std::size_t n, TermFn&& term, std::size_t chunk, unsigned threads = 1) {
  if (chunk == 0) throw InvalidArgument("sum_pairwise: chunk must be >= 1");
  if (threads == 0) throw InvalidArgument("sum_pairwise: threads must be >= 1");
  const std::size_t chunks = (n + chunk - 1) / chunk;
  std::vector<double> partials(chunks, 0.0);

  auto run = [&](std::size_t first_chunk, std::size_t last_chunk) {
    for (std::size_t c = first_chunk; c < last_chunk; ++c) {
      const std::size_t begin = c * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      double s = 0.0;
      for (std::size_t i = begin; i < end; ++i) s += detail::checked(term(i), i);
      partials[c] = s;
    }
  };

  const std::size_t workers = std::min<std::size_t>(threads, chunks);
  if (workers <= 1) {
    run(0, chunks);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t first = chunks * w / workers;
        const std::size_t last = chunks * (w + 1) / workers;
        pool.emplace_back([&, w, first, last] {
          try {
            run(first, last);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  return detail::tree_reduce(partials);
}

inline double sum_sequential(std::span<const double> terms) {
  return sum_sequential_indexed(terms.size(), [terms](std::size_t i) { return terms[i]; });
}

inline double sum_compensated(std::span<const double> terms) {
  return sum_compensated_indexed(terms.size(), [terms](std::size_t i) { return terms[i]; });
}

inline double sum_pairwise(std::span<const double> terms, std::size_t chunk, unsigned threads = 1) {
  return sum_pairwise_indexed(terms.size(), [terms](std::size_t i) { return terms[i]; }, chunk, threads);
}

/// Options for kernels that take a chunk size and parallel width.
struct SummationOptions {
  SummationKernel kernel = SummationKernel::sequential;
  std::size_t chunk = 1024;
  unsigned threads = 1;
};

template <class TermFn>
double sum_indexed(std::size_t n, TermFn&& term, const SummationOptions& opts) {
  switch (opts.kernel) {
    case SummationKernel::sequential: return sum_sequential_indexed(n, term);
    case SummationKernel::compensated: return sum_compensated_indexed(n, term);
    case SummationKernel::pairwise: return sum_pairwise_indexed(n, term, opts.chunk, opts.threads);
  }
  throw InvalidArgument("unknown summation kernel");
}

}  // namespace arctanpi
