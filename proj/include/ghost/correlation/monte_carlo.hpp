#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ghost/correlation/correlation_map.hpp"
#include "ghost/source/speckle.hpp"

namespace ghost {

struct McOptions {
  /// 0 picks hardware_concurrency().
  unsigned workers = 0;
};

namespace detail {

/// Realizations per accumulation block. Fixed so that the merge order never depends on threading.
inline constexpr std::size_t kMcBlock = 64;

struct McSums {
  std::vector<double> prod;
  std::vector<double> prod_sq;
  std::vector<double> i1;
  std::vector<double> i2;

  McSums(std::size_t rows, std::size_t cols)
      : prod(rows * cols), prod_sq(rows * cols), i1(rows), i2(cols) {}

  void add(const McSums& o) {
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] += o.prod[i];
    for (std::size_t i = 0; i < prod_sq.size(); ++i) prod_sq[i] += o.prod_sq[i];
    for (std::size_t i = 0; i < i1.size(); ++i) i1[i] += o.i1[i];
    for (std::size_t i = 0; i < i2.size(); ++i) i2[i] += o.i2[i];
  }
};

/// Merges finished blocks strictly in block order with a binary carry stack, so the summation tree
/// depends only on the number of blocks. Holds at most O(workers + log n_blocks) partial sums.
class OrderedReducer {
 public:
  OrderedReducer(std::size_t n_blocks, std::size_t window) : n_blocks_(n_blocks), window_(window) {}

  /// Blocks until block b is close enough to the merge front to be worth computing.
  void wait_turn(std::size_t b) {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return b < next_ + window_; });
  }

  void submit(std::size_t b, McSums sums) {
    std::lock_guard lock(mutex_);
    pending_.emplace(b, std::move(sums));
    for (auto it = pending_.find(next_); it != pending_.end(); it = pending_.find(next_)) {
      stack_.emplace_back(0, std::move(it->second));
      pending_.erase(it);
      ++next_;
      while (stack_.size() >= 2 && stack_[stack_.size() - 1].first == stack_[stack_.size() - 2].first) {
        auto right = std::move(stack_.back());
        stack_.pop_back();
        stack_.back().second.add(right.second);
        ++stack_.back().first;
      }
    }
    cv_.notify_all();
  }

  McSums result() {
    std::lock_guard lock(mutex_);
    if (next_ != n_blocks_ || stack_.empty()) throw std::logic_error("OrderedReducer: incomplete");
    McSums total = std::move(stack_.back().second);
    for (std::size_t i = stack_.size() - 1; i-- > 0;) {
      stack_[i].second.add(total);
      total = std::move(stack_[i].second);
    }
    return total;
  }

 private:
  std::size_t n_blocks_;
  std::size_t window_;
  std::size_t next_ = 0;
  std::map<std::size_t, McSums> pending_;
  std::vector<std::pair<unsigned, McSums>> stack_;
  std::mutex mutex_;
  std::condition_variable cv_;
};

}  // namespace detail

/// Monte Carlo estimate of <I1 I2>, <I1>, <I2> over config.n_realizations speckle realizations.
/// Bit-identical for a fixed (seed, n_realizations) whatever the worker count.
inline CorrelationMap accumulate_mc(const EnsembleConfig& config, const ArmPath& arm1,
                                    const ArmPath& arm2, const DetectorLayout& layout,
                                    McOptions options = {}) {
  config.validate();
  const auto& grid = config.grid;
  for (auto k : layout.x1) {
    if (k >= grid.n()) throw DomainError("accumulate_mc: x1 index outside grid");
  }
  for (auto k : layout.x2) {
    if (k >= grid.n()) throw DomainError("accumulate_mc: x2 index outside grid");
  }
  const double lambda = config.geometry.wavelength;
  const PreparedArm p1(arm1, grid, lambda);
  const PreparedArm p2(arm2, grid, lambda);
  const std::size_t rows = layout.rows();
  const std::size_t cols = layout.cols();
  const std::size_t n_real = config.n_realizations;
  const std::size_t n_blocks = (n_real + detail::kMcBlock - 1) / detail::kMcBlock;

  unsigned workers = options.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_blocks));
  detail::OrderedReducer reducer(n_blocks, 2 * static_cast<std::size_t>(std::max(1u, workers)));
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    std::vector<cplx> e1(grid.n());
    std::vector<cplx> e2(grid.n());
    std::vector<double> i1(rows);
    std::vector<double> i2(cols);
    for (std::size_t b = next++; b < n_blocks; b = next++) {
      reducer.wait_turn(b);
      detail::McSums s(rows, cols);
      const std::size_t end = std::min(n_real, (b + 1) * detail::kMcBlock);
      for (std::size_t k = b * detail::kMcBlock; k < end; ++k) {
        fill_source_field(config, k, e1);
        std::copy(e1.begin(), e1.end(), e2.begin());
        p1.apply(e1);
        p2.apply(e2);
        if (layout.bucket) {
          double sum = 0.0;
          for (const auto& v : e1) sum += std::norm(v);
          i1[0] = sum * grid.dx();
        } else {
          for (std::size_t r = 0; r < rows; ++r) i1[r] = std::norm(e1[layout.x1[r]]);
        }
        for (std::size_t c = 0; c < cols; ++c) i2[c] = std::norm(e2[layout.x2[c]]);
        for (std::size_t r = 0; r < rows; ++r) {
          s.i1[r] += i1[r];
          double* prod = s.prod.data() + r * cols;
          double* prod_sq = s.prod_sq.data() + r * cols;
          for (std::size_t c = 0; c < cols; ++c) {
            const double p = i1[r] * i2[c];
            prod[c] += p;
            prod_sq[c] += p * p;
          }
        }
        for (std::size_t c = 0; c < cols; ++c) s.i2[c] += i2[c];
      }
      reducer.submit(b, std::move(s));
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  const detail::McSums total = reducer.result();
  const double inv = 1.0 / static_cast<double>(n_real);
  CorrelationMap map;
  map.grid = grid;
  map.layout = layout;
  map.n_accumulated = n_real;
  map.g2_raw.resize(rows * cols);
  map.g2_sq.resize(rows * cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    map.g2_raw[i] = total.prod[i] * inv;
    map.g2_sq[i] = total.prod_sq[i] * inv;
  }
  map.i1_mean.resize(rows);
  map.i2_mean.resize(cols);
  for (std::size_t r = 0; r < rows; ++r) map.i1_mean[r] = total.i1[r] * inv;
  for (std::size_t c = 0; c < cols; ++c) map.i2_mean[c] = total.i2[c] * inv;
  map.degenerate = std::any_of(map.i1_mean.begin(), map.i1_mean.end(), [](double v) { return !(v > 0.0); }) ||
                   std::any_of(map.i2_mean.begin(), map.i2_mean.end(), [](double v) { return !(v > 0.0); });
  return map;
}

}  // namespace ghost
