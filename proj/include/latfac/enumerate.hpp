#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "latfac/bitset.hpp"
#include "latfac/error.hpp"

namespace latfac {

struct EnumerationOptions {
  std::size_t max_results = 1'000'000;
  unsigned threads = 1;
};

/// Close-by-One enumeration of every closed set of a closure operator on a
/// ground set of bit indices.
///
/// `start` must be the closure of the empty set and `candidates` the ground
/// set in ascending bit order. `close(B, j)` returns the closure of B + {j}
/// for a closed B. A child is kept only if closing did not add any index below
/// j, so each closed set is reached from exactly one parent. The result is
/// sorted, hence independent of `opts.threads`.
template <class Close>
std::vector<BitSet> enumerate_closed_sets(const BitSet& start, const std::vector<std::size_t>& candidates, Close close,
                                          const EnumerationOptions& opts = {}) {
  std::atomic<std::size_t> produced{0};
  auto emit = [&](std::vector<BitSet>& out, const BitSet& b) {
    if (produced.fetch_add(1, std::memory_order_relaxed) + 1 > opts.max_results)
      throw Error(ErrorKind::EnumerationLimitExceeded,
                  "more than " + std::to_string(opts.max_results) + " structures");
    out.push_back(b);
  };

  auto visit = [&](auto&& self, const BitSet& b, std::size_t from, std::vector<BitSet>& out) -> void {
    emit(out, b);
    for (std::size_t k = from; k < candidates.size(); ++k) {
      const std::size_t j = candidates[k];
      if (b.test(j)) continue;
      BitSet c = close(b, j);
      if (c.agrees_below(b, j)) self(self, c, k + 1, out);
    }
  };

  std::vector<BitSet> result;
  emit(result, start);

  struct Task {
    BitSet set;
    std::size_t from;
  };
  std::vector<Task> roots;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const std::size_t j = candidates[k];
    if (start.test(j)) continue;
    BitSet c = close(start, j);
    if (c.agrees_below(start, j)) roots.push_back({std::move(c), k + 1});
  }

  const unsigned workers = std::max(1U, std::min<unsigned>(opts.threads, static_cast<unsigned>(roots.size())));
  if (workers <= 1) {
    for (const Task& t : roots) visit(visit, t.set, t.from, result);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::vector<BitSet>> partial(workers);
    std::vector<std::exception_ptr> failure(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i; (i = next.fetch_add(1)) < roots.size();) visit(visit, roots[i].set, roots[i].from, partial[w]);
        } catch (...) {
          failure[w] = std::current_exception();
          next.store(roots.size());
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& f : failure)
      if (f) std::rethrow_exception(f);
    for (auto& p : partial) result.insert(result.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace latfac
