#pragma once

#include <cstddef>
#include <functional>

namespace fqs {

/// Runs independent tasks indexed 0..n-1. Implementations may run them in any
/// order and on any thread; callers write results into per-index slots so that
/// reductions stay deterministic.
class ParallelMap {
   public:
    virtual ~ParallelMap() = default;
    virtual unsigned workers() const noexcept = 0;
    /// Returns after every task finished. If tasks throw, the exception of the
    /// lowest failing index is rethrown.
    virtual void for_each(std::size_t n, const std::function<void(std::size_t)>& task) const = 0;
};

class SerialMap final : public ParallelMap {
   public:
    unsigned workers() const noexcept override { return 1; }
    void for_each(std::size_t n, const std::function<void(std::size_t)>& task) const override;
};

class ThreadMap final : public ParallelMap {
   public:
    /// threads == 0 selects std::thread::hardware_concurrency().
    explicit ThreadMap(unsigned threads);
    unsigned workers() const noexcept override { return threads_; }
    void for_each(std::size_t n, const std::function<void(std::size_t)>& task) const override;

   private:
    unsigned threads_;
};

const ParallelMap& serial_map();

}  // namespace fqs
