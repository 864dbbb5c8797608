#include "fqs/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fqs {

void SerialMap::for_each(std::size_t n, const std::function<void(std::size_t)>& task) const {
    for (std::size_t i = 0; i < n; ++i) task(i);
}

ThreadMap::ThreadMap(unsigned threads) : threads_(threads) {
    if (threads_ == 0) threads_ = std::max(1u, std::thread::hardware_concurrency());
}

void ThreadMap::for_each(std::size_t n, const std::function<void(std::size_t)>& task) const {
    const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads_, n));
    if (count <= 1) {
        SerialMap{}.for_each(n, task);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::size_t failed_index = n;
    std::exception_ptr failure;
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (i < failed_index) {
                    failed_index = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(count);
        for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
}

const ParallelMap& serial_map() {
    static const SerialMap instance;
    return instance;
}

}  // namespace fqs
