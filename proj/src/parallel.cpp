#include "cptk/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace cptk {

std::size_t thread_count() {
    if (const char* env = std::getenv("CPTK_THREADS")) {
        try {
            long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    std::size_t workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t k = 0; k < n; ++k) fn(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::size_t error_at = n;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t k; !failed && (k = next++) < n;) {
            try {
                fn(k);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (k < error_at) {
                    error = std::current_exception();
                    error_at = k;
                }
                failed = true;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t + 1 < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace cptk
