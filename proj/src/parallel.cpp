#include "spacelike/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spacelike {

int default_thread_count() {
    if (const char* env = std::getenv("SPACELIKE_SURF_THREADS")) {
        int n = 0;
        const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), n);
        if (ec == std::errc() && n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads) {
    if (threads <= 0) threads = default_thread_count();
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);

    std::mutex mtx;
    std::size_t failed_index = n;
    std::exception_ptr failure;
    const auto run = [&](std::size_t i) {
        try {
            fn(i);
        } catch (...) {
            std::lock_guard lock(mtx);
            if (i < failed_index) {
                failed_index = i;
                failure = std::current_exception();
            }
        }
    };

    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) run(i);
    } else {
        std::atomic<std::size_t> next{0};
        constexpr std::size_t chunk = 16;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t begin = next.fetch_add(chunk);
                    if (begin >= n) return;
                    const std::size_t end = std::min(n, begin + chunk);
                    for (std::size_t i = begin; i < end; ++i) run(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
}

} // namespace spacelike
