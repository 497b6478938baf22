#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tmh {

// TMH_THREADS, else the hardware concurrency
inline unsigned thread_count()
{
    if (const char* env = std::getenv("TMH_THREADS")) {
        int n = std::atoi(env);
        if (n > 0)
            return unsigned(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// runs fn(i) for i in [0,n); the first exception is rethrown
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn)
{
    unsigned workers = std::min<std::size_t>(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex mu;
    auto work = [&] {
        for (std::size_t i; (i = next++) < n;) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!error)
                    error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(work);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

}  // namespace tmh
