#include "ppmsync/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ppmsync {

unsigned worker_count()
{
    if (const char* env = std::getenv("PPMSYNC_THREADS")) {
        try {
            const auto v = std::stoul(env);
            if (v > 0) return static_cast<unsigned>(std::min<unsigned long>(v, 256));
        } catch (const std::exception&) {
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

void parallel_chunks(std::size_t n, std::size_t chunks,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body)
{
    chunks = std::max<std::size_t>(1, std::min(chunks, n));
    if (n == 0) return;
    auto bounds = [&](std::size_t c) { return n * c / chunks; };
    if (chunks == 1) {
        body(0, n, 0);
        return;
    }
    std::exception_ptr failure;
    std::mutex guard;
    std::vector<std::jthread> pool;
    pool.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        pool.emplace_back([&, c] {
            try {
                body(bounds(c), bounds(c + 1), c);
            } catch (...) {
                std::lock_guard lock(guard);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

} // namespace ppmsync
