#include "curvetk/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace curvetk {

unsigned default_worker_count() {
    if (const char* env = std::getenv("CURVETK_WORKERS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

void parallel_chunks(uint64_t nchunks, unsigned workers, const std::function<void(uint64_t)>& body) {
    if (workers == 0) workers = default_worker_count();
    if (workers <= 1 || nchunks <= 1) {
        for (uint64_t c = 0; c < nchunks; ++c) body(c);
        return;
    }
    std::atomic<uint64_t> next{0};
    auto run = [&]() {
        for (;;) {
            uint64_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            body(c);
        }
    };
    std::vector<std::thread> pool;
    unsigned nt = static_cast<unsigned>(std::min<uint64_t>(workers, nchunks));
    pool.reserve(nt);
    for (unsigned i = 0; i < nt; ++i) pool.emplace_back(run);
    for (auto& t : pool) t.join();
}

uint64_t parallel_chunks_until(uint64_t nchunks, unsigned workers,
                               const std::function<bool(uint64_t)>& body) {
    if (workers == 0) workers = default_worker_count();
    if (workers <= 1) {
        for (uint64_t c = 0; c < nchunks; ++c)
            if (body(c)) return c;
        return nchunks;
    }
    for (uint64_t base = 0; base < nchunks; base += workers) {
        uint64_t wave = std::min<uint64_t>(workers, nchunks - base);
        std::vector<char> hit(wave, 0);
        std::vector<std::thread> pool;
        pool.reserve(wave);
        for (uint64_t i = 0; i < wave; ++i)
            pool.emplace_back([&, i]() { hit[i] = body(base + i) ? 1 : 0; });
        for (auto& t : pool) t.join();
        for (uint64_t i = 0; i < wave; ++i)
            if (hit[i]) return base + i;
    }
    return nchunks;
}

}  // namespace curvetk
