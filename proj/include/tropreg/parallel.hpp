#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace tropreg {

/// Worker count: TROPICAL_REGIONS_THREADS if set and positive, else `requested`, else hardware concurrency.
inline unsigned resolve_threads(unsigned requested = 0)
{
    if (const char* env = std::getenv("TROPICAL_REGIONS_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) {
                return static_cast<unsigned>(v);
            }
        } catch (const std::exception&) {
        }
    }
    if (requested > 0) {
        return requested;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/**
 * Split [0, count) into contiguous chunks, run `body(begin, end, acc)` on each
 * with a fresh accumulator, and return the accumulators in chunk order.
 * Callers merge them; with an order-independent merge the result does not
 * depend on the thread count.
 */
template <class Acc, class Body>
std::vector<Acc> parallel_chunks(std::size_t count, unsigned threads, Body body)
{
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
    std::vector<Acc> accs(workers);
    if (workers == 1) {
        body(std::size_t{0}, count, accs[0]);
        return accs;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = count * w / workers;
        const std::size_t end = count * (w + 1) / workers;
        pool.emplace_back([&, w, begin, end] {
            try {
                body(begin, end, accs[w]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return accs;
}

} // namespace tropreg
