#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

#include <umfb/polynomial.hpp>

namespace umfb::detail
{

// Runs work(k, collector) for k in [0, count) on `threads` workers, item k
// going to worker k % threads, and merges the per-worker collectors. The
// caller's canonical sort makes the result independent of the split.
template <typename Work>
TermCollector parallel_collect(std::size_t count, unsigned threads, Work &&work)
{
    if (threads <= 1 || count <= 1) {
        TermCollector collector;
        for (std::size_t k = 0; k < count; ++k) {
            work(k, collector);
        }
        return collector;
    }
    if (threads > count) {
        threads = static_cast<unsigned>(count);
    }
    std::vector<TermCollector> partial(threads);
    std::vector<std::exception_ptr> failures(threads);
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t k = t; k < count; k += threads) {
                        work(k, partial[t]);
                    }
                } catch (...) {
                    failures[t] = std::current_exception();
                }
            });
        }
    }
    for (const auto &f : failures) {
        if (f) {
            std::rethrow_exception(f);
        }
    }
    for (unsigned t = 1; t < threads; ++t) {
        partial[0].merge(std::move(partial[t]));
    }
    return std::move(partial[0]);
}

} // namespace umfb::detail
