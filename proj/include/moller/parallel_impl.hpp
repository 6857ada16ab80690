#ifndef MOLLER_PARALLEL_IMPL_HPP
#define MOLLER_PARALLEL_IMPL_HPP

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace moller {

template <class In, class F>
auto parallel_mode_map(const std::vector<In>& inputs, F&& fn)
    -> std::vector<decltype(fn(inputs[0]))> {
    using Out = decltype(fn(inputs[0]));
    std::vector<Out> results(inputs.size());
    if (inputs.empty()) return results;

    const int workers = std::min<int>(worker_count(), static_cast<int>(inputs.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < inputs.size(); ++i) results[i] = fn(inputs[i]);
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= inputs.size()) return;
            try {
                results[i] = fn(inputs[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

} // namespace moller

#endif
