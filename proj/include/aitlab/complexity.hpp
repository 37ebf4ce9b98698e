#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "aitlab/enumerator.hpp"

namespace aitlab {

// Process-wide memo of enumeration results. Tables are keyed by
// (kind, aux, max_len, max_steps); precision never affects them. Concurrent
// requests for the same key share one computation.
class TableStore {
public:
    static TableStore& global();

    void set_jobs(unsigned jobs);
    unsigned jobs() const;
    // Disk cache for complexity tables; nullopt disables it.
    void set_cache_dir(std::optional<std::filesystem::path> dir);
    std::optional<std::filesystem::path> cache_dir() const;

    std::shared_ptr<const ComplexityTable> table(MachineKind kind, const BitString& aux, const Budget& budget);
    std::shared_ptr<const TimeProfileTable> profile(MachineKind kind, const Budget& budget);

    template <class T>
    std::shared_ptr<const T> memo(const std::string& key, const std::function<T()>& make) {
        auto erased = memo_erased(key, [&]() -> std::shared_ptr<const void> { return std::make_shared<const T>(make()); });
        return std::static_pointer_cast<const T>(erased);
    }

    void clear();

private:
    std::shared_ptr<const void> memo_erased(const std::string& key, const std::function<std::shared_ptr<const void>()>& make);

    mutable std::mutex mu_;
    unsigned jobs_ = 1;
    std::optional<std::filesystem::path> cache_dir_;
    std::map<std::string, std::shared_future<std::shared_ptr<const void>>> memo_;
};

std::string budget_key(const Budget& b);

// Budgeted complexities on the global store; nullopt is Undefined.
std::optional<std::size_t> plain_C(const BitString& x, const Budget& b);
std::optional<std::size_t> prefix_K(const BitString& x, const Budget& b);
// Prefix machine with aux = y.
std::optional<std::size_t> cond_K(const BitString& x, const BitString& y, const Budget& b);
// Prefix machine with aux = y*, the canonical shortest prefix program for y.
std::optional<std::size_t> chaitin_K(const BitString& x, const BitString& y, const Budget& b);
std::optional<BitString> shortest_program(const BitString& x, MachineKind kind, const Budget& b);
// K of a natural number n >= 0, taken as prefix_K(gamma(n + 1)).
std::optional<std::size_t> integer_K(std::uint64_t n, const Budget& b);

}  // namespace aitlab
