#include "aitlab/complexity.hpp"

#include <algorithm>
#include <system_error>

#include "aitlab/table_cache.hpp"

namespace aitlab {

TableStore& TableStore::global() {
    static TableStore store;
    return store;
}

void TableStore::set_jobs(unsigned jobs) {
    std::lock_guard lock(mu_);
    jobs_ = std::max(1U, jobs);
}

unsigned TableStore::jobs() const {
    std::lock_guard lock(mu_);
    return jobs_;
}

void TableStore::set_cache_dir(std::optional<std::filesystem::path> dir) {
    std::lock_guard lock(mu_);
    cache_dir_ = std::move(dir);
}

std::optional<std::filesystem::path> TableStore::cache_dir() const {
    std::lock_guard lock(mu_);
    return cache_dir_;
}

void TableStore::clear() {
    std::lock_guard lock(mu_);
    memo_.clear();
}

std::shared_ptr<const void> TableStore::memo_erased(const std::string& key,
                                                    const std::function<std::shared_ptr<const void>()>& make) {
    std::promise<std::shared_ptr<const void>> promise;
    std::shared_future<std::shared_ptr<const void>> fut;
    bool owner = false;
    {
        std::lock_guard lock(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) {
            fut = it->second;
        } else {
            fut = promise.get_future().share();
            memo_.emplace(key, fut);
            owner = true;
        }
    }
    if (owner) {
        try {
            promise.set_value(make());
        } catch (...) {
            promise.set_exception(std::current_exception());
            std::lock_guard lock(mu_);
            memo_.erase(key);
        }
    }
    return fut.get();
}

std::shared_ptr<const ComplexityTable> TableStore::table(MachineKind kind, const BitString& aux, const Budget& budget) {
    const std::string key = "table|" + std::string(to_string(kind)) + "|" + aux.str() + "|" + budget_key(budget);
    return memo<ComplexityTable>(key, [&]() {
        const auto dir = cache_dir();
        if (dir) {
            const auto path = *dir / cache_file_name(kind, aux, budget);
            std::error_code ec;
            if (std::filesystem::exists(path, ec)) {
                try {
                    ComplexityTable t = read_table_file(path);
                    if (t.kind == kind && t.aux == aux && t.budget.max_len == budget.max_len &&
                        t.budget.max_steps == budget.max_steps) {
                        t.budget = budget;
                        return t;
                    }
                } catch (const CacheError&) {
                    // Unreadable files are recomputed and replaced.
                }
            }
        }
        ComplexityTable t = complexity_table(kind, aux, budget, jobs());
        if (dir) {
            try {
                write_table_file(*dir / cache_file_name(kind, aux, budget), t);
            } catch (const std::exception&) {
                // A read-only cache only costs time.
            }
        }
        return t;
    });
}

std::shared_ptr<const TimeProfileTable> TableStore::profile(MachineKind kind, const Budget& budget) {
    const std::string key = "profile|" + std::string(to_string(kind)) + "|" + budget_key(budget);
    return memo<TimeProfileTable>(key, [&]() { return time_profile_table(kind, BitString{}, budget, jobs()); });
}

std::string budget_key(const Budget& b) { return std::to_string(b.max_len) + "," + std::to_string(b.max_steps); }

namespace {

std::optional<std::size_t> lookup(MachineKind kind, const BitString& aux, const BitString& x, const Budget& b) {
    auto t = TableStore::global().table(kind, aux, b);
    const TableEntry* e = t->find(x);
    if (e == nullptr) return std::nullopt;
    return e->min_len;
}

}  // namespace

std::optional<std::size_t> plain_C(const BitString& x, const Budget& b) { return lookup(MachineKind::plain, {}, x, b); }

std::optional<std::size_t> prefix_K(const BitString& x, const Budget& b) { return lookup(MachineKind::prefix, {}, x, b); }

std::optional<std::size_t> cond_K(const BitString& x, const BitString& y, const Budget& b) {
    return lookup(MachineKind::prefix, y, x, b);
}

std::optional<std::size_t> chaitin_K(const BitString& x, const BitString& y, const Budget& b) {
    auto ystar = shortest_program(y, MachineKind::prefix, b);
    if (!ystar) return std::nullopt;
    return lookup(MachineKind::prefix, *ystar, x, b);
}

std::optional<BitString> shortest_program(const BitString& x, MachineKind kind, const Budget& b) {
    auto t = TableStore::global().table(kind, {}, b);
    const TableEntry* e = t->find(x);
    if (e == nullptr) return std::nullopt;
    return e->witness;
}

std::optional<std::size_t> integer_K(std::uint64_t n, const Budget& b) { return prefix_K(gamma_encode(n + 1), b); }

}  // namespace aitlab
