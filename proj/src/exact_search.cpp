#include <algorithm>
#include <bit>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_set>

#include "shadowpath/search.hpp"

namespace shadowpath {

namespace {

constexpr std::uint32_t kRoot = std::numeric_limits<std::uint32_t>::max();

// Flat storage of search states. Each state owns `stride` words: the
// exposed set, followed by the visited set when the key is the visited set.
class StatePool {
public:
    StatePool(std::size_t n, ExactStateKey key)
        : n_(n), words_(RegionSet::word_count(n)), key_(key),
          stride_(key == ExactStateKey::VisitedSet ? 2 * words_ : words_) {}

    std::size_t size() const { return regions_.size(); }
    RegionId region(std::uint32_t id) const { return regions_[id]; }
    std::uint32_t parent(std::uint32_t id) const { return parents_[id]; }

    const std::uint64_t* exposed(std::uint32_t id) const { return data_.data() + id * stride_; }
    const std::uint64_t* key_words(std::uint32_t id) const {
        return key_ == ExactStateKey::VisitedSet ? exposed(id) + words_ : exposed(id);
    }
    std::size_t key_len() const { return words_; }

    // Appends a state and returns its id; words are filled by the caller.
    std::uint32_t append(RegionId region, std::uint32_t parent) {
        regions_.push_back(region);
        parents_.push_back(parent);
        data_.resize(data_.size() + stride_, 0);
        return static_cast<std::uint32_t>(regions_.size() - 1);
    }
    std::uint64_t* mutable_words(std::uint32_t id) { return data_.data() + id * stride_; }

    void pop_back() {
        regions_.pop_back();
        parents_.pop_back();
        data_.resize(data_.size() - stride_);
    }

    std::size_t n() const { return n_; }
    std::size_t words() const { return words_; }

private:
    std::size_t n_;
    std::size_t words_;
    ExactStateKey key_;
    std::size_t stride_;
    std::vector<RegionId> regions_;
    std::vector<std::uint32_t> parents_;
    std::vector<std::uint64_t> data_;
};

struct StateHash {
    const StatePool* pool;
    std::size_t operator()(std::uint32_t id) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ pool->region(id);
        const auto* w = pool->key_words(id);
        for (std::size_t i = 0; i < pool->key_len(); ++i) {
            h ^= w[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

struct StateEq {
    const StatePool* pool;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
        return pool->region(a) == pool->region(b) &&
               std::equal(pool->key_words(a), pool->key_words(a) + pool->key_len(), pool->key_words(b));
    }
};

std::uint32_t popcount_words(const std::uint64_t* w, std::size_t len) {
    std::uint32_t c = 0;
    for (std::size_t i = 0; i < len; ++i) c += static_cast<std::uint32_t>(std::popcount(w[i]));
    return c;
}

std::uint32_t count_new_words(const std::uint64_t* have, std::span<const std::uint64_t> add) {
    std::uint32_t c = 0;
    for (std::size_t i = 0; i < add.size(); ++i) c += static_cast<std::uint32_t>(std::popcount(add[i] & ~have[i]));
    return c;
}

}  // namespace

// Cost of a state is |exposed set|, a function of the key, so a state's g
// never improves after generation and a plain seen-set suffices. The
// heuristic (goal exposures not yet seen) is consistent: entering c raises
// cost by |E(c) \ exposed| and lowers h by at most that much.
PlanResult plan_exact(const TraversabilityGraph& graph, const ExposureField& field, RegionId start, RegionId goal,
                      ExactOptions options) {
    const auto n = graph.size();
    if (field.size() != n) throw std::invalid_argument("exposure field size does not match graph");
    if (start >= n) throw std::out_of_range("start region " + std::to_string(start) + " out of range");
    if (goal >= n) throw std::out_of_range("goal region " + std::to_string(goal) + " out of range");
    if (options.node_budget == 0) throw std::invalid_argument("node budget must be positive");

    const bool visited_key = options.key == ExactStateKey::VisitedSet;
    StatePool pool(n, options.key);
    const std::size_t words = pool.words();
    const auto goal_words = field.exposure_set(goal).words();

    struct Entry {
        std::uint32_t f;
        std::uint32_t h;
        RegionId region;
        std::uint32_t id;
    };
    auto later = [](const Entry& a, const Entry& b) {
        return std::tie(a.f, a.h, a.region, a.id) > std::tie(b.f, b.h, b.region, b.id);
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(later)> open(later);
    std::unordered_set<std::uint32_t, StateHash, StateEq> seen(1024, StateHash{&pool}, StateEq{&pool});
    std::vector<std::uint32_t> cost;

    {
        const auto id = pool.append(start, kRoot);
        auto* w = pool.mutable_words(id);
        const auto es = field.exposure_set(start).words();
        std::copy(es.begin(), es.end(), w);
        if (visited_key) w[words + start / 64] |= std::uint64_t{1} << (start % 64);
        seen.insert(id);
        const auto g = popcount_words(w, words);
        const auto h = count_new_words(w, goal_words);
        cost.push_back(g);
        open.push({g + h, h, start, id});
    }

    PlanResult result;
    while (!open.empty()) {
        const Entry top = open.top();
        open.pop();
        if (top.region == goal) {
            for (auto id = top.id; id != kRoot; id = pool.parent(id)) result.path.push_back(pool.region(id));
            std::reverse(result.path.begin(), result.path.end());
            result.status = PlanStatus::Found;
            result.cost = cost[top.id];
            result.generated = pool.size();
            return result;
        }
        if (result.expanded >= options.node_budget) {
            result.status = PlanStatus::BudgetExceeded;
            result.generated = pool.size();
            return result;
        }
        ++result.expanded;

        for (auto nb : graph.neighbors(top.region)) {
            const auto id = pool.append(nb, top.id);
            auto* w = pool.mutable_words(id);
            const auto* pw = pool.exposed(top.id);
            const auto es = field.exposure_set(nb).words();
            for (std::size_t i = 0; i < words; ++i) w[i] = pw[i] | es[i];
            if (visited_key) {
                std::copy(pw + words, pw + 2 * words, w + words);
                w[words + nb / 64] |= std::uint64_t{1} << (nb % 64);
            }
            if (!seen.insert(id).second) {
                pool.pop_back();
                continue;
            }
            const auto g = popcount_words(w, words);
            const auto h = count_new_words(w, goal_words);
            cost.push_back(g);
            open.push({g + h, h, nb, id});
        }
    }
    result.status = PlanStatus::NoPath;
    result.generated = pool.size();
    return result;
}

}  // namespace shadowpath
