#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace shadowpath {

/// Fixed-length set of region indices, one bit per region.
///
/// The length is chosen at construction and never changes. All binary
/// operations require both operands to have the same length.
class RegionSet {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    RegionSet() = default;
    explicit RegionSet(std::size_t size) : size_(size), words_(word_count(size), 0) {}

    static constexpr std::size_t word_count(std::size_t bits) { return (bits + word_bits - 1) / word_bits; }

    static RegionSet full(std::size_t size) {
        RegionSet s(size);
        for (auto& w : s.words_) w = ~word_type{0};
        s.clear_tail();
        return s;
    }

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const { return (words_[i / word_bits] >> (i % word_bits)) & 1U; }
    void set(std::size_t i) { words_[i / word_bits] |= word_type{1} << (i % word_bits); }
    void reset(std::size_t i) { words_[i / word_bits] &= ~(word_type{1} << (i % word_bits)); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool empty() const {
        for (auto w : words_)
            if (w != 0) return false;
        return true;
    }

    RegionSet& operator|=(const RegionSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    RegionSet& operator&=(const RegionSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    /// Complement within [0, size).
    RegionSet complement() const {
        RegionSet r(size_);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
        r.clear_tail();
        return r;
    }

    /// |this ∪ o| without materializing the union.
    std::size_t union_count(const RegionSet& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] | o.words_[i]));
        return c;
    }

    /// |o \ this|, the number of members of `o` not already present.
    std::size_t count_new(const RegionSet& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(o.words_[i] & ~words_[i]));
        return c;
    }

    bool is_subset_of(const RegionSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((words_[i] & ~o.words_[i]) != 0) return false;
        return true;
    }

    bool intersects(const RegionSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((words_[i] & o.words_[i]) != 0) return true;
        return false;
    }

    /// Ascending list of members.
    std::vector<std::size_t> to_indices() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            word_type w = words_[wi];
            while (w != 0) {
                out.push_back(wi * word_bits + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
        return out;
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            word_type w = words_[wi];
            while (w != 0) {
                fn(wi * word_bits + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::span<const word_type> words() const { return words_; }
    std::span<word_type> words() { return words_; }

    friend bool operator==(const RegionSet&, const RegionSet&) = default;

private:
    void clear_tail() {
        const std::size_t rem = size_ % word_bits;
        if (rem != 0 && !words_.empty()) words_.back() &= (word_type{1} << rem) - 1;
    }

    std::size_t size_ = 0;
    std::vector<word_type> words_;
};

inline RegionSet operator|(RegionSet a, const RegionSet& b) { return a |= b; }
inline RegionSet operator&(RegionSet a, const RegionSet& b) { return a &= b; }

}  // namespace shadowpath
