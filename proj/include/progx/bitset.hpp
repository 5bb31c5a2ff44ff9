#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace progx {

// Fixed-length bitset sized at runtime; backs the preference sets.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    size_t size() const { return n_; }

    void set(size_t i) { words_[i >> 6] |= (uint64_t{1} << (i & 63)); }
    void reset(size_t i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    size_t count() const {
        size_t c = 0;
        for (uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    size_t intersection_count(const Bitset& other) const {
        size_t c = 0;
        for (size_t i = 0; i < words_.size(); ++i)
            c += std::popcount(words_[i] & other.words_[i]);
        return c;
    }

    size_t union_count(const Bitset& other) const {
        size_t c = 0;
        for (size_t i = 0; i < words_.size(); ++i)
            c += std::popcount(words_[i] | other.words_[i]);
        return c;
    }

    Bitset& operator|=(const Bitset& other) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }

    void clear() {
        for (auto& w : words_) w = 0;
    }

    template <typename Fn>
    void for_each_set(Fn&& fn) const {
        for (size_t wi = 0; wi < words_.size(); ++wi) {
            uint64_t w = words_[wi];
            while (w) {
                const int b = std::countr_zero(w);
                fn(wi * 64 + static_cast<size_t>(b));
                w &= w - 1;
            }
        }
    }

    bool operator==(const Bitset& other) const = default;

private:
    size_t n_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace progx
