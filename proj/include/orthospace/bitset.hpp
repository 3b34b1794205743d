#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace orthospace {

/// Fixed-length dynamic bitset over 64-bit words. Bits beyond size() are kept zero.
class Bitset {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    std::size_t word_count() const { return words_.size(); }
    std::uint64_t word(std::size_t w) const { return words_[w]; }

    bool test(std::size_t i) const { return words_[i >> 6] >> (i & 63) & 1u; }
    bool operator[](std::size_t i) const { return test(i); }

    Bitset& set(std::size_t i)
    {
        words_[i >> 6] |= std::uint64_t{1} << (i & 63);
        return *this;
    }
    Bitset& set()
    {
        for (auto& w : words_)
            w = ~std::uint64_t{0};
        trim();
        return *this;
    }
    Bitset& reset(std::size_t i)
    {
        words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
        return *this;
    }
    Bitset& reset()
    {
        for (auto& w : words_)
            w = 0;
        return *this;
    }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (auto w : words_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool none() const
    {
        for (auto w : words_)
            if (w)
                return false;
        return true;
    }
    bool any() const { return !none(); }

    std::size_t find_first() const { return scan_from_word(0); }
    std::size_t find_next(std::size_t i) const
    {
        ++i;
        if (i >= n_)
            return npos;
        std::size_t w = i >> 6;
        std::uint64_t rest = words_[w] & (~std::uint64_t{0} << (i & 63));
        if (rest)
            return (w << 6) + static_cast<std::size_t>(std::countr_zero(rest));
        return scan_from_word(w + 1);
    }
    std::size_t find_last() const
    {
        for (std::size_t w = words_.size(); w-- > 0;)
            if (words_[w])
                return (w << 6) + 63 - static_cast<std::size_t>(std::countl_zero(words_[w]));
        return npos;
    }

    bool is_subset_of(const Bitset& o) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & ~o.words_[w])
                return false;
        return true;
    }
    bool intersects(const Bitset& o) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & o.words_[w])
                return true;
        return false;
    }

    Bitset& operator&=(const Bitset& o)
    {
        for (std::size_t w = 0; w < words_.size(); ++w)
            words_[w] &= o.words_[w];
        return *this;
    }
    Bitset& operator|=(const Bitset& o)
    {
        for (std::size_t w = 0; w < words_.size(); ++w)
            words_[w] |= o.words_[w];
        return *this;
    }
    /// Set difference.
    Bitset& operator-=(const Bitset& o)
    {
        for (std::size_t w = 0; w < words_.size(); ++w)
            words_[w] &= ~o.words_[w];
        return *this;
    }
    Bitset& flip()
    {
        for (auto& w : words_)
            w = ~w;
        trim();
        return *this;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }
    friend Bitset operator~(Bitset a) { return a.flip(); }
    friend bool operator==(const Bitset&, const Bitset&) = default;

    template <typename F>
    void for_each(F&& f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                f((w << 6) + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

private:
    std::size_t scan_from_word(std::size_t w) const
    {
        for (; w < words_.size(); ++w)
            if (words_[w])
                return (w << 6) + static_cast<std::size_t>(std::countr_zero(words_[w]));
        return npos;
    }
    void trim()
    {
        if (n_ & 63)
            words_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace orthospace
