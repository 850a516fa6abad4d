#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace gsent {

// Fixed-width bitvector over GF(2). Used for neighbor masks and Z-patterns
// on the full vertex set; graphs may be wider than 64 vertices.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    int size() const { return nbits_; }

    bool get(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(int i, bool v = true) {
        const std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= m;
        else
            words_[i >> 6] &= ~m;
    }

    void flip(int i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
        return *this;
    }

    BitVec& operator|=(const BitVec& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
        return *this;
    }

    friend BitVec operator^(BitVec a, const BitVec& b) {
        a ^= b;
        return a;
    }

    int popcount() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }

    bool intersects(const BitVec& o) const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & o.words_[w]) return true;
        return false;
    }

    bool operator==(const BitVec&) const = default;

    // Qubit 0 leftmost.
    std::string to_string() const {
        std::string s(nbits_, '0');
        for (int i = 0; i < nbits_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

private:
    int nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace gsent
