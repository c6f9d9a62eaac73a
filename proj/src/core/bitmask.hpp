#ifndef TREEDIST_CORE_BITMASK_HPP
#define TREEDIST_CORE_BITMASK_HPP

#include <bit>
#include <cstdint>
#include <vector>

namespace treedist {

// Small fixed-universe bitset over labels {0..universe-1}.
class LabelMask {
public:
    LabelMask() = default;
    explicit LabelMask(int universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}

    void set(int i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    int universe() const { return universe_; }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    bool intersects(const LabelMask& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    int and_count(const LabelMask& o) const {
        int c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += std::popcount(words_[i] & o.words_[i]);
        return c;
    }

    // True iff this mask intersects the complement of o within the universe.
    bool intersects_complement(const LabelMask& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t universe_word = word_universe(i);
            if (words_[i] & (~o.words_[i] & universe_word)) return true;
        }
        return false;
    }

    bool complements_intersect(const LabelMask& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t universe_word = word_universe(i);
            if ((~words_[i] & universe_word) & (~o.words_[i] & universe_word)) return true;
        }
        return false;
    }

    bool operator==(const LabelMask& o) const {
        return universe_ == o.universe_ && words_ == o.words_;
    }

private:
    std::uint64_t word_universe(std::size_t i) const {
        int remaining = universe_ - static_cast<int>(i) * 64;
        if (remaining >= 64) return ~std::uint64_t{0};
        if (remaining <= 0) return 0;
        return (std::uint64_t{1} << remaining) - 1;
    }

    int universe_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace treedist

#endif
