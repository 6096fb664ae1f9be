#include "atomic/bit_vector.hpp"

#include <bit>
#include <stdexcept>

namespace atomic {

namespace {
constexpr std::size_t kWordBits = 64;
}

BitVector::BitVector(std::size_t size, bool value)
    : size_(size), words_((size + kWordBits - 1) / kWordBits, value ? ~std::uint64_t{0} : 0) {
    trim();
}

BitVector::BitVector(std::initializer_list<int> bits) : BitVector(bits.size()) {
    std::size_t i = 0;
    for (int b : bits) {
        set(i++, b != 0);
    }
}

BitVector BitVector::from_bits(const std::vector<int>& bits) {
    BitVector out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        out.set(i, bits[i] != 0);
    }
    return out;
}

bool BitVector::get(std::size_t index) const {
    if (index >= size_) {
        throw std::out_of_range("BitVector::get");
    }
    return (words_[index / kWordBits] >> (index % kWordBits)) & 1U;
}

void BitVector::set(std::size_t index, bool value) {
    if (index >= size_) {
        throw std::out_of_range("BitVector::set");
    }
    const std::uint64_t mask = std::uint64_t{1} << (index % kWordBits);
    if (value) {
        words_[index / kWordBits] |= mask;
    } else {
        words_[index / kWordBits] &= ~mask;
    }
}

void BitVector::imply_from(const BitVector& src) {
    if (src.size_ != size_) {
        throw std::invalid_argument("BitVector::imply_from: size mismatch");
    }
    for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] = ~src.words_[i] | words_[i];
    }
    trim();
}

void BitVector::clear() {
    for (auto& w : words_) w = 0;
}

void BitVector::fill() {
    for (auto& w : words_) w = ~std::uint64_t{0};
    trim();
}

std::size_t BitVector::count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::vector<int> BitVector::to_bits() const {
    std::vector<int> out(size_);
    for (std::size_t i = 0; i < size_; ++i) out[i] = get(i) ? 1 : 0;
    return out;
}

std::string BitVector::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < size_; ++i) {
        if (i > 0) out += ' ';
        out += get(i) ? '1' : '0';
    }
    out += ']';
    return out;
}

// Unused high bits of the last word stay zero so operator== and count() hold.
void BitVector::trim() {
    const std::size_t tail = size_ % kWordBits;
    if (tail != 0 && !words_.empty()) {
        words_.back() &= (std::uint64_t{1} << tail) - 1;
    }
}

}  // namespace atomic
