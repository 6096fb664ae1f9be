#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace atomic {

/// Packed truth-table column: one bit per input combination.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size, bool value = false);
    BitVector(std::initializer_list<int> bits);

    static BitVector from_bits(const std::vector<int>& bits);

    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] bool get(std::size_t index) const;
    void set(std::size_t index, bool value);

    /// this = (NOT src) OR this
    void imply_from(const BitVector& src);
    void clear();
    void fill();

    [[nodiscard]] std::size_t count() const;
    [[nodiscard]] std::vector<int> to_bits() const;

    /// "[b0 b1 ... bn-1]"
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const BitVector& a, const BitVector& b) = default;

private:
    void trim();

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace atomic
