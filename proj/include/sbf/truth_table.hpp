#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sbf {

// Bit-packed Boolean function on {0,1}^n. Index x encodes the assignment
// whose bit i-1 (LSB = variable 1) is the value of variable i. This index
// convention is shared by every module that touches truth tables.
class TruthTable {
public:
    static constexpr int kMaxVars = 20;

    explicit TruthTable(int n);
    TruthTable(int n, const std::vector<uint8_t>& bits);

    int n() const { return n_; }
    uint32_t size() const { return uint32_t{1} << n_; }

    int get(uint32_t x) const {
        return static_cast<int>((words_[x >> 6] >> (x & 63)) & 1u);
    }
    void set(uint32_t x, int bit) {
        uint64_t mask = uint64_t{1} << (x & 63);
        if (bit) words_[x >> 6] |= mask;
        else     words_[x >> 6] &= ~mask;
    }

    // Signed value at x under the fixed convention x_i = 1 - 2 z_i.
    int signed_value(uint32_t x) const { return 1 - 2 * get(x); }

    uint64_t count_ones() const;
    // Number of ones per Hamming weight of the input index (size n+1).
    std::vector<uint64_t> ones_by_weight() const;

    bool operator==(const TruthTable& other) const {
        return n_ == other.n_ && words_ == other.words_;
    }
    bool operator!=(const TruthTable& other) const { return !(*this == other); }

    static TruthTable constant(int n, int bit);
    static TruthTable dictator(int n, int var);   // var is 1-based
    static TruthTable parity(int n);
    static TruthTable majority3();

    // First line "n=<k>", second line 2^k chars of 0/1 in index order.
    std::string serialize() const;
    static TruthTable deserialize(const std::string& text);

private:
    int n_;
    std::vector<uint64_t> words_;
};

}  // namespace sbf
