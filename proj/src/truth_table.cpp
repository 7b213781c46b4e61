#include "sbf/truth_table.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace sbf {

namespace {

void check_n(int n) {
    if (n < 1 || n > TruthTable::kMaxVars)
        throw std::invalid_argument("variable count must be in [1, 20], got " +
                                    std::to_string(n));
}

}  // namespace

TruthTable::TruthTable(int n) : n_(n) {
    check_n(n);
    words_.assign((size() + 63) / 64, 0);
}

TruthTable::TruthTable(int n, const std::vector<uint8_t>& bits) : TruthTable(n) {
    if (bits.size() != size())
        throw std::invalid_argument("bit sequence length must be 2^n");
    for (uint32_t x = 0; x < size(); ++x) set(x, bits[x] ? 1 : 0);
}

uint64_t TruthTable::count_ones() const {
    uint64_t total = 0;
    for (uint64_t w : words_) total += std::popcount(w);
    return total;
}

std::vector<uint64_t> TruthTable::ones_by_weight() const {
    std::vector<uint64_t> counts(n_ + 1, 0);
    for (uint32_t x = 0; x < size(); ++x)
        if (get(x)) ++counts[std::popcount(x)];
    return counts;
}

TruthTable TruthTable::constant(int n, int bit) {
    TruthTable t(n);
    if (bit)
        for (uint32_t x = 0; x < t.size(); ++x) t.set(x, 1);
    return t;
}

TruthTable TruthTable::dictator(int n, int var) {
    check_n(n);
    if (var < 1 || var > n) throw std::invalid_argument("dictator variable out of range");
    TruthTable t(n);
    for (uint32_t x = 0; x < t.size(); ++x) t.set(x, (x >> (var - 1)) & 1);
    return t;
}

TruthTable TruthTable::parity(int n) {
    TruthTable t(n);
    for (uint32_t x = 0; x < t.size(); ++x) t.set(x, std::popcount(x) & 1);
    return t;
}

TruthTable TruthTable::majority3() {
    TruthTable t(3);
    for (uint32_t x = 0; x < 8; ++x) t.set(x, std::popcount(x) >= 2 ? 1 : 0);
    return t;
}

std::string TruthTable::serialize() const {
    std::string out = "n=" + std::to_string(n_) + "\n";
    out.reserve(out.size() + size() + 1);
    for (uint32_t x = 0; x < size(); ++x) out += get(x) ? '1' : '0';
    out += '\n';
    return out;
}

TruthTable TruthTable::deserialize(const std::string& text) {
    std::istringstream in(text);
    std::string header, bits;
    if (!std::getline(in, header) || header.rfind("n=", 0) != 0)
        throw std::invalid_argument("truth table: expected first line n=<k>");
    int n;
    try {
        n = std::stoi(header.substr(2));
    } catch (const std::exception&) {
        throw std::invalid_argument("truth table: bad variable count '" + header + "'");
    }
    check_n(n);
    if (!std::getline(in, bits))
        throw std::invalid_argument("truth table: missing bit line");
    if (bits.size() != (size_t{1} << n))
        throw std::invalid_argument("truth table: bit line length must be 2^n");
    TruthTable t(n);
    for (uint32_t x = 0; x < t.size(); ++x) {
        char c = bits[x];
        if (c != '0' && c != '1')
            throw std::invalid_argument("truth table: bit line must be 0/1 only");
        t.set(x, c - '0');
    }
    return t;
}

}  // namespace sbf
