#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sbf/truth_table.hpp"

namespace sbf {

// Exact Fourier coefficients of the +/-1 valued function obtained from a
// truth table via x_i = 1 - 2 z_i. Coefficients are stored as scaled
// integers c_S = 2^n * fhat(S), indexed by the subset mask S; variable i
// corresponds to bit i-1 of the mask, matching the table index convention.
class FourierSpectrum {
public:
    FourierSpectrum(int n, std::vector<int64_t> scaled);

    int n() const { return n_; }
    uint32_t size() const { return uint32_t{1} << n_; }
    int64_t scaled(uint32_t mask) const { return coeffs_[mask]; }
    double coefficient(uint32_t mask) const {
        return static_cast<double>(coeffs_[mask]) / static_cast<double>(size());
    }
    const std::vector<int64_t>& scaled_coeffs() const { return coeffs_; }

    bool operator==(const FourierSpectrum& other) const {
        return n_ == other.n_ && coeffs_ == other.coeffs_;
    }

    // CSV rows "mask,scaled_coeff" (header included, zero coefficients omitted).
    std::string serialize() const;
    static FourierSpectrum deserialize(const std::string& text);

private:
    int n_;
    std::vector<int64_t> coeffs_;
};

// Per-function spectral quantities, kept as exact dyadic numerators over
// 4^n so tests can compare without tolerances.
struct SpectralProfile {
    int n = 0;
    int degree = 0;                        // max |S| with c_S != 0
    std::vector<int64_t> influence_num;    // Inf_i = influence_num[i] / 4^n
    int64_t total_influence_num = 0;
    std::vector<int64_t> weight_num;       // W^k = weight_num[k] / 4^n
    uint64_t support_size = 0;

    int64_t denominator_log4() const { return n; }  // denominator is 4^n
    double influence(int i) const;
    double total_influence() const;
    double weight(int level) const;
};

// O(n 2^n) in-place butterfly transform of the signed table.
FourierSpectrum fwht(const TruthTable& table);

// Throws std::invalid_argument("not a Boolean spectrum") when the
// reconstruction is not +/-1 valued.
TruthTable inverse_fwht(const FourierSpectrum& spectrum);

SpectralProfile profile(const FourierSpectrum& spectrum);

// Stab_rho(f) = sum_S rho^{|S|} fhat(S)^2; rho must lie in [0,1].
double noise_stability(const FourierSpectrum& spectrum, double rho);

int fourier_degree(const FourierSpectrum& spectrum);

}  // namespace sbf
