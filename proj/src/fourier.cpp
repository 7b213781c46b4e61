#include "sbf/fourier.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sbf {

FourierSpectrum::FourierSpectrum(int n, std::vector<int64_t> scaled)
    : n_(n), coeffs_(std::move(scaled)) {
    if (n < 1 || n > TruthTable::kMaxVars)
        throw std::invalid_argument("spectrum variable count out of range");
    if (coeffs_.size() != (size_t{1} << n))
        throw std::invalid_argument("spectrum must have 2^n coefficients");
}

std::string FourierSpectrum::serialize() const {
    std::string out = "mask,scaled_coeff\n";
    for (uint32_t mask = 0; mask < size(); ++mask)
        if (coeffs_[mask] != 0)
            out += std::to_string(mask) + "," + std::to_string(coeffs_[mask]) + "\n";
    return out;
}

FourierSpectrum FourierSpectrum::deserialize(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "mask,scaled_coeff")
        throw std::invalid_argument("spectrum: expected header mask,scaled_coeff");
    std::vector<std::pair<uint32_t, int64_t>> rows;
    uint32_t max_mask = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("spectrum: malformed row '" + line + "'");
        uint32_t mask = static_cast<uint32_t>(std::stoul(line.substr(0, comma)));
        int64_t coeff = std::stoll(line.substr(comma + 1));
        rows.emplace_back(mask, coeff);
        if (mask > max_mask) max_mask = mask;
    }
    int n = 1;
    while ((uint32_t{1} << n) <= max_mask) ++n;
    std::vector<int64_t> coeffs(size_t{1} << n, 0);
    for (auto& [mask, coeff] : rows) coeffs[mask] = coeff;
    return FourierSpectrum(n, std::move(coeffs));
}

double SpectralProfile::influence(int i) const {
    return std::ldexp(static_cast<double>(influence_num[i]), -2 * n);
}

double SpectralProfile::total_influence() const {
    return std::ldexp(static_cast<double>(total_influence_num), -2 * n);
}

double SpectralProfile::weight(int level) const {
    return std::ldexp(static_cast<double>(weight_num[level]), -2 * n);
}

FourierSpectrum fwht(const TruthTable& table) {
    const int n = table.n();
    const uint32_t size = table.size();
    std::vector<int64_t> a(size);
    for (uint32_t x = 0; x < size; ++x) a[x] = table.signed_value(x);
    for (uint32_t half = 1; half < size; half <<= 1) {
        for (uint32_t block = 0; block < size; block += half << 1) {
            for (uint32_t i = block; i < block + half; ++i) {
                int64_t u = a[i], v = a[i + half];
                a[i] = u + v;
                a[i + half] = u - v;
            }
        }
    }
    return FourierSpectrum(n, std::move(a));
}

TruthTable inverse_fwht(const FourierSpectrum& spectrum) {
    const int n = spectrum.n();
    const uint32_t size = spectrum.size();
    std::vector<int64_t> a = spectrum.scaled_coeffs();
    for (uint32_t half = 1; half < size; half <<= 1) {
        for (uint32_t block = 0; block < size; block += half << 1) {
            for (uint32_t i = block; i < block + half; ++i) {
                int64_t u = a[i], v = a[i + half];
                a[i] = u + v;
                a[i + half] = u - v;
            }
        }
    }
    // The double transform multiplies by 2^n, so entries must be +/-2^n.
    const int64_t scale = int64_t{1} << n;
    TruthTable t(n);
    for (uint32_t x = 0; x < size; ++x) {
        if (a[x] == scale) t.set(x, 0);
        else if (a[x] == -scale) t.set(x, 1);
        else throw std::invalid_argument("not a Boolean spectrum");
    }
    return t;
}

SpectralProfile profile(const FourierSpectrum& spectrum) {
    SpectralProfile p;
    p.n = spectrum.n();
    p.influence_num.assign(p.n, 0);
    p.weight_num.assign(p.n + 1, 0);
    for (uint32_t mask = 0; mask < spectrum.size(); ++mask) {
        int64_t c = spectrum.scaled(mask);
        if (c == 0) continue;
        int64_t sq = c * c;
        int level = std::popcount(mask);
        p.weight_num[level] += sq;
        if (level > p.degree) p.degree = level;
        ++p.support_size;
        for (int i = 0; i < p.n; ++i)
            if ((mask >> i) & 1) p.influence_num[i] += sq;
    }
    for (int64_t v : p.influence_num) p.total_influence_num += v;
    return p;
}

double noise_stability(const FourierSpectrum& spectrum, double rho) {
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::invalid_argument("noise stability requires rho in [0,1]");
    SpectralProfile p = profile(spectrum);
    double total = 0.0;
    for (int k = 0; k <= p.n; ++k) {
        if (p.weight_num[k] == 0) continue;
        double w = std::ldexp(static_cast<double>(p.weight_num[k]), -2 * p.n);
        total += std::pow(rho, k) * w;
    }
    return total;
}

int fourier_degree(const FourierSpectrum& spectrum) {
    int degree = 0;
    for (uint32_t mask = 0; mask < spectrum.size(); ++mask)
        if (spectrum.scaled(mask) != 0)
            degree = std::max(degree, std::popcount(mask));
    return degree;
}

}  // namespace sbf
