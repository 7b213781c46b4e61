#include "sbf/gnn.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sbf {

Aggregator aggregator_from_name(const std::string& name) {
    if (name == "sum") return Aggregator::Sum;
    if (name == "mean") return Aggregator::Mean;
    if (name == "max") return Aggregator::Max;
    throw std::invalid_argument("unknown aggregator '" + name + "'");
}

std::string aggregator_name(Aggregator agg) {
    switch (agg) {
        case Aggregator::Sum: return "sum";
        case Aggregator::Mean: return "mean";
        case Aggregator::Max: return "max";
    }
    return "?";
}

std::vector<double*> GnnModel::parameters() {
    std::vector<double*> params;
    for (auto& layer : layers) {
        for (auto& x : layer.w_self.a) params.push_back(&x);
        for (auto& x : layer.w_nbr.a) params.push_back(&x);
        for (auto& x : layer.bias) params.push_back(&x);
    }
    for (auto& x : readout_w) params.push_back(&x);
    params.push_back(&readout_b);
    return params;
}

std::vector<const double*> GnnModel::parameters() const {
    std::vector<const double*> params;
    for (const auto& layer : layers) {
        for (const auto& x : layer.w_self.a) params.push_back(&x);
        for (const auto& x : layer.w_nbr.a) params.push_back(&x);
        for (const auto& x : layer.bias) params.push_back(&x);
    }
    for (const auto& x : readout_w) params.push_back(&x);
    params.push_back(&readout_b);
    return params;
}

std::string GnnModel::serialize() const {
    std::ostringstream out;
    out << "gnnmodel v1\n";
    out << "agg " << aggregator_name(agg) << "\n";
    out << "dims";
    for (int d : dims) out << " " << d;
    out << "\n";
    out << std::hexfloat;
    for (const auto* p : parameters()) out << *p << "\n";
    return out.str();
}

GnnModel GnnModel::deserialize(const std::string& text) {
    std::istringstream in(text);
    std::string line, word;
    if (!std::getline(in, line) || line != "gnnmodel v1")
        throw std::invalid_argument("model: bad header");
    GnnModel m;
    in >> word;
    if (word != "agg") throw std::invalid_argument("model: expected agg line");
    in >> word;
    m.agg = aggregator_from_name(word);
    in >> word;
    if (word != "dims") throw std::invalid_argument("model: expected dims line");
    std::getline(in, line);
    std::istringstream dims_in(line);
    int d;
    while (dims_in >> d) m.dims.push_back(d);
    if (m.dims.empty()) throw std::invalid_argument("model: empty dims");
    m.layer_count = static_cast<int>(m.dims.size()) - 1;
    for (int t = 1; t <= m.layer_count; ++t) {
        GnnLayer layer;
        layer.w_self = Mat(m.dims[t], m.dims[t - 1]);
        layer.w_nbr = Mat(m.dims[t], m.dims[t - 1]);
        layer.bias.assign(m.dims[t], 0.0);
        m.layers.push_back(std::move(layer));
    }
    m.readout_w.assign(m.dims.back(), 0.0);
    for (auto* p : m.parameters()) {
        std::string token;
        if (!(in >> token)) throw std::invalid_argument("model: truncated weights");
        *p = std::strtod(token.c_str(), nullptr);
    }
    return m;
}

GnnModel init_model(const TrainConfig& cfg, int input_dim) {
    if (cfg.hidden_dim <= 0) throw std::invalid_argument("config: hidden dim must be positive");
    if (cfg.layers < 0) throw std::invalid_argument("config: negative layer count");
    if (input_dim <= 0) throw std::invalid_argument("config: input dim must be positive");

    GnnModel m;
    m.layer_count = cfg.layers;
    m.agg = cfg.agg;
    m.dims.push_back(input_dim);
    for (int t = 1; t <= cfg.layers; ++t) m.dims.push_back(cfg.hidden_dim);

    std::mt19937_64 rng(cfg.seed);
    auto uniform = [&rng](double scale) {
        std::uniform_real_distribution<double> dist(-scale, scale);
        return dist(rng);
    };
    for (int t = 1; t <= cfg.layers; ++t) {
        GnnLayer layer;
        double scale = 1.0 / std::sqrt(static_cast<double>(m.dims[t - 1]));
        layer.w_self = Mat(m.dims[t], m.dims[t - 1]);
        for (auto& x : layer.w_self.a) x = uniform(scale);
        layer.w_nbr = Mat(m.dims[t], m.dims[t - 1]);
        for (auto& x : layer.w_nbr.a) x = uniform(scale);
        // Biases share the weight range. A zero bias would leave nodes with
        // an all-zero receptive field sitting exactly on the ReLU kink.
        layer.bias.resize(m.dims[t]);
        for (auto& x : layer.bias) x = uniform(scale);
        m.layers.push_back(std::move(layer));
    }
    double scale = 1.0 / std::sqrt(static_cast<double>(m.dims.back()));
    m.readout_w.resize(m.dims.back());
    for (auto& x : m.readout_w) x = uniform(scale);
    m.readout_b = uniform(scale);
    return m;
}

namespace {

// Aggregate neighbor vectors; empty neighborhoods yield the zero vector
// for every aggregator.
std::vector<double> aggregate(const GnnModel& m, const Graph& g, int v,
                              const std::vector<std::vector<double>>& h) {
    size_t dim = h.empty() ? 0 : h[0].size();
    std::vector<double> agg(dim, 0.0);
    const auto& nbrs = g.adjacency[v];
    if (nbrs.empty()) return agg;
    switch (m.agg) {
        case Aggregator::Sum:
            for (int u : nbrs)
                for (size_t j = 0; j < dim; ++j) agg[j] += h[u][j];
            break;
        case Aggregator::Mean:
            for (int u : nbrs)
                for (size_t j = 0; j < dim; ++j) agg[j] += h[u][j];
            for (size_t j = 0; j < dim; ++j) agg[j] /= static_cast<double>(nbrs.size());
            break;
        case Aggregator::Max:
            agg = h[nbrs[0]];
            for (size_t i = 1; i < nbrs.size(); ++i)
                for (size_t j = 0; j < dim; ++j)
                    agg[j] = std::max(agg[j], h[nbrs[i]][j]);
            break;
    }
    return agg;
}

// Neighbor holding each component's max, lowest node id on ties.
std::vector<int> argmax_route(const Graph& g, int v,
                              const std::vector<std::vector<double>>& h) {
    const auto& nbrs = g.adjacency[v];
    size_t dim = h[nbrs[0]].size();
    std::vector<int> route(dim, nbrs[0]);
    for (size_t i = 1; i < nbrs.size(); ++i)
        for (size_t j = 0; j < dim; ++j)
            if (h[nbrs[i]][j] > h[route[j]][j]) route[j] = nbrs[i];
    return route;
}

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

ForwardResult forward(const GnnModel& m, const Graph& g) {
    if (g.feature_dim() != m.dims[0])
        throw std::invalid_argument("forward: feature dim " + std::to_string(g.feature_dim()) +
                                    " does not match model input dim " +
                                    std::to_string(m.dims[0]));
    ForwardResult result;
    result.h.resize(m.layer_count + 1);
    result.h[0] = g.features;

    for (int t = 1; t <= m.layer_count; ++t) {
        const GnnLayer& layer = m.layers[t - 1];
        const auto& prev = result.h[t - 1];
        auto& cur = result.h[t];
        cur.assign(g.node_count, std::vector<double>(m.dims[t], 0.0));
        for (int v = 0; v < g.node_count; ++v) {
            std::vector<double> agg = aggregate(m, g, v, prev);
            for (int r = 0; r < m.dims[t]; ++r) {
                double z = layer.bias[r];
                for (int c = 0; c < m.dims[t - 1]; ++c) {
                    z += layer.w_self.at(r, c) * prev[v][c];
                    z += layer.w_nbr.at(r, c) * agg[c];
                }
                cur[v][r] = z > 0.0 ? z : 0.0;
            }
        }
    }

    result.predictions.resize(g.node_count);
    const auto& top = result.h[m.layer_count];
    for (int v = 0; v < g.node_count; ++v) {
        double z = m.readout_b;
        for (size_t j = 0; j < m.readout_w.size(); ++j) z += m.readout_w[j] * top[v][j];
        result.predictions[v] = logistic(z);
    }
    return result;
}

GnnGradients backward(const GnnModel& m, const Graph& g, const ForwardResult& fwd,
                      const std::vector<double>& grad_logits) {
    if (static_cast<int>(grad_logits.size()) != g.node_count)
        throw std::invalid_argument("backward: logit gradient size mismatch");

    std::vector<GnnLayer> grads(m.layer_count);
    for (int t = 1; t <= m.layer_count; ++t) {
        grads[t - 1].w_self = Mat(m.dims[t], m.dims[t - 1]);
        grads[t - 1].w_nbr = Mat(m.dims[t], m.dims[t - 1]);
        grads[t - 1].bias.assign(m.dims[t], 0.0);
    }
    std::vector<double> grad_readout_w(m.readout_w.size(), 0.0);
    double grad_readout_b = 0.0;

    const auto& top = fwd.h[m.layer_count];
    std::vector<std::vector<double>> gh(g.node_count,
                                        std::vector<double>(m.dims[m.layer_count], 0.0));
    for (int v = 0; v < g.node_count; ++v) {
        grad_readout_b += grad_logits[v];
        for (size_t j = 0; j < m.readout_w.size(); ++j) {
            grad_readout_w[j] += grad_logits[v] * top[v][j];
            gh[v][j] = grad_logits[v] * m.readout_w[j];
        }
    }

    for (int t = m.layer_count; t >= 1; --t) {
        const GnnLayer& layer = m.layers[t - 1];
        GnnLayer& grad = grads[t - 1];
        const auto& prev = fwd.h[t - 1];
        const auto& cur = fwd.h[t];
        std::vector<std::vector<double>> gh_prev(
            g.node_count, std::vector<double>(m.dims[t - 1], 0.0));

        for (int v = 0; v < g.node_count; ++v) {
            // ReLU subgradient 0 at the kink: active exactly when output > 0.
            std::vector<double> gpre(m.dims[t]);
            for (int r = 0; r < m.dims[t]; ++r)
                gpre[r] = cur[v][r] > 0.0 ? gh[v][r] : 0.0;

            std::vector<double> agg = aggregate(m, g, v, prev);
            for (int r = 0; r < m.dims[t]; ++r) {
                grad.bias[r] += gpre[r];
                for (int c = 0; c < m.dims[t - 1]; ++c) {
                    grad.w_self.at(r, c) += gpre[r] * prev[v][c];
                    grad.w_nbr.at(r, c) += gpre[r] * agg[c];
                }
            }
            // Self path.
            for (int c = 0; c < m.dims[t - 1]; ++c)
                for (int r = 0; r < m.dims[t]; ++r)
                    gh_prev[v][c] += layer.w_self.at(r, c) * gpre[r];
            // Neighbor path.
            const auto& nbrs = g.adjacency[v];
            if (nbrs.empty()) continue;
            std::vector<double> gagg(m.dims[t - 1], 0.0);
            for (int c = 0; c < m.dims[t - 1]; ++c)
                for (int r = 0; r < m.dims[t]; ++r)
                    gagg[c] += layer.w_nbr.at(r, c) * gpre[r];
            switch (m.agg) {
                case Aggregator::Sum:
                    for (int u : nbrs)
                        for (int c = 0; c < m.dims[t - 1]; ++c) gh_prev[u][c] += gagg[c];
                    break;
                case Aggregator::Mean: {
                    double inv = 1.0 / static_cast<double>(nbrs.size());
                    for (int u : nbrs)
                        for (int c = 0; c < m.dims[t - 1]; ++c) gh_prev[u][c] += gagg[c] * inv;
                    break;
                }
                case Aggregator::Max: {
                    std::vector<int> route = argmax_route(g, v, prev);
                    for (int c = 0; c < m.dims[t - 1]; ++c) gh_prev[route[c]][c] += gagg[c];
                    break;
                }
            }
        }
        gh = std::move(gh_prev);
    }

    GnnGradients out;
    for (int t = 0; t < m.layer_count; ++t) {
        for (double x : grads[t].w_self.a) out.values.push_back(x);
        for (double x : grads[t].w_nbr.a) out.values.push_back(x);
        for (double x : grads[t].bias) out.values.push_back(x);
    }
    for (double x : grad_readout_w) out.values.push_back(x);
    out.values.push_back(grad_readout_b);
    return out;
}

TruthTable extract_boolean_function(const GnnModel& m, const Graph& g, int v,
                                    const std::vector<int>& input_nodes) {
    if (m.dims[0] != 1)
        throw std::invalid_argument("extract: model input dim must be 1");
    if (input_nodes.size() > 16)
        throw std::invalid_argument("extract: at most 16 input nodes");
    if (input_nodes.empty())
        throw std::invalid_argument("extract: need at least one input node");

    Graph work = g;
    for (auto& feat : work.features) feat.assign(1, 0.0);

    int k = static_cast<int>(input_nodes.size());
    TruthTable table(k);
    for (uint32_t x = 0; x < table.size(); ++x) {
        for (int i = 0; i < k; ++i)
            work.features[input_nodes[i]][0] = static_cast<double>((x >> i) & 1);
        auto fwd = forward(m, work);
        table.set(x, fwd.predictions[v] > 0.5 ? 1 : 0);
    }
    return table;
}

LocalityVerdict locality_check(const GnnModel& m, const Graph& g, int v, int T_hops) {
    LocalityVerdict verdict;
    auto base = forward(m, g);
    std::vector<bool> in_ball(g.node_count, false);
    for (int u : t_hop_ball(g, v, T_hops)) in_ball[u] = true;

    Graph work = g;
    for (int u = 0; u < g.node_count; ++u) {
        for (auto& x : work.features[u]) x += 1.0;
        auto fwd = forward(m, work);
        bool changed = fwd.predictions[v] != base.predictions[v] ||
                       fwd.h[m.layer_count][v] != base.h[m.layer_count][v];
        work.features[u] = g.features[u];
        if (changed) {
            if (!in_ball[u]) {
                verdict.passed = false;
                if (verdict.violating_node < 0) verdict.violating_node = u;
            } else {
                ++verdict.inside_changes;
            }
        }
    }
    return verdict;
}

}  // namespace sbf
