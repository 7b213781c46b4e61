#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sbf/graph.hpp"
#include "sbf/truth_table.hpp"

namespace sbf {

enum class Aggregator { Sum, Mean, Max };

Aggregator aggregator_from_name(const std::string& name);
std::string aggregator_name(Aggregator agg);

// Row-major dense matrix; small enough that hand-rolled kernels keep the
// arithmetic order fixed and the results bit-reproducible.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}
    double& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    double at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

struct GnnLayer {
    Mat w_self;
    Mat w_nbr;
    std::vector<double> bias;
};

struct GnnModel {
    int layer_count = 0;
    Aggregator agg = Aggregator::Mean;
    std::vector<int> dims;              // d_0 .. d_T
    std::vector<GnnLayer> layers;
    std::vector<double> readout_w;      // d_T
    double readout_b = 0.0;

    // Versioned text dump; round-trips exactly (hexfloat weights).
    std::string serialize() const;
    static GnnModel deserialize(const std::string& text);

    std::vector<double*> parameters();
    std::vector<const double*> parameters() const;
};

struct TrainConfig {
    int hidden_dim = 16;
    int layers = 2;
    double learning_rate = 0.01;
    int epochs = 200;
    double lambda = 0.0;
    uint64_t seed = 0;
    Aggregator agg = Aggregator::Mean;
};

GnnModel init_model(const TrainConfig& cfg, int input_dim);

struct ForwardResult {
    // h[t] holds layer-t activations, h[0] = input features.
    std::vector<std::vector<std::vector<double>>> h;
    std::vector<double> predictions;   // logistic readout, in (0,1)
};

ForwardResult forward(const GnnModel& m, const Graph& g);

// Gradient of a scalar loss with respect to every parameter, given the
// loss gradient with respect to the readout logits. Mirrors the model's
// parameters() ordering.
struct GnnGradients {
    std::vector<double> values;   // one entry per parameter
};

GnnGradients backward(const GnnModel& m, const Graph& g, const ForwardResult& fwd,
                      const std::vector<double>& grad_logits);

// Boolean function computed at node v over the listed 1-bit input nodes;
// all other features sit at the zero baseline. Requires d_0 = 1 and at
// most 16 input nodes. Prediction ties at 0.5 map to 0.
TruthTable extract_boolean_function(const GnnModel& m, const Graph& g, int v,
                                    const std::vector<int>& input_nodes);

struct LocalityVerdict {
    bool passed = true;
    int violating_node = -1;    // first node outside the ball that changed v
    int inside_changes = 0;     // informational: in-ball perturbations that moved v
};

// Perturbs each node's features in turn and checks that nodes outside
// t_hop_ball(g, v, T) leave node v's embedding and prediction bit-exact.
LocalityVerdict locality_check(const GnnModel& m, const Graph& g, int v, int T_hops);

}  // namespace sbf
