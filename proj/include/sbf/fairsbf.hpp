#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sbf/circuit.hpp"
#include "sbf/gnn.hpp"
#include "sbf/graph.hpp"

namespace sbf {

struct GateGap {
    std::string gate_id;
    int population = 0;                 // |S_g|
    std::optional<double> gap;          // null when the gate is excluded
    bool eligible = false;              // 0 < |S_g| < |V|
};

struct FairnessReport {
    std::vector<GateGap> per_gate;
    double fair_loss = 0.0;             // sum of eligible gaps
    std::optional<double> ddp;          // null when one output group is empty
    std::optional<double> deo;          // null without labels or a label class
    std::optional<std::string> deo_note;
    std::optional<double> accuracy;     // null without labels
    CircuitStats circuit_profile;
    int compiled_fourier_degree = 0;
    // Flag raised when the subpopulation function is beyond the reach of
    // attribute-alignment style mechanisms (degree > 2 or XOR present).
    bool high_complexity_flag = false;
};

// Per-gate gaps for the FairSBF loss: mu is the global prediction mean and
// Delta_g = |mean over S_g - mu| for gates with 0 < |S_g| < |V|.
std::vector<GateGap> fairness_gaps(const std::vector<double>& yhat, const Circuit& c,
                                   const std::vector<std::vector<uint8_t>>& attrs);

// Demographic parity gap with soft predictions. Throws when a group is empty.
double ddp(const std::vector<double>& yhat, const std::vector<uint8_t>& group);

// Equalized odds gap: max of TPR and FPR differences at threshold 0.5
// (ties predict 0). Throws when a group lacks a label class.
double deo(const std::vector<double>& yhat, const std::vector<uint8_t>& labels,
           const std::vector<uint8_t>& group);

FairnessReport audit(const std::vector<double>& yhat,
                     const std::optional<std::vector<uint8_t>>& labels, const Circuit& c,
                     const std::vector<std::vector<uint8_t>>& attrs);

struct LossEval {
    double value = 0.0;       // task + lambda * fair
    double task_loss = 0.0;   // mean BCE over labels
    double fair_loss = 0.0;   // sum of eligible gate gaps
    GnnGradients grads;
};

// Value and analytic gradient of the FairSBF composite loss at the current
// parameters. The finite-difference tests evaluate this at perturbed
// parameters and compare.
LossEval composite_loss(const GnnModel& m, const Graph& g, const Circuit& c, double lambda);

struct EpochTrace {
    int epoch = 0;
    double task_loss = 0.0;
    double fair_loss = 0.0;
};

struct TrainResult {
    GnnModel model;
    FairnessReport report;
    std::vector<EpochTrace> trace;
    bool fairness_disabled = false;   // no eligible gate, trained task-only
};

// FairSBF: full-batch gradient descent on task loss (mean BCE) plus
// lambda-weighted per-gate fairness gaps over the circuit's intermediate
// gates. Deterministic for a fixed seed.
TrainResult train(const Graph& g, const Circuit& c, const TrainConfig& cfg);

}  // namespace sbf
