#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sbf/truth_table.hpp"

namespace sbf {

enum class GateOp { Not, And, Or, Xor };

std::string gate_op_name(GateOp op);

// A gate argument is either an input attribute (optionally negated inline,
// the file format's "!name" sugar) or an earlier gate.
struct GateArg {
    bool is_input = false;
    bool negated = false;   // only meaningful for input references
    int index = 0;          // input slot or gate slot
};

struct Gate {
    std::string id;
    GateOp op;
    std::vector<GateArg> args;
};

// Gate DAG over named attribute inputs. Gates are stored in topological
// order; argument references only point to inputs or strictly earlier gates.
struct Circuit {
    std::vector<std::string> inputs;
    std::vector<Gate> gates;
    int output = 0;   // index into gates

    int input_index(const std::string& name) const;
};

struct CircuitStats {
    int size = 0;       // gate count
    int depth = 0;      // longest input->output path over non-input gates
    int max_fanin = 0;
    bool has_xor = false;
    std::string class_label;   // AC0-like | NC1-like | other
};

struct StatsConfig {
    int ac0_depth_limit = 4;
    double nc1_log_factor = 2.0;
};

// JSON document with keys "inputs", "gates" ({id, op, args}), "output".
Circuit parse_circuit(const std::string& text);

int eval_circuit(const Circuit& c, const std::vector<uint8_t>& assignment);

// Per-gate values for one assignment, in gate order.
std::vector<uint8_t> eval_all_gates(const Circuit& c, const std::vector<uint8_t>& assignment);

TruthTable compile_to_table(const Circuit& c);

CircuitStats stats(const Circuit& c, const StatsConfig& cfg = {});

struct GateSubpopulation {
    std::string gate_id;
    std::vector<int> members;   // node indices with g(x_v) = 1
};

// One subpopulation per gate (intermediate gates and the output gate), in
// topological order. attrs holds one bit row per node covering all inputs.
std::vector<GateSubpopulation> gate_subpopulations(
    const Circuit& c, const std::vector<std::vector<uint8_t>>& attrs);

}  // namespace sbf
