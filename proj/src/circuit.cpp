#include "sbf/circuit.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace sbf {

std::string gate_op_name(GateOp op) {
    switch (op) {
        case GateOp::Not: return "NOT";
        case GateOp::And: return "AND";
        case GateOp::Or: return "OR";
        case GateOp::Xor: return "XOR";
    }
    return "?";
}

int Circuit::input_index(const std::string& name) const {
    for (size_t i = 0; i < inputs.size(); ++i)
        if (inputs[i] == name) return static_cast<int>(i);
    return -1;
}

namespace {

GateOp parse_op(const std::string& name, const std::string& gate_id) {
    if (name == "NOT") return GateOp::Not;
    if (name == "AND") return GateOp::And;
    if (name == "OR") return GateOp::Or;
    if (name == "XOR") return GateOp::Xor;
    throw std::invalid_argument("circuit: gate '" + gate_id + "' has unknown op '" + name + "'");
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("circuit: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("inputs") || !doc.contains("gates") ||
        !doc.contains("output"))
        throw std::invalid_argument("circuit: document needs keys inputs, gates, output");

    Circuit c;
    std::unordered_map<std::string, int> input_slots;
    for (const auto& name : doc["inputs"]) {
        std::string s = name.get<std::string>();
        if (input_slots.count(s))
            throw std::invalid_argument("circuit: duplicate input '" + s + "'");
        input_slots[s] = static_cast<int>(c.inputs.size());
        c.inputs.push_back(s);
    }
    if (c.inputs.empty()) throw std::invalid_argument("circuit: no inputs declared");

    std::unordered_map<std::string, int> gate_slots;
    for (const auto& record : doc["gates"]) {
        Gate g;
        g.id = record.at("id").get<std::string>();
        if (gate_slots.count(g.id) || input_slots.count(g.id))
            throw std::invalid_argument("circuit: duplicate id '" + g.id + "'");
        g.op = parse_op(record.at("op").get<std::string>(), g.id);
        for (const auto& arg_json : record.at("args")) {
            std::string ref = arg_json.get<std::string>();
            GateArg arg;
            if (!ref.empty() && ref[0] == '!') {
                arg.negated = true;
                ref = ref.substr(1);
                if (!input_slots.count(ref))
                    throw std::invalid_argument("circuit: gate '" + g.id +
                                                "' negates unknown input '" + ref + "'");
            }
            if (auto it = input_slots.find(ref); it != input_slots.end()) {
                arg.is_input = true;
                arg.index = it->second;
            } else if (auto git = gate_slots.find(ref); git != gate_slots.end()) {
                arg.index = git->second;   // earlier gate by construction
            } else {
                throw std::invalid_argument("circuit: gate '" + g.id +
                                            "' references unknown '" + ref + "'");
            }
            g.args.push_back(arg);
        }
        if (g.op == GateOp::Not) {
            if (g.args.size() != 1)
                throw std::invalid_argument("circuit: NOT gate '" + g.id +
                                            "' must have exactly 1 argument");
        } else if (g.args.size() < 2) {
            throw std::invalid_argument("circuit: gate '" + g.id +
                                        "' needs at least 2 arguments");
        }
        gate_slots[g.id] = static_cast<int>(c.gates.size());
        c.gates.push_back(std::move(g));
    }
    if (c.gates.empty()) throw std::invalid_argument("circuit: no gates declared");

    std::string out_id = doc["output"].get<std::string>();
    auto it = gate_slots.find(out_id);
    if (it == gate_slots.end())
        throw std::invalid_argument("circuit: output '" + out_id + "' is not a gate");
    c.output = it->second;
    return c;
}

std::vector<uint8_t> eval_all_gates(const Circuit& c, const std::vector<uint8_t>& assignment) {
    if (assignment.size() != c.inputs.size())
        throw std::invalid_argument("circuit: assignment must cover all declared inputs");
    std::vector<uint8_t> values(c.gates.size(), 0);
    for (size_t gi = 0; gi < c.gates.size(); ++gi) {
        const Gate& g = c.gates[gi];
        auto arg_value = [&](const GateArg& a) -> int {
            int v = a.is_input ? assignment[a.index] : values[a.index];
            return a.negated ? 1 - v : v;
        };
        int v = 0;
        switch (g.op) {
            case GateOp::Not:
                v = 1 - arg_value(g.args[0]);
                break;
            case GateOp::And:
                v = 1;
                for (const auto& a : g.args) v &= arg_value(a);
                break;
            case GateOp::Or:
                v = 0;
                for (const auto& a : g.args) v |= arg_value(a);
                break;
            case GateOp::Xor:
                v = 0;
                for (const auto& a : g.args) v ^= arg_value(a);
                break;
        }
        values[gi] = static_cast<uint8_t>(v);
    }
    return values;
}

int eval_circuit(const Circuit& c, const std::vector<uint8_t>& assignment) {
    return eval_all_gates(c, assignment)[c.output];
}

TruthTable compile_to_table(const Circuit& c) {
    int k = static_cast<int>(c.inputs.size());
    if (k > TruthTable::kMaxVars)
        throw std::invalid_argument("circuit: too many inputs to compile (max 20)");
    TruthTable t(k);
    std::vector<uint8_t> assignment(k);
    for (uint32_t x = 0; x < t.size(); ++x) {
        for (int i = 0; i < k; ++i) assignment[i] = (x >> i) & 1;
        t.set(x, eval_circuit(c, assignment));
    }
    return t;
}

CircuitStats stats(const Circuit& c, const StatsConfig& cfg) {
    CircuitStats s;
    s.size = static_cast<int>(c.gates.size());
    std::vector<int> depth(c.gates.size(), 1);
    std::vector<int> bin_depth(c.gates.size(), 1);   // k-ary gates as balanced trees
    for (size_t gi = 0; gi < c.gates.size(); ++gi) {
        const Gate& g = c.gates[gi];
        if (g.op == GateOp::Xor) s.has_xor = true;
        s.max_fanin = std::max(s.max_fanin, static_cast<int>(g.args.size()));
        int arg_depth = 0, arg_bin_depth = 0;
        for (const auto& a : g.args) {
            if (!a.is_input) {
                arg_depth = std::max(arg_depth, depth[a.index]);
                arg_bin_depth = std::max(arg_bin_depth, bin_depth[a.index]);
            }
        }
        depth[gi] = arg_depth + 1;
        int tree = g.args.size() <= 2
                       ? 1
                       : static_cast<int>(std::ceil(std::log2(static_cast<double>(g.args.size()))));
        bin_depth[gi] = arg_bin_depth + tree;
        s.depth = std::max(s.depth, depth[gi]);
    }
    int max_bin_depth = 0;
    for (int d : bin_depth) max_bin_depth = std::max(max_bin_depth, d);

    if (!s.has_xor && s.depth <= cfg.ac0_depth_limit) {
        s.class_label = "AC0-like";
    } else {
        double bound = cfg.nc1_log_factor *
                       std::log2(static_cast<double>(s.size + c.inputs.size()));
        s.class_label = max_bin_depth <= static_cast<int>(std::ceil(bound)) ? "NC1-like" : "other";
    }
    return s;
}

std::vector<GateSubpopulation> gate_subpopulations(
    const Circuit& c, const std::vector<std::vector<uint8_t>>& attrs) {
    std::vector<GateSubpopulation> subs(c.gates.size());
    for (size_t gi = 0; gi < c.gates.size(); ++gi) subs[gi].gate_id = c.gates[gi].id;
    for (size_t v = 0; v < attrs.size(); ++v) {
        if (attrs[v].size() != c.inputs.size())
            throw std::invalid_argument("circuit: attribute row " + std::to_string(v) +
                                        " does not match circuit inputs");
        std::vector<uint8_t> values = eval_all_gates(c, attrs[v]);
        for (size_t gi = 0; gi < values.size(); ++gi)
            if (values[gi]) subs[gi].members.push_back(static_cast<int>(v));
    }
    return subs;
}

}  // namespace sbf
