// Command-line front end: spectral analysis, function isomorphism, graph
// invariants, GNN training with the gate-level fairness penalty, audits,
// and synthetic data generation.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sbf/circuit.hpp"
#include "sbf/fairsbf.hpp"
#include "sbf/fourier.hpp"
#include "sbf/gnn.hpp"
#include "sbf/graph.hpp"
#include "sbf/invariants.hpp"
#include "sbf/subiso.hpp"
#include "sbf/truth_table.hpp"

using nlohmann::json;
using namespace sbf;

namespace {

constexpr int kExitUsage = 2;       // parse/ingestion/size errors
constexpr int kExitNonIso = 1;
constexpr int kExitBudget = 3;
constexpr int kExitDisagree = 4;

struct Common {
    uint64_t seed = 0;
    std::string out;               // empty: stdout
    std::string format = "json";   // json | csv
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void flatten_csv(const json& node, const std::string& prefix, std::ostream& out) {
    if (node.is_object()) {
        for (auto it = node.begin(); it != node.end(); ++it)
            flatten_csv(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (node.is_array()) {
        for (size_t i = 0; i < node.size(); ++i)
            flatten_csv(node[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << ",";
        if (node.is_string()) out << node.get<std::string>();
        else out << node.dump();
        out << "\n";
    }
}

void emit(const Common& common, json doc) {
    doc["config"]["seed"] = common.seed;
    doc["config"]["format"] = common.format;
    std::string text;
    if (common.format == "csv") {
        std::ostringstream out;
        out << "key,value\n";
        flatten_csv(doc, "", out);
        text = out.str();
    } else {
        text = doc.dump(2);
        text += "\n";
    }
    if (common.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(common.out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write file: " + common.out);
        out << text;
    }
}

json spectral_report(const TruthTable& t) {
    FourierSpectrum spec = fwht(t);
    SpectralProfile prof = profile(spec);
    json doc;
    doc["n"] = t.n();
    doc["degree"] = prof.degree;
    doc["support_size"] = prof.support_size;
    json inf = json::array();
    for (int i = 0; i < t.n(); ++i) inf.push_back(prof.influence(i));
    doc["influences"] = inf;
    doc["total_influence"] = prof.total_influence();
    json weights = json::array();
    for (int k = 0; k <= t.n(); ++k) weights.push_back(prof.weight(k));
    doc["weight_by_level"] = weights;
    json stab;
    for (double rho : {0.25, 0.5, 0.75, 0.9}) {
        std::ostringstream key;
        key << rho;
        stab[key.str()] = noise_stability(spec, rho);
    }
    doc["noise_stability"] = stab;
    return doc;
}

json gaps_json(const std::vector<GateGap>& gaps) {
    json rows = json::array();
    for (const auto& g : gaps) {
        json row;
        row["gate"] = g.gate_id;
        row["population"] = g.population;
        row["eligible"] = g.eligible;
        if (g.gap) row["gap"] = *g.gap;
        else row["gap"] = nullptr;
        rows.push_back(row);
    }
    return rows;
}

json report_json(const FairnessReport& r) {
    json doc;
    doc["per_gate"] = gaps_json(r.per_gate);
    doc["fair_loss"] = r.fair_loss;
    doc["ddp"] = r.ddp ? json(*r.ddp) : json(nullptr);
    doc["deo"] = r.deo ? json(*r.deo) : json(nullptr);
    if (r.deo_note) doc["deo_note"] = *r.deo_note;
    doc["accuracy"] = r.accuracy ? json(*r.accuracy) : json(nullptr);
    doc["circuit"]["size"] = r.circuit_profile.size;
    doc["circuit"]["depth"] = r.circuit_profile.depth;
    doc["circuit"]["max_fanin"] = r.circuit_profile.max_fanin;
    doc["circuit"]["has_xor"] = r.circuit_profile.has_xor;
    doc["circuit"]["class"] = r.circuit_profile.class_label;
    doc["compiled_fourier_degree"] = r.compiled_fourier_degree;
    doc["high_complexity_flag"] = r.high_complexity_flag;
    return doc;
}

json summary_json(const InvariantSummary& s) {
    json doc;
    doc["wl1"]["class_sizes"] = s.wl.class_sizes;
    doc["bic"]["articulation_points"] = s.bic.articulation_points;
    doc["bic"]["bridges"] = s.bic.bridges;
    doc["bic"]["component_edge_sizes"] = s.bic.component_edge_sizes;
    json coeffs = json::array();
    for (const BigInt& c : s.pe) coeffs.push_back(c.str());
    doc["pe"] = coeffs;
    doc["hom"] = s.hom;
    doc["sbi_ones"] = s.sbi.count_ones();
    doc["gi"] = s.gi ? json(*s.gi) : json("skipped: limit");
    return doc;
}

Graph load_graph_files(const std::string& nodes_path, const std::string& edges_path) {
    return load_graph(read_file(nodes_path), read_file(edges_path));
}

struct GraphArgs {
    std::string nodes, edges;
    bool synth_default = false;
    uint64_t seed = 0;

    Graph load() const {
        if (synth_default) {
            SynthConfig cfg;
            cfg.seed = seed;
            return synth_biased_graph(cfg);
        }
        if (nodes.empty() || edges.empty())
            throw std::runtime_error("need --nodes and --edges (or --synth default)");
        return load_graph_files(nodes, edges);
    }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

std::string trace_csv(const std::vector<EpochTrace>& trace) {
    std::ostringstream out;
    out.precision(17);
    out << "epoch,task_loss,fair_loss\n";
    for (const auto& row : trace)
        out << row.epoch << "," << row.task_loss << "," << row.fair_loss << "\n";
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boolean-function analysis of graph models and fairness audits"};
    app.require_subcommand(1);

    Common common;
    app.add_option("--seed", common.seed, "Random seed")->capture_default_str();
    app.add_option("--out", common.out, "Output file (default: stdout)");
    app.add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    // ---- analyze ----
    auto* analyze = app.add_subcommand("analyze", "Spectral report for a function");
    std::string an_table, an_circuit;
    analyze->add_option("--table", an_table, "Truth table file");
    analyze->add_option("--circuit", an_circuit, "Circuit file");
    analyze->callback([&] {
        if (an_table.empty() == an_circuit.empty())
            throw std::runtime_error("analyze: need exactly one of --table / --circuit");
        json doc;
        doc["config"]["command"] = "analyze";
        if (!an_table.empty()) {
            doc["config"]["table"] = an_table;
            doc["spectral"] = spectral_report(TruthTable::deserialize(read_file(an_table)));
        } else {
            doc["config"]["circuit"] = an_circuit;
            Circuit c = parse_circuit(read_file(an_circuit));
            CircuitStats st = stats(c);
            doc["circuit"]["inputs"] = c.inputs;
            doc["circuit"]["size"] = st.size;
            doc["circuit"]["depth"] = st.depth;
            doc["circuit"]["max_fanin"] = st.max_fanin;
            doc["circuit"]["has_xor"] = st.has_xor;
            doc["circuit"]["class"] = st.class_label;
            doc["spectral"] = spectral_report(compile_to_table(c));
        }
        emit(common, doc);
    });

    // ---- subiso ----
    auto* sub = app.add_subcommand("subiso", "Function isomorphism up to variable permutation");
    std::string sub_f, sub_g;
    uint64_t sub_budget = SubIsoOptions{}.budget;
    int sub_exit = 0;
    sub->add_option("f", sub_f, "First truth table file")->required();
    sub->add_option("g", sub_g, "Second truth table file")->required();
    sub->add_option("--budget", sub_budget, "Search node budget")->capture_default_str();
    sub->callback([&] {
        TruthTable f = TruthTable::deserialize(read_file(sub_f));
        TruthTable g = TruthTable::deserialize(read_file(sub_g));
        json doc;
        doc["config"]["command"] = "subiso";
        doc["config"]["f"] = sub_f;
        doc["config"]["g"] = sub_g;
        doc["config"]["budget"] = sub_budget;
        try {
            auto witness = subiso(f, g, SubIsoOptions{sub_budget});
            if (witness) {
                doc["verdict"] = "iso";
                json pi = json::array();
                for (int m : witness->mapping) pi.push_back(m + 1);
                doc["witness"] = pi;
            } else {
                doc["verdict"] = "non-iso";
                sub_exit = kExitNonIso;
            }
        } catch (const BudgetExceeded&) {
            doc["verdict"] = "budget";
            sub_exit = kExitBudget;
        }
        emit(common, doc);
    });

    // ---- reduce ----
    auto* reduce = app.add_subcommand("reduce", "Graph isomorphism via function encoding");
    std::string r_n1, r_e1, r_n2, r_e2;
    int reduce_exit = 0;
    reduce->add_option("--g1-nodes", r_n1)->required();
    reduce->add_option("--g1-edges", r_e1)->required();
    reduce->add_option("--g2-nodes", r_n2)->required();
    reduce->add_option("--g2-edges", r_e2)->required();
    reduce->callback([&] {
        Graph g1 = load_graph_files(r_n1, r_e1);
        Graph g2 = load_graph_files(r_n2, r_e2);
        ReductionCheck rc = reduction_check(g1, g2);
        json doc;
        doc["config"]["command"] = "reduce";
        doc["config"]["g1"] = {{"nodes", r_n1}, {"edges", r_e1}};
        doc["config"]["g2"] = {{"nodes", r_n2}, {"edges", r_e2}};
        doc["gi"] = rc.gi_isomorphic ? "iso" : "non-iso";
        doc["subiso"] = rc.subiso_isomorphic ? "iso" : "non-iso";
        doc["agree"] = rc.agree;
        if (rc.witness) {
            json pi = json::array();
            for (int m : rc.witness->mapping) pi.push_back(m + 1);
            doc["witness"] = pi;
        }
        if (!rc.agree) reduce_exit = kExitDisagree;
        emit(common, doc);
    });

    // ---- invariants ----
    auto* inv = app.add_subcommand("invariants", "Graph invariant summary or pair comparison");
    std::string i_n1, i_e1, i_n2, i_e2, i_prop = "adjacency";
    inv->add_option("--nodes", i_n1)->required();
    inv->add_option("--edges", i_e1)->required();
    inv->add_option("--nodes2", i_n2);
    inv->add_option("--edges2", i_e2);
    inv->add_option("--property", i_prop, "Subset property: adjacency|clique|connected")
        ->capture_default_str();
    inv->callback([&] {
        SubsetProperty prop = subset_property_from_name(i_prop);
        Graph g1 = load_graph_files(i_n1, i_e1);
        auto fam = default_hom_family();
        json doc;
        doc["config"]["command"] = "invariants";
        doc["config"]["property"] = i_prop;
        if (i_n2.empty()) {
            doc["summary"] = summary_json(invariant_summary(g1, fam, prop));
        } else {
            Graph g2 = load_graph_files(i_n2, i_e2);
            json rows = json::array();
            for (const auto& row : hierarchy_pair(g1, g2, fam, prop)) {
                json r;
                r["invariant"] = row.invariant;
                r["verdict"] = row.skipped ? "skipped: limit"
                                           : (row.distinguishes ? "distinguishes" : "agrees");
                rows.push_back(r);
            }
            doc["pair"] = rows;
        }
        emit(common, doc);
    });

    // ---- wl ----
    auto* wl = app.add_subcommand("wl", "1-WL color refinement");
    std::string w_n1, w_e1, w_n2, w_e2;
    wl->add_option("--nodes", w_n1)->required();
    wl->add_option("--edges", w_e1)->required();
    wl->add_option("--nodes2", w_n2);
    wl->add_option("--edges2", w_e2);
    wl->callback([&] {
        Graph g1 = load_graph_files(w_n1, w_e1);
        WlResult a = wl1(g1);
        json doc;
        doc["config"]["command"] = "wl";
        doc["class_sizes"] = a.class_sizes;
        if (!w_n2.empty()) {
            WlResult b = wl1(load_graph_files(w_n2, w_e2));
            doc["class_sizes_2"] = b.class_sizes;
            doc["equivalent"] = (a == b);
        }
        emit(common, doc);
    });

    // ---- train ----
    auto* tr = app.add_subcommand("train", "Train a GNN with the gate-fairness penalty");
    GraphArgs tr_graph;
    std::string tr_synth, tr_circuit, tr_model_out, tr_trace_out;
    TrainConfig tr_cfg;
    std::string tr_agg = "mean";
    tr->add_option("--nodes", tr_graph.nodes);
    tr->add_option("--edges", tr_graph.edges);
    tr->add_option("--synth", tr_synth, "Use the bundled synthetic dataset ('default')");
    tr->add_option("--circuit", tr_circuit)->required();
    tr->add_option("--lambda", tr_cfg.lambda, "Fairness weight")->capture_default_str();
    tr->add_option("--epochs", tr_cfg.epochs)->capture_default_str();
    tr->add_option("--hidden-dim", tr_cfg.hidden_dim)->capture_default_str();
    tr->add_option("--layers", tr_cfg.layers)->capture_default_str();
    tr->add_option("--lr", tr_cfg.learning_rate)->capture_default_str();
    tr->add_option("--agg", tr_agg, "Aggregator: sum|mean|max")->capture_default_str();
    tr->add_option("--model-out", tr_model_out, "Model dump path");
    tr->add_option("--trace-out", tr_trace_out, "Per-epoch loss CSV path");
    tr->callback([&] {
        if (!tr_synth.empty() && tr_synth != "default")
            throw std::runtime_error("train: only '--synth default' is supported");
        tr_graph.synth_default = !tr_synth.empty();
        tr_graph.seed = common.seed == 0 && tr_graph.synth_default ? SynthConfig{}.seed
                                                                   : common.seed;
        tr_cfg.seed = common.seed;
        tr_cfg.agg = aggregator_from_name(tr_agg);
        Graph g = tr_graph.load();
        Circuit c = parse_circuit(read_file(tr_circuit));
        TrainResult result = train(g, c, tr_cfg);
        if (!tr_model_out.empty()) write_text(tr_model_out, result.model.serialize());
        if (!tr_trace_out.empty()) write_text(tr_trace_out, trace_csv(result.trace));
        json doc;
        doc["config"]["command"] = "train";
        doc["config"]["circuit"] = tr_circuit;
        doc["config"]["lambda"] = tr_cfg.lambda;
        doc["config"]["epochs"] = tr_cfg.epochs;
        doc["config"]["hidden_dim"] = tr_cfg.hidden_dim;
        doc["config"]["layers"] = tr_cfg.layers;
        doc["config"]["learning_rate"] = tr_cfg.learning_rate;
        doc["config"]["agg"] = tr_agg;
        doc["config"]["synth"] = tr_graph.synth_default;
        doc["fairness_disabled"] = result.fairness_disabled;
        doc["report"] = report_json(result.report);
        doc["final_task_loss"] = result.trace.empty() ? 0.0 : result.trace.back().task_loss;
        doc["final_fair_loss"] = result.trace.empty() ? 0.0 : result.trace.back().fair_loss;
        emit(common, doc);
    });

    // ---- audit ----
    auto* au = app.add_subcommand("audit", "Fairness audit of predictions on a graph");
    GraphArgs au_graph;
    std::string au_synth, au_circuit, au_model, au_preds;
    au->add_option("--nodes", au_graph.nodes);
    au->add_option("--edges", au_graph.edges);
    au->add_option("--synth", au_synth, "Use the bundled synthetic dataset ('default')");
    au->add_option("--circuit", au_circuit)->required();
    au->add_option("--model", au_model, "Model dump to run forward");
    au->add_option("--predictions", au_preds, "File with one prediction per line");
    au->callback([&] {
        if (!au_synth.empty() && au_synth != "default")
            throw std::runtime_error("audit: only '--synth default' is supported");
        au_graph.synth_default = !au_synth.empty();
        au_graph.seed = common.seed == 0 && au_graph.synth_default ? SynthConfig{}.seed
                                                                   : common.seed;
        if (au_model.empty() == au_preds.empty())
            throw std::runtime_error("audit: need exactly one of --model / --predictions");
        Graph g = au_graph.load();
        Circuit c = parse_circuit(read_file(au_circuit));
        std::vector<double> yhat;
        if (!au_model.empty()) {
            GnnModel m = GnnModel::deserialize(read_file(au_model));
            yhat = forward(m, g).predictions;
        } else {
            std::istringstream in(read_file(au_preds));
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                yhat.push_back(std::stod(line));
            }
            if (static_cast<int>(yhat.size()) != g.node_count)
                throw std::runtime_error("audit: prediction count does not match node count");
        }
        std::optional<std::vector<uint8_t>> labels;
        if (g.has_labels) labels = g.labels;
        FairnessReport report = audit(yhat, labels, c, g.sensitive_rows_for(c.inputs));
        json doc;
        doc["config"]["command"] = "audit";
        doc["config"]["circuit"] = au_circuit;
        doc["report"] = report_json(report);
        emit(common, doc);
    });

    // ---- synth ----
    auto* sy = app.add_subcommand("synth", "Generate the synthetic biased dataset");
    SynthConfig sy_cfg;
    std::string sy_nodes_out, sy_edges_out;
    sy->add_option("--nodes-per-block", sy_cfg.nodes_per_block)->capture_default_str();
    sy->add_option("--p-within", sy_cfg.p_within)->capture_default_str();
    sy->add_option("--p-cross", sy_cfg.p_cross)->capture_default_str();
    sy->add_option("--rho-attr", sy_cfg.rho_attr)->capture_default_str();
    sy->add_option("--label-bias", sy_cfg.label_bias)->capture_default_str();
    sy->add_option("--nodes-out", sy_nodes_out, "Node CSV path")->required();
    sy->add_option("--edges-out", sy_edges_out, "Edge CSV path")->required();
    sy->callback([&] {
        sy_cfg.seed = common.seed == 0 ? SynthConfig{}.seed : common.seed;
        Graph g = synth_biased_graph(sy_cfg);
        write_text(sy_nodes_out, serialize_nodes_csv(g));
        write_text(sy_edges_out, serialize_edges_csv(g));
        json doc;
        doc["config"]["command"] = "synth";
        doc["config"]["nodes_per_block"] = sy_cfg.nodes_per_block;
        doc["config"]["p_within"] = sy_cfg.p_within;
        doc["config"]["p_cross"] = sy_cfg.p_cross;
        doc["config"]["rho_attr"] = sy_cfg.rho_attr;
        doc["config"]["label_bias"] = sy_cfg.label_bias;
        doc["config"]["synth_seed"] = sy_cfg.seed;
        doc["nodes"] = g.node_count;
        doc["edges"] = g.edges.size();
        emit(common, doc);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (*sub) return sub_exit;
    if (*reduce) return reduce_exit;
    return 0;
}
