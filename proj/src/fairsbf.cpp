#include "sbf/fairsbf.hpp"

#include <cmath>
#include <stdexcept>

#include "sbf/fourier.hpp"

namespace sbf {

std::vector<GateGap> fairness_gaps(const std::vector<double>& yhat, const Circuit& c,
                                   const std::vector<std::vector<uint8_t>>& attrs) {
    if (yhat.size() != attrs.size())
        throw std::invalid_argument("fairness_gaps: prediction / attribute row count mismatch");
    const int n = static_cast<int>(yhat.size());
    double mu = 0.0;
    for (double y : yhat) mu += y;
    mu /= n;

    auto subs = gate_subpopulations(c, attrs);
    std::vector<GateGap> gaps;
    gaps.reserve(subs.size());
    for (const auto& sub : subs) {
        GateGap gap;
        gap.gate_id = sub.gate_id;
        gap.population = static_cast<int>(sub.members.size());
        if (gap.population > 0 && gap.population < n) {
            gap.eligible = true;
            double mean = 0.0;
            for (int v : sub.members) mean += yhat[v];
            mean /= gap.population;
            gap.gap = std::fabs(mean - mu);
        }
        gaps.push_back(std::move(gap));
    }
    return gaps;
}

double ddp(const std::vector<double>& yhat, const std::vector<uint8_t>& group) {
    if (yhat.size() != group.size())
        throw std::invalid_argument("ddp: size mismatch");
    double sum[2] = {0.0, 0.0};
    int count[2] = {0, 0};
    for (size_t v = 0; v < yhat.size(); ++v) {
        sum[group[v] ? 1 : 0] += yhat[v];
        ++count[group[v] ? 1 : 0];
    }
    if (count[0] == 0 || count[1] == 0)
        throw std::invalid_argument("ddp: undefined, a group is empty");
    return std::fabs(sum[1] / count[1] - sum[0] / count[0]);
}

double deo(const std::vector<double>& yhat, const std::vector<uint8_t>& labels,
           const std::vector<uint8_t>& group) {
    if (yhat.size() != labels.size() || yhat.size() != group.size())
        throw std::invalid_argument("deo: size mismatch");
    // [group][label] -> (positives predicted, total)
    int pred[2][2] = {{0, 0}, {0, 0}};
    int total[2][2] = {{0, 0}, {0, 0}};
    for (size_t v = 0; v < yhat.size(); ++v) {
        int gr = group[v] ? 1 : 0;
        int lb = labels[v] ? 1 : 0;
        ++total[gr][lb];
        if (yhat[v] > 0.5) ++pred[gr][lb];
    }
    for (int gr = 0; gr < 2; ++gr)
        for (int lb = 0; lb < 2; ++lb)
            if (total[gr][lb] == 0)
                throw std::invalid_argument(
                    std::string("deo: undefined, group ") + std::to_string(gr) +
                    " has no label-" + std::to_string(lb) + " nodes");
    double tpr0 = static_cast<double>(pred[0][1]) / total[0][1];
    double tpr1 = static_cast<double>(pred[1][1]) / total[1][1];
    double fpr0 = static_cast<double>(pred[0][0]) / total[0][0];
    double fpr1 = static_cast<double>(pred[1][0]) / total[1][0];
    return std::max(std::fabs(tpr1 - tpr0), std::fabs(fpr1 - fpr0));
}

FairnessReport audit(const std::vector<double>& yhat,
                     const std::optional<std::vector<uint8_t>>& labels, const Circuit& c,
                     const std::vector<std::vector<uint8_t>>& attrs) {
    FairnessReport report;
    report.per_gate = fairness_gaps(yhat, c, attrs);
    for (const auto& gap : report.per_gate)
        if (gap.eligible) report.fair_loss += *gap.gap;

    // Group membership on the output-gate subpopulation.
    std::vector<uint8_t> group(yhat.size(), 0);
    {
        auto subs = gate_subpopulations(c, attrs);
        for (int v : subs[c.output].members) group[v] = 1;
    }
    try {
        report.ddp = ddp(yhat, group);
    } catch (const std::invalid_argument&) {
        report.ddp = std::nullopt;
    }
    if (labels) {
        if (labels->size() != yhat.size())
            throw std::invalid_argument("audit: label count mismatch");
        int correct = 0;
        for (size_t v = 0; v < yhat.size(); ++v) {
            int pred = yhat[v] > 0.5 ? 1 : 0;
            if (pred == (*labels)[v]) ++correct;
        }
        report.accuracy = static_cast<double>(correct) / yhat.size();
        try {
            report.deo = deo(yhat, *labels, group);
        } catch (const std::invalid_argument& e) {
            report.deo_note = e.what();
        }
    }

    report.circuit_profile = stats(c);
    report.compiled_fourier_degree = fourier_degree(fwht(compile_to_table(c)));
    report.high_complexity_flag =
        report.compiled_fourier_degree > 2 || report.circuit_profile.has_xor;
    return report;
}

namespace {

LossEval composite_loss_impl(const GnnModel& m, const Graph& g,
                             const std::vector<GateSubpopulation>& subs, double lambda) {
    const int n = g.node_count;
    auto fwd = forward(m, g);
    const auto& yhat = fwd.predictions;

    LossEval eval;
    std::vector<double> grad_logits(n, 0.0);
    for (int v = 0; v < n; ++v) {
        double y = g.labels[v];
        eval.task_loss += -(y * std::log(yhat[v]) + (1.0 - y) * std::log(1.0 - yhat[v]));
        grad_logits[v] = (yhat[v] - y) / n;
    }
    eval.task_loss /= n;

    double mu = 0.0;
    for (double y : yhat) mu += y;
    mu /= n;
    // dDelta_g/dyhat_v = sign(m_g - mu) * (1[v in S_g]/|S_g| - 1/n), with
    // subgradient 0 at the |.| kink.
    std::vector<double> grad_yhat(n, 0.0);
    for (const auto& sub : subs) {
        int size = static_cast<int>(sub.members.size());
        if (size == 0 || size == n) continue;
        double mean = 0.0;
        for (int v : sub.members) mean += yhat[v];
        mean /= size;
        double diff = mean - mu;
        eval.fair_loss += std::fabs(diff);
        double sign = diff > 0.0 ? 1.0 : diff < 0.0 ? -1.0 : 0.0;
        if (sign == 0.0) continue;
        for (int v : sub.members) grad_yhat[v] += sign / size;
        for (int v = 0; v < n; ++v) grad_yhat[v] -= sign / n;
    }
    if (lambda > 0.0)
        for (int v = 0; v < n; ++v)
            grad_logits[v] += lambda * grad_yhat[v] * yhat[v] * (1.0 - yhat[v]);

    eval.value = eval.task_loss + lambda * eval.fair_loss;
    eval.grads = backward(m, g, fwd, grad_logits);
    return eval;
}

}  // namespace

LossEval composite_loss(const GnnModel& m, const Graph& g, const Circuit& c, double lambda) {
    if (!g.has_labels) throw std::invalid_argument("composite_loss: graph has no labels");
    auto attrs = g.sensitive_rows_for(c.inputs);
    return composite_loss_impl(m, g, gate_subpopulations(c, attrs), lambda);
}

TrainResult train(const Graph& g, const Circuit& c, const TrainConfig& cfg) {
    if (!g.has_labels) throw std::invalid_argument("train: graph has no labels");
    if (cfg.lambda < 0) throw std::invalid_argument("train: lambda must be nonnegative");
    if (cfg.epochs <= 0) throw std::invalid_argument("train: epochs must be positive");

    auto attrs = g.sensitive_rows_for(c.inputs);
    auto subs = gate_subpopulations(c, attrs);   // fixed; attrs do not change
    const int n = g.node_count;
    bool any_eligible = false;
    for (const auto& sub : subs) {
        int size = static_cast<int>(sub.members.size());
        if (size > 0 && size < n) any_eligible = true;
    }

    TrainResult result;
    result.fairness_disabled = !any_eligible;
    result.model = init_model(cfg, g.feature_dim());
    double effective_lambda = any_eligible ? cfg.lambda : 0.0;

    auto params = result.model.parameters();
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        LossEval eval = composite_loss_impl(result.model, g, subs, effective_lambda);
        result.trace.push_back({epoch + 1, eval.task_loss, eval.fair_loss});
        for (size_t i = 0; i < params.size(); ++i)
            *params[i] -= cfg.learning_rate * eval.grads.values[i];
    }

    auto fwd = forward(result.model, g);
    result.report = audit(fwd.predictions, g.labels, c, attrs);
    return result;
}

}  // namespace sbf
