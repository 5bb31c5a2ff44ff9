#include "progx/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace progx {
namespace {

constexpr double kFlowEps = 1e-11;

// Accept a move only on strict improvement; ties keep the incumbent.
bool improves(double candidate, double current) {
    return candidate < current - 1e-12 * (1.0 + std::abs(current));
}

}  // namespace

FlowNetwork::FlowNetwork(size_t node_count, size_t source, size_t sink)
    : head_(node_count), source_(source), sink_(sink) {
    if (source >= node_count || sink >= node_count || source == sink)
        throw std::invalid_argument("FlowNetwork: bad source/sink");
}

void FlowNetwork::add_arc(size_t from, size_t to, double capacity) {
    if (!(capacity >= 0.0) || !std::isfinite(capacity))
        throw std::invalid_argument("FlowNetwork: capacity must be finite and nonnegative");
    if (to == source_ || from == sink_)
        throw std::invalid_argument("FlowNetwork: arcs into source / out of sink forbidden");
    if (from == to || capacity == 0.0) return;
    head_[from].push_back(static_cast<uint32_t>(arcs_.size()));
    arcs_.push_back({static_cast<uint32_t>(to), capacity});
    head_[to].push_back(static_cast<uint32_t>(arcs_.size()));
    arcs_.push_back({static_cast<uint32_t>(from), 0.0});
}

bool FlowNetwork::bfs_levels() {
    level_.assign(head_.size(), -1);
    std::vector<uint32_t> queue;
    queue.reserve(head_.size());
    queue.push_back(static_cast<uint32_t>(source_));
    level_[source_] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        const uint32_t u = queue[qi];
        for (uint32_t a : head_[u]) {
            const Arc& arc = arcs_[a];
            if (arc.cap > kFlowEps && level_[arc.to] < 0) {
                level_[arc.to] = level_[u] + 1;
                queue.push_back(arc.to);
            }
        }
    }
    return level_[sink_] >= 0;
}

double FlowNetwork::dfs_push(size_t node, double limit) {
    if (node == sink_) return limit;
    for (uint32_t& i = iter_[node]; i < head_[node].size(); ++i) {
        const uint32_t a = head_[node][i];
        Arc& arc = arcs_[a];
        if (arc.cap > kFlowEps && level_[arc.to] == level_[node] + 1) {
            const double pushed = dfs_push(arc.to, std::min(limit, arc.cap));
            if (pushed > 0.0) {
                arc.cap -= pushed;
                arcs_[a ^ 1].cap += pushed;
                return pushed;
            }
        }
    }
    return 0.0;
}

FlowNetwork::Result FlowNetwork::maxflow() {
    Result result;
    while (bfs_levels()) {
        iter_.assign(head_.size(), 0);
        for (;;) {
            const double pushed = dfs_push(source_, std::numeric_limits<double>::max());
            if (pushed <= 0.0) break;
            result.flow += pushed;
        }
    }
    // Of the possibly many minimum cuts take the one whose sink side holds
    // only nodes that still reach the sink in the residual graph: nodes cut
    // off from both terminals stay on the source side.
    std::vector<uint8_t> reaches_sink(head_.size(), 0);
    std::vector<uint32_t> queue;
    queue.push_back(static_cast<uint32_t>(sink_));
    reaches_sink[sink_] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        const uint32_t v = queue[qi];
        for (uint32_t a : head_[v]) {
            const uint32_t w = arcs_[a].to;
            if (!reaches_sink[w] && arcs_[a ^ 1].cap > kFlowEps) {  // residual arc w -> v
                reaches_sink[w] = 1;
                queue.push_back(w);
            }
        }
    }
    result.source_side.assign(head_.size(), 0);
    for (size_t i = 0; i < head_.size(); ++i)
        if (!reaches_sink[i]) result.source_side[i] = 1;
    return result;
}

EnergyBreakdown energy(const LabelingProblem& problem, std::span<const uint32_t> assignment) {
    EnergyBreakdown e;
    for (size_t p = 0; p < problem.point_count; ++p) e.data += problem.cost(p, assignment[p]);
    if (problem.graph)
        for (const auto& [a, b] : problem.graph->edges())
            if (assignment[a] != assignment[b]) e.smoothness += problem.smoothness_weight;
    std::vector<uint8_t> used(problem.label_count, 0);
    for (size_t p = 0; p < problem.point_count; ++p) used[assignment[p]] = 1;
    size_t used_count = 0;
    for (size_t l = 0; l + 1 < problem.label_count; ++l) used_count += used[l];
    e.label = problem.label_cost * static_cast<double>(used_count);
    e.total = e.data + e.smoothness + e.label;
    return e;
}

namespace {

// One expansion move for label alpha. Binary cut semantics: a node on the
// sink side switches to alpha, a node on the source side keeps its label.
std::vector<uint32_t> expansion_move(const LabelingProblem& problem,
                                     std::span<const uint32_t> current, size_t alpha) {
    const size_t n = problem.point_count;
    const size_t outlier = problem.outlier_label();

    std::vector<uint8_t> used(problem.label_count, 0);
    for (size_t p = 0; p < n; ++p) used[current[p]] = 1;

    // Auxiliary nodes: one per used non-outlier label (other than alpha)
    // whose cost is refunded when all its points abandon it, and one for
    // alpha when taking it would introduce a brand-new paid label.
    std::vector<size_t> drop_aux(problem.label_count, SIZE_MAX);
    size_t aux_count = 0;
    if (problem.label_cost > 0.0)
        for (size_t l = 0; l + 1 < problem.label_count; ++l)
            if (l != alpha && used[l]) drop_aux[l] = n + aux_count++;
    const bool alpha_is_new = problem.label_cost > 0.0 && alpha != outlier && !used[alpha];
    const size_t new_aux = alpha_is_new ? n + aux_count++ : SIZE_MAX;

    const size_t source = n + aux_count, sink = source + 1;
    FlowNetwork net(sink + 1, source, sink);

    std::vector<double> charge_keep(n, 0.0);    // paid when the point keeps its label
    std::vector<double> charge_switch(n, 0.0);  // paid when the point takes alpha
    for (size_t p = 0; p < n; ++p) {
        charge_keep[p] = problem.cost(p, current[p]);
        charge_switch[p] = problem.cost(p, alpha);
    }

    const double w = problem.smoothness_weight;
    double inf_cap = problem.label_cost * static_cast<double>(problem.label_count) + 1.0;
    if (problem.graph && w > 0.0) {
        for (const auto& [a, b] : problem.graph->edges()) {
            const uint32_t fa = current[a], fb = current[b];
            // Pairwise table E(0,0)=A, E(0,1)=B, E(1,0)=C, E(1,1)=0, decomposed
            // as A + (C-A) x_a - C x_b + (B+C-A)(1-x_a) x_b.
            const double ea = fa != fb ? w : 0.0;
            const double eb = fa != alpha ? w : 0.0;
            const double ec = fb != alpha ? w : 0.0;
            charge_switch[a] += ec - ea;
            charge_keep[b] += ec;  // -C x_b == C (1-x_b) - C
            const double lambda = eb + ec - ea;
            if (lambda > 0.0) net.add_arc(a, b, lambda);
            inf_cap += ea + eb + ec + lambda;
        }
    }
    for (size_t p = 0; p < n; ++p) inf_cap += charge_keep[p] + std::abs(charge_switch[p]);

    for (size_t p = 0; p < n; ++p) {
        // charge_switch may have gone negative through the pairwise
        // reparameterization; shift the difference onto the keep side.
        double cs = charge_switch[p], ck = charge_keep[p];
        const double shift = std::min(cs, ck);
        cs -= shift;
        ck -= shift;
        if (cs > 0.0) net.add_arc(source, p, cs);
        if (ck > 0.0) net.add_arc(p, sink, ck);
    }

    for (size_t l = 0; l + 1 < problem.label_count; ++l) {
        if (drop_aux[l] == SIZE_MAX) continue;
        net.add_arc(drop_aux[l], sink, problem.label_cost);
        for (size_t p = 0; p < n; ++p)
            if (current[p] == l) net.add_arc(p, drop_aux[l], inf_cap);
    }
    if (alpha_is_new) {
        net.add_arc(source, new_aux, problem.label_cost);
        for (size_t p = 0; p < n; ++p) net.add_arc(new_aux, p, inf_cap);
    }

    const auto cut = net.maxflow();
    std::vector<uint32_t> next(current.begin(), current.end());
    for (size_t p = 0; p < n; ++p)
        if (!cut.source_side[p]) next[p] = static_cast<uint32_t>(alpha);
    return next;
}

}  // namespace

Labeling alpha_expansion(const LabelingProblem& problem, Labeling initial) {
    Labeling current = std::move(initial);
    current.energy = energy(problem, current.assignment);
    if (problem.point_count == 0) return current;

    constexpr int kMaxCycles = 100;
    for (int cycle = 0; cycle < kMaxCycles; ++cycle) {
        bool improved = false;
        for (size_t alpha = 0; alpha < problem.label_count; ++alpha) {
            auto assignment = expansion_move(problem, current.assignment, alpha);
            const EnergyBreakdown e = energy(problem, assignment);
            if (improves(e.total, current.energy.total)) {
                current.assignment = std::move(assignment);
                current.energy = e;
                improved = true;
            }
        }
        if (!improved) break;
    }
    return current;
}

namespace {

size_t instance_floor(const Instance& inst, const PearlParams& params) {
    return std::max<size_t>(params.min_support,
                            static_cast<size_t>(inst.model().minimal_sample_size) + 1);
}

LabelingProblem build_problem(const std::vector<Instance>& instances, const DataMatrix& data,
                              const NeighborhoodGraph& graph, const PearlParams& params) {
    LabelingProblem problem;
    problem.point_count = data.rows();
    problem.label_count = instances.size() + 1;
    problem.graph = &graph;
    problem.smoothness_weight = params.smoothness_weight;
    problem.label_cost = params.label_cost;
    problem.data_cost.assign(problem.point_count * problem.label_count, 0.0);
    for (size_t p = 0; p < problem.point_count; ++p)
        problem.cost(p, instances.size()) = params.outlier_cost;
    for (size_t i = 0; i < instances.size(); ++i) {
        const double eps = params.epsilon_by_class[static_cast<int>(instances[i].class_id)];
        // Truncation above the outlier cost keeps the per-point decision
        // boundary at eps while non-inliers strictly prefer the outlier
        // label (a truncation at eps^2 would tie and let the smoothness
        // term absorb arbitrarily distant points).
        const double trunc = 2.25 * eps * eps;  // (1.5 eps)^2, the MSAC gamma
        for (size_t p = 0; p < problem.point_count; ++p) {
            const double r = residual(instances[i], data, p);
            problem.cost(p, i) = std::min(r * r, trunc);
        }
    }
    return problem;
}

std::vector<std::vector<size_t>> supports_of(std::span<const uint32_t> assignment,
                                             size_t instance_count) {
    std::vector<std::vector<size_t>> supports(instance_count);
    for (size_t p = 0; p < assignment.size(); ++p)
        if (assignment[p] < instance_count) supports[assignment[p]].push_back(p);
    return supports;
}

// Cheap gate for the removal test: send the victim's points to their
// data-cheapest alternative label and evaluate the energy as-is. The full
// expansion-based evaluation can only do better.
double naive_drop_energy(const LabelingProblem& problem, std::span<const uint32_t> assignment,
                         size_t victim, const std::vector<size_t>& support) {
    std::vector<uint32_t> moved(assignment.begin(), assignment.end());
    for (size_t p : support) {
        size_t best = problem.outlier_label();
        double best_cost = problem.cost(p, best);
        for (size_t l = 0; l + 1 < problem.label_count; ++l) {
            if (l == victim) continue;
            if (problem.cost(p, l) < best_cost) {
                best_cost = problem.cost(p, l);
                best = l;
            }
        }
        moved[p] = static_cast<uint32_t>(best);
    }
    return energy(problem, moved).total;
}

// Labeling after deleting one instance: its points fall to the outlier
// label and one expansion cycle reassigns them over the remaining labels.
Labeling drop_instance(const std::vector<Instance>& instances, size_t victim,
                       const DataMatrix& data, const NeighborhoodGraph& graph,
                       const PearlParams& params, std::span<const uint32_t> assignment,
                       std::vector<Instance>& survivors_out) {
    survivors_out.clear();
    for (size_t i = 0; i < instances.size(); ++i)
        if (i != victim) survivors_out.push_back(instances[i]);

    Labeling seed;
    seed.assignment.resize(assignment.size());
    const uint32_t new_outlier = static_cast<uint32_t>(survivors_out.size());
    for (size_t p = 0; p < assignment.size(); ++p) {
        const uint32_t l = assignment[p];
        if (l == victim || l >= instances.size())
            seed.assignment[p] = new_outlier;
        else
            seed.assignment[p] = l > victim ? l - 1 : l;
    }

    const LabelingProblem reduced = build_problem(survivors_out, data, graph, params);
    seed.energy = energy(reduced, seed.assignment);
    for (size_t alpha = 0; alpha < reduced.label_count; ++alpha) {
        auto cand = expansion_move(reduced, seed.assignment, alpha);
        const EnergyBreakdown e = energy(reduced, cand);
        if (improves(e.total, seed.energy.total)) {
            seed.assignment = std::move(cand);
            seed.energy = e;
        }
    }
    return seed;
}

}  // namespace

PearlResult pearl(std::vector<Instance> active, const DataMatrix& data,
                  const NeighborhoodGraph& graph, const PearlParams& params,
                  Labeling initial) {
    PearlResult result;
    result.instances = std::move(active);
    for (auto& inst : result.instances) inst.state = Instance::State::Active;

    const uint32_t outlier = static_cast<uint32_t>(result.instances.size());
    if (initial.assignment.size() != data.rows())
        initial.assignment.assign(data.rows(), outlier);
    for (auto& l : initial.assignment)
        if (l > outlier) l = outlier;
    result.labeling = std::move(initial);

    double prev_energy = std::numeric_limits<double>::infinity();
    for (int round = 0; round < params.max_rounds; ++round) {
        LabelingProblem problem = build_problem(result.instances, data, graph, params);
        result.labeling = alpha_expansion(problem, std::move(result.labeling));

        // Refit each instance on its assigned points; keep the new
        // parameters only if they do not increase the truncated data cost.
        auto supports = supports_of(result.labeling.assignment, result.instances.size());
        bool refitted = false;
        for (size_t i = 0; i < result.instances.size(); ++i) {
            Instance& inst = result.instances[i];
            const auto& support = supports[i];
            if (support.size() < static_cast<size_t>(inst.model().minimal_sample_size))
                continue;
            auto cand = refit(inst.class_id, data, support);
            if (!cand) continue;
            cand->state = Instance::State::Active;
            const double eps = params.epsilon_by_class[static_cast<int>(inst.class_id)];
            const double trunc = 2.25 * eps * eps;
            double old_cost = 0.0, new_cost = 0.0;
            for (size_t p : support) {
                const double ro = residual(inst, data, p);
                const double rn = residual(*cand, data, p);
                old_cost += std::min(ro * ro, trunc);
                new_cost += std::min(rn * rn, trunc);
            }
            if (new_cost <= old_cost + 1e-12) {
                inst = std::move(*cand);
                refitted = true;
            }
        }
        if (refitted) {
            problem = build_problem(result.instances, data, graph, params);
            result.labeling.energy = energy(problem, result.labeling.assignment);
        }

        // Prune: under-supported instances go unconditionally; others go
        // when dropping them lowers the total energy. The expansion-based
        // evaluation is gated by a cheap data-cost bound, except for the
        // two weakest instances which are always evaluated in full.
        for (bool pruned = true; pruned && !result.instances.empty();) {
            pruned = false;
            supports = supports_of(result.labeling.assignment, result.instances.size());
            std::vector<size_t> order(result.instances.size());
            std::iota(order.begin(), order.end(), size_t{0});
            std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
                return supports[a].size() < supports[b].size();
            });
            for (size_t pos = 0; pos < order.size(); ++pos) {
                const size_t i = order[pos];
                const bool forced =
                    supports[i].size() < instance_floor(result.instances[i], params);
                if (!forced && pos >= 2 &&
                    !improves(naive_drop_energy(problem, result.labeling.assignment, i,
                                                supports[i]),
                              result.labeling.energy.total))
                    continue;
                std::vector<Instance> survivors;
                Labeling reduced = drop_instance(result.instances, i, data, graph, params,
                                                 result.labeling.assignment, survivors);
                if (forced || improves(reduced.energy.total, result.labeling.energy.total)) {
                    result.instances = std::move(survivors);
                    result.labeling = std::move(reduced);
                    problem = build_problem(result.instances, data, graph, params);
                    pruned = true;
                    break;
                }
            }
        }

        const double e = result.labeling.energy.total;
        if (std::abs(prev_energy - e) <
            params.convergence_rel * std::max(1.0, std::abs(prev_energy)))
            break;
        prev_energy = e;
    }
    return result;
}

}  // namespace progx
