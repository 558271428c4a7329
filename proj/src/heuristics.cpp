#include "flowshop/heuristics.hpp"

#include <algorithm>
#include <numeric>

namespace flowshop {

namespace {

std::vector<double> column_totals(const Instance& inst) {
    std::vector<double> tot(inst.tasks, 0.0);
    for (int j = 0; j < inst.tasks; ++j)
        for (int i = 0; i < inst.machines; ++i) tot[j] += inst.proc(i, j);
    return tot;
}

// Task indices sorted by descending total processing time, lowest index first
// on ties. Shared by NEH and the Suliman seed.
std::vector<int> descending_total_time(const Instance& inst) {
    const auto tot = column_totals(inst);
    std::vector<int> idx(inst.tasks);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return tot[a] > tot[b]; });
    return idx;
}

} // namespace

HeuristicResult greedy_schedule(const Instance& inst) {
    const auto tot = column_totals(inst);
    const auto task_order = order_of_task(inst);
    std::vector<double> priority(inst.tasks, 0.0);
    for (int j = 0; j < inst.tasks; ++j) {
        const int k = task_order[j];
        const double w = k >= 0 ? inst.orders[k].weight : 0.0;
        priority[j] = w / tot[j];
    }
    std::vector<int> perm(inst.tasks);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return priority[a] > priority[b]; });

    ObjectiveEvaluator ev(inst);
    HeuristicResult res;
    res.schedule.perm = std::move(perm);
    res.schedule.objective = ev.eval(res.schedule.perm);
    res.heuristic_name = "greedy";
    res.eval_count = ev.eval_count();
    return res;
}

HeuristicResult neh_schedule(const Instance& inst) {
    const auto order = descending_total_time(inst);
    ObjectiveEvaluator ev(inst);

    std::vector<int> seq;
    seq.reserve(inst.tasks);
    std::vector<int> trial;
    trial.reserve(inst.tasks);
    for (int j : order) {
        int best_pos = 0;
        double best_obj = 0.0;
        for (std::size_t p = 0; p <= seq.size(); ++p) {
            trial.assign(seq.begin(), seq.begin() + p);
            trial.push_back(j);
            trial.insert(trial.end(), seq.begin() + p, seq.end());
            const double obj = ev.eval(trial);
            if (p == 0 || obj < best_obj) {
                best_obj = obj;
                best_pos = static_cast<int>(p);
            }
        }
        seq.insert(seq.begin() + best_pos, j);
    }

    HeuristicResult res;
    res.schedule.perm = std::move(seq);
    res.schedule.objective = ev.eval(res.schedule.perm);
    res.heuristic_name = "neh";
    res.eval_count = ev.eval_count();
    return res;
}

HeuristicResult suliman_schedule(const Instance& inst) {
    std::vector<int> perm = descending_total_time(inst);
    ObjectiveEvaluator ev(inst);
    double current = ev.eval(perm);

    const int n = inst.tasks;
    std::vector<char> moved_forward(n, 0);
    bool improved = true;
    while (improved) {
        improved = false;
        for (int a = 0; a < n - 1; ++a) {
            for (int b = a + 1; b < n; ++b) {
                // swapping positions a<b moves perm[a] backward and perm[b] forward
                if (moved_forward[perm[a]]) continue;
                std::swap(perm[a], perm[b]);
                const double obj = ev.eval(perm);
                if (obj < current) {
                    current = obj;
                    moved_forward[perm[a]] = 1; // the task now at the earlier position
                    improved = true;
                } else {
                    std::swap(perm[a], perm[b]);
                }
            }
        }
    }

    HeuristicResult res;
    res.schedule.perm = std::move(perm);
    res.schedule.objective = current;
    res.heuristic_name = "suliman";
    res.eval_count = ev.eval_count();
    return res;
}

double best_heuristic_baseline(const Instance& inst) {
    const double neh = *neh_schedule(inst).schedule.objective;
    const double sul = *suliman_schedule(inst).schedule.objective;
    return std::min(neh, sul);
}

} // namespace flowshop
