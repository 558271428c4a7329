#include "flowshop/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flowshop {

namespace {

void check_perm(const Instance& inst, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != inst.tasks)
        throw std::invalid_argument("permutation length does not match task count");
    std::vector<char> seen(inst.tasks, 0);
    for (int j : perm) {
        if (j < 0 || j >= inst.tasks || seen[j])
            throw std::invalid_argument("sequence is not a permutation of the tasks");
        seen[j] = 1;
    }
}

double scale01(double v, double lo, double hi) {
    if (hi == lo) return 0.5;
    return (v - lo) / (hi - lo);
}

} // namespace

std::vector<int> order_of_task(const Instance& inst) {
    std::vector<int> map(inst.tasks, -1);
    for (std::size_t k = 0; k < inst.orders.size(); ++k) {
        for (int j : inst.orders[k].tasks) {
            if (j >= 0 && j < inst.tasks) map[j] = static_cast<int>(k);
        }
    }
    return map;
}

CompletionMatrix completion_matrix(const Instance& inst, const std::vector<int>& perm) {
    check_perm(inst, perm);
    if (inst.proc.rows != static_cast<std::size_t>(inst.machines) ||
        inst.proc.cols != static_cast<std::size_t>(inst.tasks))
        throw std::invalid_argument("processing-time matrix does not match m x n");

    const int m = inst.machines;
    const int n = inst.tasks;
    CompletionMatrix cm;
    cm.perm = perm;
    cm.times = Matrix(m, n);
    for (int p = 0; p < n; ++p) {
        const int j = perm[p];
        for (int i = 0; i < m; ++i) {
            const double prev_machine = i > 0 ? cm.times(i - 1, p) : 0.0;
            const double prev_task = p > 0 ? cm.times(i, p - 1) : 0.0;
            const double ready = inst.ready.empty() ? 0.0 : inst.ready[i];
            const double start = std::max({prev_machine, prev_task, ready});
            cm.times(i, p) = start + inst.proc(i, j);
        }
    }
    return cm;
}

std::vector<double> order_completion(const Instance& inst, const CompletionMatrix& cm) {
    const auto task_order = order_of_task(inst);
    const int m = inst.machines;
    std::vector<double> T(inst.orders.size(), -1.0);
    for (std::size_t p = 0; p < cm.perm.size(); ++p) {
        const int k = task_order[cm.perm[p]];
        if (k < 0) continue;
        T[k] = std::max(T[k], cm.times(m - 1, p));
    }
    for (std::size_t k = 0; k < T.size(); ++k) {
        if (T[k] < 0.0)
            throw std::logic_error("order " + inst.orders[k].id + " has no scheduled task");
    }
    return T;
}

double total_weighted_tardiness(const Instance& inst, const std::vector<int>& perm) {
    check_perm(inst, perm);
    ObjectiveEvaluator ev(inst);
    return ev.eval(perm);
}

Matrix normalize_features(const Instance& inst) {
    const int m = inst.machines;
    const int n = inst.tasks;
    const auto task_order = order_of_task(inst);

    double t_lo = inst.proc.data.empty() ? 0.0 : inst.proc.data[0];
    double t_hi = t_lo;
    for (double t : inst.proc.data) {
        t_lo = std::min(t_lo, t);
        t_hi = std::max(t_hi, t);
    }
    double d_lo = 0.0, d_hi = 0.0, w_lo = 0.0, w_hi = 0.0;
    if (!inst.orders.empty()) {
        d_lo = d_hi = inst.orders[0].deadline;
        w_lo = w_hi = inst.orders[0].weight;
        for (const Order& o : inst.orders) {
            d_lo = std::min(d_lo, o.deadline);
            d_hi = std::max(d_hi, o.deadline);
            w_lo = std::min(w_lo, o.weight);
            w_hi = std::max(w_hi, o.weight);
        }
    }

    Matrix f(n, m + 2);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) f(j, i) = scale01(inst.proc(i, j), t_lo, t_hi);
        const int k = task_order[j];
        const double d = k >= 0 ? inst.orders[k].deadline : 0.0;
        const double w = k >= 0 ? inst.orders[k].weight : 0.0;
        f(j, m) = scale01(d, d_lo, d_hi);
        f(j, m + 1) = scale01(w, w_lo, w_hi);
    }
    return f;
}

std::vector<std::string> validate_instance(const Instance& inst) {
    std::vector<std::string> bad;
    auto add = [&](std::string msg) { bad.push_back(std::move(msg)); };

    if (inst.machines < 1) add("machine count must be >= 1");
    if (inst.tasks < 1) add("task count must be >= 1");
    if (inst.proc.rows != static_cast<std::size_t>(inst.machines) ||
        inst.proc.cols != static_cast<std::size_t>(inst.tasks)) {
        add("processing-time matrix is not m x n");
        return bad; // dimensions are off, the element checks below would lie
    }
    for (int i = 0; i < inst.machines; ++i) {
        for (int j = 0; j < inst.tasks; ++j) {
            if (!(inst.proc(i, j) > 0.0))
                add("nonpositive processing time at machine " + std::to_string(i) +
                    ", task " + std::to_string(j));
        }
    }
    if (inst.ready.size() != static_cast<std::size_t>(inst.machines)) {
        add("ready vector is not length m");
    } else {
        for (int i = 0; i < inst.machines; ++i) {
            if (inst.ready[i] < 0.0)
                add("negative ready time on machine " + std::to_string(i));
        }
    }

    std::vector<int> owners(inst.tasks, 0);
    double weight_sum = 0.0;
    std::vector<std::string> ids;
    for (const Order& o : inst.orders) {
        if (o.tasks.empty()) add("order " + o.id + " has no tasks");
        if (o.weight < 0.0) add("order " + o.id + " has negative weight");
        if (o.deadline < 0.0) add("order " + o.id + " has negative deadline");
        weight_sum += o.weight;
        ids.push_back(o.id);
        for (int j : o.tasks) {
            if (j < 0 || j >= inst.tasks)
                add("order " + o.id + " references task " + std::to_string(j) +
                    " out of range");
            else
                ++owners[j];
        }
    }
    for (int j = 0; j < inst.tasks; ++j) {
        if (owners[j] == 0) add("task " + std::to_string(j) + " belongs to no order");
        if (owners[j] > 1) add("task " + std::to_string(j) + " belongs to multiple orders");
    }
    if (!inst.orders.empty() && std::abs(weight_sum - 1.0) > 1e-9)
        add("weights not normalized (sum differs from 1)");
    std::sort(ids.begin(), ids.end());
    for (std::size_t k = 1; k < ids.size(); ++k) {
        if (ids[k] == ids[k - 1]) {
            add("duplicate order id " + ids[k]);
            break;
        }
    }
    return bad;
}

ObjectiveEvaluator::ObjectiveEvaluator(const Instance& inst)
    : inst_(inst),
      task_order_(order_of_task(inst)),
      machine_clock_(inst.machines, 0.0),
      order_completion_(inst.orders.size(), 0.0) {}

double ObjectiveEvaluator::eval(std::span<const int> seq) const {
    ++evals_;
    const int m = inst_.machines;
    for (int i = 0; i < m; ++i)
        machine_clock_[i] = inst_.ready.empty() ? 0.0 : inst_.ready[i];
    std::fill(order_completion_.begin(), order_completion_.end(), -1.0);

    for (int j : seq) {
        double prev = 0.0;
        for (int i = 0; i < m; ++i) {
            const double start = std::max(prev, machine_clock_[i]);
            prev = start + inst_.proc(i, j);
            machine_clock_[i] = prev;
        }
        const int k = task_order_[j];
        if (k >= 0) order_completion_[k] = std::max(order_completion_[k], prev);
    }

    double total = 0.0;
    for (std::size_t k = 0; k < order_completion_.size(); ++k) {
        if (order_completion_[k] < 0.0) continue; // order has no scheduled task
        const double late = order_completion_[k] - inst_.orders[k].deadline;
        if (late > 0.0) total += inst_.orders[k].weight * late;
    }
    return total;
}

} // namespace flowshop
