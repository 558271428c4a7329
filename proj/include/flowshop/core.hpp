#ifndef FLOWSHOP_CORE_HPP
#define FLOWSHOP_CORE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flowshop/matrix.hpp"

namespace flowshop {

// An order groups one or more production tasks. Tardiness is assessed per
// order, at the final completion of its last task.
struct Order {
    std::string id;
    double deadline = 0.0; // hours
    double weight = 0.0;   // normalized so that instance weights sum to 1
    std::vector<int> tasks; // 0-based task indices

    bool operator==(const Order&) const = default;
};

// A permutation flow shop instance: m machines in series, n tasks, every task
// visits machines 0..m-1 in order. `ready[i]` is the earliest time machine i
// may start (all zero for a fresh instance; nonzero after rescheduling).
struct Instance {
    int machines = 0;                 // m
    int tasks = 0;                    // n
    Matrix proc;                      // m x n processing times, hours
    std::vector<Order> orders;
    std::vector<double> ready;        // size m, hours

    bool operator==(const Instance&) const = default;
};

struct Schedule {
    std::vector<int> perm;            // permutation of 0..n-1
    std::optional<double> objective;  // total weighted tardiness, weighted hours

    bool operator==(const Schedule&) const = default;
};

// Completion times of a scheduled sequence. times(i, p) is the completion of
// the p-th scheduled task on machine i; the perm is carried along so order
// completions can be attributed.
struct CompletionMatrix {
    Matrix times; // m x n
    std::vector<int> perm;
};

// Map from task index to the position of its order in inst.orders (-1 for a
// task not covered by any order).
std::vector<int> order_of_task(const Instance& inst);

// Completion-time recurrences. Machine i never starts before ready[i]; a task
// starts on machine i once it finished on machine i-1 and the previous task
// released machine i. Throws std::invalid_argument if perm is not a valid
// permutation for inst.
CompletionMatrix completion_matrix(const Instance& inst, const std::vector<int>& perm);

// Per-order completion time: the machine-m completion of the order's last
// task. Indexed like inst.orders.
std::vector<double> order_completion(const Instance& inst, const CompletionMatrix& cm);

// The objective: sum_k w_k * max(T(O_k) - d_k, 0).
double total_weighted_tardiness(const Instance& inst, const std::vector<int>& perm);

// Per-task feature rows (t_1j..t_mj, d_k(j), w_k(j)), min-max scaled into
// [0,1]. Processing times share one (min,max) over the whole matrix;
// deadlines and weights are scaled over the orders. A degenerate range
// (max == min) maps to the constant 0.5.
Matrix normalize_features(const Instance& inst);

// Returns every invariant violation found (empty result means the instance is
// well formed).
std::vector<std::string> validate_instance(const Instance& inst);

// Evaluates sequences against one instance with the task->order map and
// per-order state built once. `eval` accepts any subsequence of distinct
// tasks: orders without a scheduled task contribute nothing, partially
// scheduled orders are assessed over their scheduled tasks only. For a full
// permutation this is exactly the total weighted tardiness.
class ObjectiveEvaluator {
public:
    explicit ObjectiveEvaluator(const Instance& inst);

    double eval(std::span<const int> seq) const;
    long eval_count() const { return evals_; }

private:
    const Instance& inst_;
    std::vector<int> task_order_;
    // scratch, reused across calls
    mutable std::vector<double> machine_clock_;
    mutable std::vector<double> order_completion_;
    mutable long evals_ = 0;
};

} // namespace flowshop

#endif
