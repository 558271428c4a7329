#ifndef FLOWSHOP_HEURISTICS_HPP
#define FLOWSHOP_HEURISTICS_HPP

#include <string>

#include "flowshop/core.hpp"

namespace flowshop {

struct HeuristicResult {
    Schedule schedule;
    std::string heuristic_name;
    long eval_count = 0; // objective evaluations performed (partial ones included)
};

// Sorts tasks by descending w_k / sum_i t_ij; ties go to the lower task index.
HeuristicResult greedy_schedule(const Instance& inst);

// NEH adapted to weighted tardiness: tasks in descending total processing
// time, each inserted at the position of the partial sequence with the lowest
// partial objective (first such position on ties).
HeuristicResult neh_schedule(const Instance& inst);

// Two-phase heuristic. Phase 1 seeds with the descending total-processing-time
// sequence. Phase 2 scans ordered position pairs (a before b) and applies a
// swap when it strictly improves the objective; a task that has moved forward
// never moves backward again. Stops when a full scan applies no swap.
HeuristicResult suliman_schedule(const Instance& inst);

// min(NEH, Suliman) objective; the training baseline.
double best_heuristic_baseline(const Instance& inst);

} // namespace flowshop

#endif
