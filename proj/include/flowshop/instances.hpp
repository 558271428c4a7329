#ifndef FLOWSHOP_INSTANCES_HPP
#define FLOWSHOP_INSTANCES_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowshop/core.hpp"

namespace flowshop {

// Parameters of the synthetic instance distribution.
struct DistributionConfig {
    int machines = 5;
    double n_mean = 124.0;
    double n_std = 33.0;
    int n_min = 1;
    int n_max = 500;
    double t_mean = 2.4; // hours
    double t_std = 1.6;
    double t_trunc = 0.05; // processing times resampled until > t_trunc
    std::vector<double> deadline_choices = {24, 36, 48, 60, 72, 96, 120};
    // When set, each drawn deadline is multiplied by n / deadline_scale_ref so
    // deadline pressure tracks the instance size.
    bool scale_deadlines_by_n = false;
    double deadline_scale_ref = 124.0;
    int order_size_min = 1;
    int order_size_max = 4;
    int weight_score_min = 1;
    int weight_score_max = 10;

    bool operator==(const DistributionConfig&) const = default;
};

Instance generate_instance(const DistributionConfig& cfg, std::mt19937_64& rng);

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Text instance format, versioned, lossless (floats carry max_digits10
// significant digits so parsing returns the identical double).
void write_instance(std::ostream& out, const Instance& inst);
void write_instance(const std::filesystem::path& path, const Instance& inst);
Instance read_instance(std::istream& in); // throws ParseError
Instance read_instance(const std::filesystem::path& path);

// Schedule exports. The schedule CSV lists (position, task_id, order_id,
// completion on the last machine); the order CSV lists per-order completion,
// deadline, weight and tardiness with a trailing TOTAL row carrying the
// objective.
void write_schedule_csv(std::ostream& out, const Instance& inst, const Schedule& sched);
void write_schedule_csv(const std::filesystem::path& path, const Instance& inst,
                        const Schedule& sched);
void write_order_csv(std::ostream& out, const Instance& inst, const Schedule& sched);
void write_order_csv(const std::filesystem::path& path, const Instance& inst,
                     const Schedule& sched);
// Reads back the permutation column of a schedule CSV.
std::vector<int> read_schedule_csv(const std::filesystem::path& path);

// An order arriving mid-execution: per-task processing times (each an
// m-vector) plus deadline and raw weight.
struct IncomingOrder {
    std::string id;
    double deadline = 0.0;
    double weight = 1.0;
    std::vector<std::vector<double>> task_proc;
};

// Rebuilds an instance at wall time t_now under the given schedule: tasks not
// yet started on machine 1 survive, new orders join, machine i becomes
// available at max(t_now, completion on machine i of the last started task).
// Weights are renormalized to sum 1. Returns nullopt when nothing remains to
// schedule. Throws std::invalid_argument for t_now < 0 or an invalid schedule.
std::optional<Instance> reschedule_instance(const Instance& inst, const Schedule& sched,
                                            double t_now,
                                            const std::vector<IncomingOrder>& new_orders);

} // namespace flowshop

#endif
