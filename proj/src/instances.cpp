#include "flowshop/instances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "flowshop/rng.hpp"

namespace flowshop {

namespace {

// Round-trip-exact double formatting.
std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_fixed6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

struct LineReader {
    std::istream& in;
    int line_no = 0;

    // Next non-blank, non-comment line; nullopt at EOF.
    std::optional<std::string> next() {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            std::size_t start = line.find_first_not_of(" \t\r");
            if (start == std::string::npos) continue;
            if (line[start] == '#') continue;
            return line;
        }
        return std::nullopt;
    }

    std::string expect(const std::string& what) {
        auto line = next();
        if (!line) throw ParseError(line_no + 1, "unexpected end of file, expected " + what);
        return *line;
    }
};

double parse_double(const std::string& tok, int line_no) {
    try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line_no, "expected a number, got '" + tok + "'");
    }
}

long parse_int(const std::string& tok, int line_no) {
    try {
        std::size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line_no, "expected an integer, got '" + tok + "'");
    }
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

} // namespace

Instance generate_instance(const DistributionConfig& cfg, std::mt19937_64& gen) {
    Instance inst;
    inst.machines = cfg.machines;

    int n = static_cast<int>(std::lround(rng::normal(gen, cfg.n_mean, cfg.n_std)));
    n = std::clamp(n, std::max(1, cfg.n_min), cfg.n_max);
    inst.tasks = n;

    inst.proc = Matrix(cfg.machines, n);
    for (int i = 0; i < cfg.machines; ++i)
        for (int j = 0; j < n; ++j)
            inst.proc(i, j) = rng::truncated_normal(gen, cfg.t_mean, cfg.t_std, cfg.t_trunc);

    // Partition tasks into orders; the last order absorbs the remainder.
    int next = 0;
    int k = 0;
    double weight_sum = 0.0;
    while (next < n) {
        int size = static_cast<int>(
            rng::uniform_int(gen, cfg.order_size_min, cfg.order_size_max));
        size = std::min(size, n - next);
        Order o;
        o.id = "O" + std::to_string(k++);
        double d = cfg.deadline_choices[static_cast<std::size_t>(
            rng::uniform_int(gen, 0, static_cast<std::int64_t>(cfg.deadline_choices.size()) - 1))];
        if (cfg.scale_deadlines_by_n) d *= static_cast<double>(n) / cfg.deadline_scale_ref;
        o.deadline = d;
        o.weight = static_cast<double>(
            rng::uniform_int(gen, cfg.weight_score_min, cfg.weight_score_max));
        weight_sum += o.weight;
        for (int t = 0; t < size; ++t) o.tasks.push_back(next++);
        inst.orders.push_back(std::move(o));
    }
    for (Order& o : inst.orders) o.weight /= weight_sum;

    inst.ready.assign(cfg.machines, 0.0);
    return inst;
}

void write_instance(std::ostream& out, const Instance& inst) {
    out << "flowshop-instance v1\n";
    out << "machines " << inst.machines << "\n";
    out << "tasks " << inst.tasks << "\n";
    out << "orders " << inst.orders.size() << "\n";
    for (const Order& o : inst.orders) {
        out << "order " << o.id << " " << fmt_double(o.deadline) << " "
            << fmt_double(o.weight) << " :";
        for (int j : o.tasks) out << " " << j;
        out << "\n";
    }
    out << "proc\n";
    for (int i = 0; i < inst.machines; ++i) {
        for (int j = 0; j < inst.tasks; ++j)
            out << (j ? " " : "") << fmt_double(inst.proc(i, j));
        out << "\n";
    }
    out << "ready";
    for (double r : inst.ready) out << " " << fmt_double(r);
    out << "\n";
    out << "end\n";
}

void write_instance(const std::filesystem::path& path, const Instance& inst) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_instance(f, inst);
}

Instance read_instance(std::istream& in) {
    LineReader rd{in};

    std::string header = rd.expect("header");
    if (split_ws(header) != std::vector<std::string>{"flowshop-instance", "v1"})
        throw ParseError(rd.line_no, "expected header 'flowshop-instance v1'");

    auto keyed_int = [&](const std::string& key) {
        auto toks = split_ws(rd.expect(key + " line"));
        if (toks.size() != 2 || toks[0] != key)
            throw ParseError(rd.line_no, "expected '" + key + " <value>'");
        return parse_int(toks[1], rd.line_no);
    };

    Instance inst;
    inst.machines = static_cast<int>(keyed_int("machines"));
    inst.tasks = static_cast<int>(keyed_int("tasks"));
    const long n_orders = keyed_int("orders");
    if (inst.machines < 1) throw ParseError(rd.line_no, "machines must be >= 1");
    if (inst.tasks < 1) throw ParseError(rd.line_no, "tasks must be >= 1");
    if (n_orders < 0) throw ParseError(rd.line_no, "orders must be >= 0");

    for (long k = 0; k < n_orders; ++k) {
        auto toks = split_ws(rd.expect("order line"));
        if (toks.size() < 6 || toks[0] != "order")
            throw ParseError(rd.line_no, "expected 'order <id> <deadline> <weight> : <tasks...>'");
        Order o;
        o.id = toks[1];
        o.deadline = parse_double(toks[2], rd.line_no);
        o.weight = parse_double(toks[3], rd.line_no);
        if (toks[4] != ":")
            throw ParseError(rd.line_no, "expected ':' before the task list");
        for (std::size_t t = 5; t < toks.size(); ++t)
            o.tasks.push_back(static_cast<int>(parse_int(toks[t], rd.line_no)));
        inst.orders.push_back(std::move(o));
    }

    if (rd.expect("proc section") != "proc")
        throw ParseError(rd.line_no, "expected 'proc' section");
    inst.proc = Matrix(inst.machines, inst.tasks);
    for (int i = 0; i < inst.machines; ++i) {
        auto toks = split_ws(rd.expect("proc row"));
        if (static_cast<int>(toks.size()) != inst.tasks)
            throw ParseError(rd.line_no, "proc row has " + std::to_string(toks.size()) +
                                             " values, expected " + std::to_string(inst.tasks));
        for (int j = 0; j < inst.tasks; ++j)
            inst.proc(i, j) = parse_double(toks[j], rd.line_no);
    }

    auto ready_toks = split_ws(rd.expect("ready line"));
    if (ready_toks.empty() || ready_toks[0] != "ready" ||
        static_cast<int>(ready_toks.size()) != inst.machines + 1)
        throw ParseError(rd.line_no, "expected 'ready' with one value per machine");
    for (int i = 0; i < inst.machines; ++i)
        inst.ready.push_back(parse_double(ready_toks[i + 1], rd.line_no));

    if (rd.expect("end marker") != "end")
        throw ParseError(rd.line_no, "expected 'end'");
    return inst;
}

Instance read_instance(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    return read_instance(f);
}

void write_schedule_csv(std::ostream& out, const Instance& inst, const Schedule& sched) {
    const auto cm = completion_matrix(inst, sched.perm);
    const auto task_order = order_of_task(inst);
    out << "position,task_id,order_id,completion_m\n";
    for (std::size_t p = 0; p < sched.perm.size(); ++p) {
        const int j = sched.perm[p];
        const int k = task_order[j];
        out << p << "," << j << "," << (k >= 0 ? inst.orders[k].id : "-") << ","
            << fmt_fixed6(cm.times(inst.machines - 1, p)) << "\n";
    }
}

void write_schedule_csv(const std::filesystem::path& path, const Instance& inst,
                        const Schedule& sched) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_schedule_csv(f, inst, sched);
}

void write_order_csv(std::ostream& out, const Instance& inst, const Schedule& sched) {
    const auto cm = completion_matrix(inst, sched.perm);
    const auto T = order_completion(inst, cm);
    out << "order_id,completion,deadline,weight,tardiness,weighted_tardiness\n";
    double total = 0.0;
    for (std::size_t k = 0; k < inst.orders.size(); ++k) {
        const Order& o = inst.orders[k];
        const double tard = std::max(T[k] - o.deadline, 0.0);
        total += o.weight * tard;
        out << o.id << "," << fmt_fixed6(T[k]) << "," << fmt_fixed6(o.deadline) << ","
            << fmt_fixed6(o.weight) << "," << fmt_fixed6(tard) << ","
            << fmt_fixed6(o.weight * tard) << "\n";
    }
    out << "TOTAL,,,,," << fmt_fixed6(total) << "\n";
}

void write_order_csv(const std::filesystem::path& path, const Instance& inst,
                     const Schedule& sched) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_order_csv(f, inst, sched);
}

std::vector<int> read_schedule_csv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    int line_no = 0;
    std::vector<int> perm;
    while (std::getline(f, line)) {
        ++line_no;
        if (line_no == 1) {
            if (line.rfind("position,task_id", 0) != 0)
                throw ParseError(line_no, "expected schedule CSV header");
            continue;
        }
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string pos_s, task_s;
        if (!std::getline(ss, pos_s, ',') || !std::getline(ss, task_s, ','))
            throw ParseError(line_no, "malformed schedule row");
        perm.push_back(static_cast<int>(parse_int(task_s, line_no)));
    }
    return perm;
}

std::optional<Instance> reschedule_instance(const Instance& inst, const Schedule& sched,
                                            double t_now,
                                            const std::vector<IncomingOrder>& new_orders) {
    if (t_now < 0.0) throw std::invalid_argument("t_now must be >= 0");
    const auto cm = completion_matrix(inst, sched.perm); // validates the schedule
    const int m = inst.machines;

    // A task is started once its machine-1 operation has begun; started tasks
    // run to completion on every machine and survive only through ready[].
    int last_started = -1;
    std::vector<char> started(inst.tasks, 0);
    for (std::size_t p = 0; p < sched.perm.size(); ++p) {
        const int j = sched.perm[p];
        const double start_m1 = cm.times(0, p) - inst.proc(0, j);
        if (start_m1 < t_now) {
            started[j] = 1;
            last_started = static_cast<int>(p);
        }
    }

    std::vector<double> ready(m, t_now);
    if (last_started >= 0)
        for (int i = 0; i < m; ++i)
            ready[i] = std::max(t_now, cm.times(i, last_started));

    // Surviving tasks keep their orders (with deadlines); new orders append.
    Instance out;
    out.machines = m;
    std::vector<int> new_index(inst.tasks, -1);
    int n_out = 0;
    for (int j = 0; j < inst.tasks; ++j)
        if (!started[j]) new_index[j] = n_out++;
    for (const IncomingOrder& o : new_orders)
        n_out += static_cast<int>(o.task_proc.size());
    if (n_out == 0) return std::nullopt; // nothing to schedule

    out.tasks = n_out;
    out.proc = Matrix(m, n_out);
    for (int j = 0; j < inst.tasks; ++j) {
        if (new_index[j] < 0) continue;
        for (int i = 0; i < m; ++i) out.proc(i, new_index[j]) = inst.proc(i, j);
    }

    double weight_sum = 0.0;
    for (const Order& o : inst.orders) {
        Order kept;
        kept.id = o.id;
        kept.deadline = o.deadline;
        kept.weight = o.weight;
        for (int j : o.tasks)
            if (new_index[j] >= 0) kept.tasks.push_back(new_index[j]);
        if (!kept.tasks.empty()) {
            weight_sum += kept.weight;
            out.orders.push_back(std::move(kept));
        }
    }
    int next_task = 0;
    for (int j = 0; j < inst.tasks; ++j)
        if (new_index[j] >= 0) next_task = std::max(next_task, new_index[j] + 1);
    for (const IncomingOrder& o : new_orders) {
        if (o.task_proc.empty()) throw std::invalid_argument("incoming order without tasks");
        Order fresh;
        fresh.id = o.id;
        fresh.deadline = o.deadline;
        fresh.weight = o.weight;
        for (const auto& col : o.task_proc) {
            if (static_cast<int>(col.size()) != m)
                throw std::invalid_argument("incoming task does not have m processing times");
            for (int i = 0; i < m; ++i) out.proc(i, next_task) = col[i];
            fresh.tasks.push_back(next_task++);
        }
        weight_sum += fresh.weight;
        out.orders.push_back(std::move(fresh));
    }
    for (Order& o : out.orders) o.weight /= weight_sum;

    out.ready = std::move(ready);
    return out;
}

} // namespace flowshop
