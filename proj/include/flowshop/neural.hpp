#ifndef FLOWSHOP_NEURAL_HPP
#define FLOWSHOP_NEURAL_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <random>
#include <utility>
#include <vector>

#include "flowshop/core.hpp"

namespace flowshop {

// Model dimensions. input_dim is m+2 (per-task processing times plus the
// order's deadline and weight); hidden is the LSTM width; widths[0..4] are the
// decoder layer sizes n1..n5.
struct PolicyDims {
    int input_dim = 7;
    int hidden = 128;
    std::array<int, 5> widths = {256, 256, 128, 64, 64};

    bool operator==(const PolicyDims&) const = default;
};

// All parameters live in one flat array; the block layout is fixed by the
// dimensions (see neural.cpp). Gradients and Adam moments share the layout.
struct PolicyParams {
    PolicyDims dims;
    std::vector<double> theta;

    static PolicyParams zeros(const PolicyDims& dims);
    // uniform(-1/sqrt(hidden), +1/sqrt(hidden)) entries
    static PolicyParams random_init(const PolicyDims& dims, std::uint64_t seed);

    std::size_t size() const { return theta.size(); }
    bool operator==(const PolicyParams&) const = default;
};

std::size_t param_count(const PolicyDims& dims);

// Per-task encoder states plus their mean embedding.
struct Encoding {
    Matrix hidden;            // n x H, row j is h_j
    std::vector<double> mean; // H
};

struct DecodeTrace {
    std::vector<int> perm;
    std::vector<double> step_logps; // log p(pi_t | x, pi_1..t-1)
    double total_logp = 0.0;
};

enum class DecodeMode { Sample, Greedy };

// LSTM pass over the task rows in index order (h_0 = c_0 = 0), plus the mean
// of the hidden states. features must be n x input_dim.
Encoding encode(const Matrix& features, const PolicyParams& params);

// One decoder step: the probability of picking each task given the mean
// embedding, the previous context vector and the encoder states. Masked
// entries (mask[j] != 0) get probability exactly 0. Throws if every task is
// masked.
std::vector<double> decode_step(const std::vector<double>& mean,
                                const std::vector<double>& prev_h,
                                const Matrix& hidden,
                                const std::vector<char>& mask,
                                const PolicyParams& params);

// Runs n decode steps to build a schedule. Step 1 uses the learned start
// vector as the previous context; step t>1 uses the encoder state of the task
// chosen at t-1. Greedy mode ignores rng and breaks ties toward the lowest
// task index.
DecodeTrace sample_schedule(const Instance& inst, const PolicyParams& params,
                            DecodeMode mode, std::mt19937_64& rng);

// Exact reverse-mode gradient of the total log-probability of emitting `perm`,
// with respect to every parameter (backpropagated through the decoder, the
// mean embedding and the LSTM across time).
std::pair<double, std::vector<double>> log_prob_and_grad(const Instance& inst,
                                                         const PolicyParams& params,
                                                         const std::vector<int>& perm);

// Binary checkpoint with dimensions, flat parameters and a CRC32. Round-trips
// bit-exactly.
void save_checkpoint(const std::filesystem::path& path, const PolicyParams& params);
PolicyParams load_checkpoint(const std::filesystem::path& path);

} // namespace flowshop

#endif
