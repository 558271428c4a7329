#include "flowshop/neural.hpp"

#include <zlib.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "flowshop/rng.hpp"

namespace flowshop {

namespace {

// ---------------------------------------------------------------------------
// parameter layout

struct Layout {
    int D, H, n1, n2, n3, n4, n5;
    std::size_t wi, wf, wo, wg;     // gate matrices, H x (D+H)
    std::size_t bi, bf, bo, bg;     // gate biases, H
    std::size_t start;              // start context vector, H
    std::size_t w1, b1;             // n1 x H
    std::size_t w2, b2;             // n2 x (n1 + 2H)
    std::size_t w3, b3;             // n3 x n2
    std::size_t w4, b4;             // n4 x n3
    std::size_t w5, b5;             // n5 x n4
    std::size_t wp, bp;             // scoring head, H x n5
    std::size_t total;
};

Layout make_layout(const PolicyDims& d) {
    if (d.input_dim < 1 || d.hidden < 1) throw std::invalid_argument("bad policy dims");
    for (int w : d.widths)
        if (w < 1) throw std::invalid_argument("bad policy dims");
    if (!(d.widths[2] >= d.widths[3] && d.widths[3] >= d.widths[4]))
        throw std::invalid_argument("decoder widths n3 >= n4 >= n5 required");

    Layout L{};
    L.D = d.input_dim;
    L.H = d.hidden;
    L.n1 = d.widths[0];
    L.n2 = d.widths[1];
    L.n3 = d.widths[2];
    L.n4 = d.widths[3];
    L.n5 = d.widths[4];

    std::size_t off = 0;
    auto take = [&off](std::size_t count) {
        const std::size_t at = off;
        off += count;
        return at;
    };
    const std::size_t gate = static_cast<std::size_t>(L.H) * (L.D + L.H);
    L.wi = take(gate);
    L.wf = take(gate);
    L.wo = take(gate);
    L.wg = take(gate);
    L.bi = take(L.H);
    L.bf = take(L.H);
    L.bo = take(L.H);
    L.bg = take(L.H);
    L.start = take(L.H);
    L.w1 = take(static_cast<std::size_t>(L.n1) * L.H);
    L.b1 = take(L.n1);
    L.w2 = take(static_cast<std::size_t>(L.n2) * (L.n1 + 2 * L.H));
    L.b2 = take(L.n2);
    L.w3 = take(static_cast<std::size_t>(L.n3) * L.n2);
    L.b3 = take(L.n3);
    L.w4 = take(static_cast<std::size_t>(L.n4) * L.n3);
    L.b4 = take(L.n4);
    L.w5 = take(static_cast<std::size_t>(L.n5) * L.n4);
    L.b5 = take(L.n5);
    L.wp = take(static_cast<std::size_t>(L.H) * L.n5);
    L.bp = take(L.H);
    L.total = off;
    return L;
}

// ---------------------------------------------------------------------------
// small dense kernels

// y = W x + b, W is rows x cols row-major
void affine(const double* W, const double* b, const double* x, double* y, int rows,
            int cols) {
    for (int r = 0; r < rows; ++r) {
        const double* w = W + static_cast<std::size_t>(r) * cols;
        double acc = b ? b[r] : 0.0;
        for (int c = 0; c < cols; ++c) acc += w[c] * x[c];
        y[r] = acc;
    }
}

// dx += W^T dy
void add_tmatvec(const double* W, const double* dy, double* dx, int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        const double* w = W + static_cast<std::size_t>(r) * cols;
        const double g = dy[r];
        if (g == 0.0) continue;
        for (int c = 0; c < cols; ++c) dx[c] += w[c] * g;
    }
}

// dW += dy x^T
void add_outer(double* dW, const double* dy, const double* x, int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        double* w = dW + static_cast<std::size_t>(r) * cols;
        const double g = dy[r];
        if (g == 0.0) continue;
        for (int c = 0; c < cols; ++c) w[c] += g * x[c];
    }
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void relu_inplace(double* v, int n) {
    for (int i = 0; i < n; ++i)
        if (v[i] < 0.0) v[i] = 0.0;
}

// ---------------------------------------------------------------------------
// forward caches

struct EncodeCache {
    Matrix x;                      // n x D
    Matrix ig, fg, og, gg;         // n x H, post-activation gates
    Matrix c, tc, h;               // n x H (cell, tanh(cell), hidden)
    std::vector<double> hbar;      // H
};

EncodeCache encode_forward(const Matrix& features, const PolicyParams& p, const Layout& L) {
    if (features.cols != static_cast<std::size_t>(L.D))
        throw std::invalid_argument("feature width does not match the model input_dim");
    const int n = static_cast<int>(features.rows);
    const int H = L.H;
    const int D = L.D;
    const double* th = p.theta.data();

    EncodeCache e;
    e.x = features;
    e.ig = Matrix(n, H);
    e.fg = Matrix(n, H);
    e.og = Matrix(n, H);
    e.gg = Matrix(n, H);
    e.c = Matrix(n, H);
    e.tc = Matrix(n, H);
    e.h = Matrix(n, H);
    e.hbar.assign(H, 0.0);

    std::vector<double> xh(D + H, 0.0);
    std::vector<double> zi(H), zf(H), zo(H), zg(H);
    for (int j = 0; j < n; ++j) {
        std::memcpy(xh.data(), features.row(j), sizeof(double) * D);
        if (j > 0)
            std::memcpy(xh.data() + D, e.h.row(j - 1), sizeof(double) * H);
        else
            std::memset(xh.data() + D, 0, sizeof(double) * H);

        affine(th + L.wi, th + L.bi, xh.data(), zi.data(), H, D + H);
        affine(th + L.wf, th + L.bf, xh.data(), zf.data(), H, D + H);
        affine(th + L.wo, th + L.bo, xh.data(), zo.data(), H, D + H);
        affine(th + L.wg, th + L.bg, xh.data(), zg.data(), H, D + H);

        for (int r = 0; r < H; ++r) {
            const double i_ = sigmoid(zi[r]);
            const double f_ = sigmoid(zf[r]);
            const double o_ = sigmoid(zo[r]);
            const double g_ = std::tanh(zg[r]);
            const double c_prev = j > 0 ? e.c(j - 1, r) : 0.0;
            const double c_ = f_ * c_prev + i_ * g_;
            const double tc_ = std::tanh(c_);
            e.ig(j, r) = i_;
            e.fg(j, r) = f_;
            e.og(j, r) = o_;
            e.gg(j, r) = g_;
            e.c(j, r) = c_;
            e.tc(j, r) = tc_;
            e.h(j, r) = o_ * tc_;
            e.hbar[r] += e.h(j, r);
        }
    }
    for (int r = 0; r < H; ++r) e.hbar[r] /= n;
    return e;
}

struct StepCache {
    std::vector<double> u1, in2, u2, u3, u4, u5, q; // post-activation layers
    std::vector<double> probs;                      // n, masked entries are 0
    std::vector<char> mask;                         // snapshot before the choice
    int chosen = -1;
    int prev = -1; // task whose encoder state served as prev_h; -1 = start vector
    double logp = 0.0;
};

// One decoder step; fills the cache and returns nothing (probs live in the
// cache). mask[j] != 0 means task j is no longer selectable.
void decode_forward(const std::vector<double>& hbar, const double* prev_h,
                    const Matrix& hidden, const std::vector<char>& mask,
                    const PolicyParams& p, const Layout& L, StepCache& s) {
    const int n = static_cast<int>(hidden.rows);
    const int H = L.H;
    const double* th = p.theta.data();

    int avail = 0;
    for (int j = 0; j < n; ++j)
        if (!mask[j]) ++avail;
    if (avail == 0) throw std::invalid_argument("decode_step: every task is masked");

    s.mask = mask;
    s.u1.resize(L.n1);
    affine(th + L.w1, th + L.b1, hbar.data(), s.u1.data(), L.n1, H);
    relu_inplace(s.u1.data(), L.n1);

    s.in2.resize(L.n1 + 2 * H);
    std::memcpy(s.in2.data(), s.u1.data(), sizeof(double) * L.n1);
    std::memcpy(s.in2.data() + L.n1, hbar.data(), sizeof(double) * H);
    std::memcpy(s.in2.data() + L.n1 + H, prev_h, sizeof(double) * H);

    s.u2.resize(L.n2);
    affine(th + L.w2, th + L.b2, s.in2.data(), s.u2.data(), L.n2, L.n1 + 2 * H);
    relu_inplace(s.u2.data(), L.n2);
    s.u3.resize(L.n3);
    affine(th + L.w3, th + L.b3, s.u2.data(), s.u3.data(), L.n3, L.n2);
    relu_inplace(s.u3.data(), L.n3);
    s.u4.resize(L.n4);
    affine(th + L.w4, th + L.b4, s.u3.data(), s.u4.data(), L.n4, L.n3);
    relu_inplace(s.u4.data(), L.n4);
    s.u5.resize(L.n5);
    affine(th + L.w5, th + L.b5, s.u4.data(), s.u5.data(), L.n5, L.n4);
    relu_inplace(s.u5.data(), L.n5);
    s.q.resize(H);
    affine(th + L.wp, th + L.bp, s.u5.data(), s.q.data(), H, L.n5);

    // per-task logits against the encoder states, then a masked softmax
    s.probs.assign(n, 0.0);
    double max_logit = -std::numeric_limits<double>::infinity();
    std::vector<double> logits(n, 0.0);
    for (int j = 0; j < n; ++j) {
        if (mask[j]) continue;
        const double* hj = hidden.row(j);
        double dot = 0.0;
        for (int r = 0; r < H; ++r) dot += s.q[r] * hj[r];
        logits[j] = dot;
        max_logit = std::max(max_logit, dot);
    }
    double z = 0.0;
    for (int j = 0; j < n; ++j) {
        if (mask[j]) continue;
        s.probs[j] = std::exp(logits[j] - max_logit);
        z += s.probs[j];
    }
    for (int j = 0; j < n; ++j)
        if (!mask[j]) s.probs[j] /= z;
}

struct ForwardTrace {
    EncodeCache enc;
    std::vector<StepCache> steps;
    DecodeTrace out;
};

// Chooses the next task from the step's probabilities.
struct Chooser {
    DecodeMode mode = DecodeMode::Greedy;
    std::mt19937_64* rng = nullptr;
    const std::vector<int>* forced = nullptr;

    int pick(const StepCache& s, int step) const {
        const int n = static_cast<int>(s.probs.size());
        if (forced) return (*forced)[step];
        if (mode == DecodeMode::Greedy) {
            int best = -1;
            double best_p = -1.0;
            for (int j = 0; j < n; ++j) {
                if (s.mask[j]) continue;
                if (s.probs[j] > best_p) {
                    best_p = s.probs[j];
                    best = j;
                }
            }
            return best;
        }
        const double u = rng::uniform01(*rng);
        double cum = 0.0;
        int last_avail = -1;
        for (int j = 0; j < n; ++j) {
            if (s.mask[j]) continue;
            last_avail = j;
            cum += s.probs[j];
            if (u < cum) return j;
        }
        return last_avail; // u landed in the terminal rounding gap
    }
};

ForwardTrace run_policy(const Instance& inst, const PolicyParams& p, const Layout& L,
                        const Chooser& chooser) {
    ForwardTrace t;
    t.enc = encode_forward(normalize_features(inst), p, L);
    const int n = inst.tasks;

    std::vector<char> mask(n, 0);
    t.steps.resize(n);
    t.out.step_logps.resize(n);
    t.out.perm.resize(n);
    for (int step = 0; step < n; ++step) {
        StepCache& s = t.steps[step];
        s.prev = step == 0 ? -1 : t.out.perm[step - 1];
        const double* prev_h =
            step == 0 ? p.theta.data() + L.start : t.enc.h.row(s.prev);
        decode_forward(t.enc.hbar, prev_h, t.enc.h, mask, p, L, s);

        const int j = chooser.pick(s, step);
        if (j < 0 || j >= n || mask[j] || s.probs[j] <= 0.0)
            throw std::invalid_argument("decode chose an unavailable task");
        s.chosen = j;
        s.logp = std::log(s.probs[j]);
        t.out.perm[step] = j;
        t.out.step_logps[step] = s.logp;
        t.out.total_logp += s.logp;
        mask[j] = 1;
    }
    return t;
}

// Reverse pass for d(total_logp)/d(theta).
std::vector<double> backward(const ForwardTrace& t, const PolicyParams& p, const Layout& L) {
    const int n = static_cast<int>(t.enc.h.rows);
    const int H = L.H;
    const int D = L.D;
    const double* th = p.theta.data();
    std::vector<double> grad(p.theta.size(), 0.0);
    double* g = grad.data();

    Matrix dh(n, H); // accumulated gradient on every encoder hidden state
    std::vector<double> dhbar(H, 0.0);

    std::vector<double> dlogit(n), dq(H), du5(L.n5), du4(L.n4), du3(L.n3), du2(L.n2),
        din2(L.n1 + 2 * H), du1(L.n1);
    for (int step = n - 1; step >= 0; --step) {
        const StepCache& s = t.steps[step];

        // masked softmax: d logit_j = 1[j == chosen] - p_j on available tasks
        for (int j = 0; j < n; ++j)
            dlogit[j] = s.mask[j] ? 0.0 : ((j == s.chosen ? 1.0 : 0.0) - s.probs[j]);

        // logits_j = q . h_j
        std::fill(dq.begin(), dq.end(), 0.0);
        for (int j = 0; j < n; ++j) {
            const double dl = dlogit[j];
            if (dl == 0.0) continue;
            const double* hj = t.enc.h.row(j);
            double* dhj = dh.row(j);
            for (int r = 0; r < H; ++r) {
                dq[r] += dl * hj[r];
                dhj[r] += dl * s.q[r];
            }
        }

        // scoring head
        for (int r = 0; r < H; ++r) g[L.bp + r] += dq[r];
        add_outer(g + L.wp, dq.data(), s.u5.data(), H, L.n5);
        std::fill(du5.begin(), du5.end(), 0.0);
        add_tmatvec(th + L.wp, dq.data(), du5.data(), H, L.n5);

        // decoder stack (ReLU: pass gradient where the activation is positive)
        auto relu_back = [](std::vector<double>& dv, const std::vector<double>& v) {
            for (std::size_t i = 0; i < dv.size(); ++i)
                if (v[i] <= 0.0) dv[i] = 0.0;
        };
        relu_back(du5, s.u5);
        for (int r = 0; r < L.n5; ++r) g[L.b5 + r] += du5[r];
        add_outer(g + L.w5, du5.data(), s.u4.data(), L.n5, L.n4);
        std::fill(du4.begin(), du4.end(), 0.0);
        add_tmatvec(th + L.w5, du5.data(), du4.data(), L.n5, L.n4);

        relu_back(du4, s.u4);
        for (int r = 0; r < L.n4; ++r) g[L.b4 + r] += du4[r];
        add_outer(g + L.w4, du4.data(), s.u3.data(), L.n4, L.n3);
        std::fill(du3.begin(), du3.end(), 0.0);
        add_tmatvec(th + L.w4, du4.data(), du3.data(), L.n4, L.n3);

        relu_back(du3, s.u3);
        for (int r = 0; r < L.n3; ++r) g[L.b3 + r] += du3[r];
        add_outer(g + L.w3, du3.data(), s.u2.data(), L.n3, L.n2);
        std::fill(du2.begin(), du2.end(), 0.0);
        add_tmatvec(th + L.w3, du3.data(), du2.data(), L.n3, L.n2);

        relu_back(du2, s.u2);
        for (int r = 0; r < L.n2; ++r) g[L.b2 + r] += du2[r];
        add_outer(g + L.w2, du2.data(), s.in2.data(), L.n2, L.n1 + 2 * H);
        std::fill(din2.begin(), din2.end(), 0.0);
        add_tmatvec(th + L.w2, du2.data(), din2.data(), L.n2, L.n1 + 2 * H);

        // split d in2 = [d u1 ; d hbar ; d prev_h]
        std::copy(din2.begin(), din2.begin() + L.n1, du1.begin());
        for (int r = 0; r < H; ++r) dhbar[r] += din2[L.n1 + r];
        if (s.prev < 0) {
            for (int r = 0; r < H; ++r) g[L.start + r] += din2[L.n1 + H + r];
        } else {
            double* dprev = dh.row(s.prev);
            for (int r = 0; r < H; ++r) dprev[r] += din2[L.n1 + H + r];
        }

        relu_back(du1, s.u1);
        for (int r = 0; r < L.n1; ++r) g[L.b1 + r] += du1[r];
        add_outer(g + L.w1, du1.data(), t.enc.hbar.data(), L.n1, H);
        add_tmatvec(th + L.w1, du1.data(), dhbar.data(), L.n1, H);
    }

    // hbar = mean of the hidden states
    for (int j = 0; j < n; ++j) {
        double* dhj = dh.row(j);
        for (int r = 0; r < H; ++r) dhj[r] += dhbar[r] / n;
    }

    // LSTM backward through time
    std::vector<double> dh_carry(H, 0.0), dc_carry(H, 0.0);
    std::vector<double> dzi(H), dzf(H), dzo(H), dzg(H), xh(D + H);
    for (int j = n - 1; j >= 0; --j) {
        for (int r = 0; r < H; ++r) {
            const double dh_total = dh(j, r) + dh_carry[r];
            const double o_ = t.enc.og(j, r);
            const double tc_ = t.enc.tc(j, r);
            const double do_ = dh_total * tc_;
            const double dc = dc_carry[r] + dh_total * o_ * (1.0 - tc_ * tc_);
            const double i_ = t.enc.ig(j, r);
            const double f_ = t.enc.fg(j, r);
            const double g_ = t.enc.gg(j, r);
            const double c_prev = j > 0 ? t.enc.c(j - 1, r) : 0.0;
            const double di = dc * g_;
            const double df = dc * c_prev;
            const double dg_ = dc * i_;
            dzi[r] = di * i_ * (1.0 - i_);
            dzf[r] = df * f_ * (1.0 - f_);
            dzo[r] = do_ * o_ * (1.0 - o_);
            dzg[r] = dg_ * (1.0 - g_ * g_);
            dc_carry[r] = dc * f_;
        }

        std::memcpy(xh.data(), t.enc.x.row(j), sizeof(double) * D);
        if (j > 0)
            std::memcpy(xh.data() + D, t.enc.h.row(j - 1), sizeof(double) * H);
        else
            std::memset(xh.data() + D, 0, sizeof(double) * H);

        add_outer(g + L.wi, dzi.data(), xh.data(), H, D + H);
        add_outer(g + L.wf, dzf.data(), xh.data(), H, D + H);
        add_outer(g + L.wo, dzo.data(), xh.data(), H, D + H);
        add_outer(g + L.wg, dzg.data(), xh.data(), H, D + H);
        for (int r = 0; r < H; ++r) {
            g[L.bi + r] += dzi[r];
            g[L.bf + r] += dzf[r];
            g[L.bo + r] += dzo[r];
            g[L.bg + r] += dzg[r];
        }

        // gradient reaching h_{j-1} through the four gates
        std::fill(dh_carry.begin(), dh_carry.end(), 0.0);
        if (j > 0) {
            auto carry = [&](std::size_t w, const std::vector<double>& dz) {
                for (int r = 0; r < H; ++r) {
                    const double* wrow = th + w + static_cast<std::size_t>(r) * (D + H) + D;
                    const double dzr = dz[r];
                    if (dzr == 0.0) continue;
                    for (int c = 0; c < H; ++c) dh_carry[c] += wrow[c] * dzr;
                }
            };
            carry(L.wi, dzi);
            carry(L.wf, dzf);
            carry(L.wo, dzo);
            carry(L.wg, dzg);
        }
    }

    return grad;
}

} // namespace

// ---------------------------------------------------------------------------
// public surface

std::size_t param_count(const PolicyDims& dims) { return make_layout(dims).total; }

PolicyParams PolicyParams::zeros(const PolicyDims& dims) {
    PolicyParams p;
    p.dims = dims;
    p.theta.assign(param_count(dims), 0.0);
    return p;
}

PolicyParams PolicyParams::random_init(const PolicyDims& dims, std::uint64_t seed) {
    PolicyParams p = zeros(dims);
    std::mt19937_64 gen(seed);
    const double bound = 1.0 / std::sqrt(static_cast<double>(dims.hidden));
    for (double& v : p.theta) v = rng::uniform(gen, -bound, bound);
    return p;
}

Encoding encode(const Matrix& features, const PolicyParams& params) {
    const Layout L = make_layout(params.dims);
    EncodeCache e = encode_forward(features, params, L);
    return Encoding{std::move(e.h), std::move(e.hbar)};
}

std::vector<double> decode_step(const std::vector<double>& mean,
                                const std::vector<double>& prev_h,
                                const Matrix& hidden,
                                const std::vector<char>& mask,
                                const PolicyParams& params) {
    const Layout L = make_layout(params.dims);
    if (mean.size() != static_cast<std::size_t>(L.H) ||
        prev_h.size() != static_cast<std::size_t>(L.H) ||
        hidden.cols != static_cast<std::size_t>(L.H) || mask.size() != hidden.rows)
        throw std::invalid_argument("decode_step: inconsistent dimensions");
    StepCache s;
    decode_forward(mean, prev_h.data(), hidden, mask, params, L, s);
    return std::move(s.probs);
}

DecodeTrace sample_schedule(const Instance& inst, const PolicyParams& params,
                            DecodeMode mode, std::mt19937_64& rng) {
    const Layout L = make_layout(params.dims);
    Chooser chooser;
    chooser.mode = mode;
    chooser.rng = &rng;
    return run_policy(inst, params, L, chooser).out;
}

std::pair<double, std::vector<double>> log_prob_and_grad(const Instance& inst,
                                                         const PolicyParams& params,
                                                         const std::vector<int>& perm) {
    const Layout L = make_layout(params.dims);
    Chooser chooser;
    chooser.forced = &perm;
    ForwardTrace t = run_policy(inst, params, L, chooser);
    std::vector<double> grad = backward(t, params, L);
    return {t.out.total_logp, std::move(grad)};
}

// ---------------------------------------------------------------------------
// checkpoint io

namespace {

constexpr char kMagic[8] = {'F', 'S', 'P', 'O', 'L', 'I', 'C', 'Y'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::string& buf, const T& v) {
    const char* p = reinterpret_cast<const char*>(&v);
    buf.append(p, sizeof(T));
}

template <typename T>
T get(const std::string& buf, std::size_t& at) {
    if (at + sizeof(T) > buf.size()) throw std::runtime_error("checkpoint truncated");
    T v;
    std::memcpy(&v, buf.data() + at, sizeof(T));
    at += sizeof(T);
    return v;
}

} // namespace

void save_checkpoint(const std::filesystem::path& path, const PolicyParams& params) {
    std::string buf;
    buf.append(kMagic, sizeof kMagic);
    put(buf, kVersion);
    put(buf, static_cast<std::int32_t>(params.dims.input_dim));
    put(buf, static_cast<std::int32_t>(params.dims.hidden));
    for (int w : params.dims.widths) put(buf, static_cast<std::int32_t>(w));
    put(buf, static_cast<std::uint64_t>(params.theta.size()));
    buf.append(reinterpret_cast<const char*>(params.theta.data()),
               params.theta.size() * sizeof(double));
    const auto crc = static_cast<std::uint32_t>(
        crc32(0, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(buf.size())));
    put(buf, crc);

    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!f) throw std::runtime_error("short write to " + path.string());
}

PolicyParams load_checkpoint(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    std::string buf((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (buf.size() < sizeof kMagic + sizeof(std::uint32_t))
        throw std::runtime_error("checkpoint truncated");
    if (std::memcmp(buf.data(), kMagic, sizeof kMagic) != 0)
        throw std::runtime_error("not a policy checkpoint: " + path.string());

    const std::size_t body = buf.size() - sizeof(std::uint32_t);
    std::uint32_t stored_crc;
    std::memcpy(&stored_crc, buf.data() + body, sizeof stored_crc);
    const auto crc = static_cast<std::uint32_t>(
        crc32(0, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(body)));
    if (crc != stored_crc) throw std::runtime_error("checkpoint checksum mismatch");

    std::size_t at = sizeof kMagic;
    const auto version = get<std::uint32_t>(buf, at);
    if (version != kVersion) throw std::runtime_error("unsupported checkpoint version");
    PolicyParams p;
    p.dims.input_dim = get<std::int32_t>(buf, at);
    p.dims.hidden = get<std::int32_t>(buf, at);
    for (int& w : p.dims.widths) w = get<std::int32_t>(buf, at);
    const auto count = get<std::uint64_t>(buf, at);
    if (count != param_count(p.dims))
        throw std::runtime_error("checkpoint parameter count does not match dimensions");
    if (at + count * sizeof(double) != body)
        throw std::runtime_error("checkpoint truncated");
    p.theta.resize(count);
    std::memcpy(p.theta.data(), buf.data() + at, count * sizeof(double));
    return p;
}

} // namespace flowshop
