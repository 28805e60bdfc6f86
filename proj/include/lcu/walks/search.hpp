#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "lcu/walks/walk.hpp"

namespace lcu::walks {

/// Probability of each walk exponent k under POW-HAM(t, d).
inline std::vector<double> pow_ham_distribution(long t, long d)
{
    require(t >= 0 && d >= 0, "power and degree must be nonnegative");
    const long dd = matched_degree(t, d);
    const auto c = chebyshev_power_coeffs(t, dd);
    const DiscreteSampler norm(c);
    std::vector<double> p(static_cast<std::size_t>(dd + 1), 0.0);
    for (std::size_t l = 0; l < c.size(); ++l) {
        p[static_cast<std::size_t>(chebyshev_power_degree(t, l))] = norm.probability(l);
    }
    return p;
}

/// Probability of each walk exponent under EXP-HAM(t, d', d): Poisson outer draw, then POW-HAM(l, d').
inline std::vector<double> exp_ham_distribution(double t, long d, long dprime)
{
    require(t >= 0.0 && d >= 0 && dprime >= 0, "invalid EXP-HAM parameters");
    const DiscreteSampler outer(poisson_weights(t, d));
    std::vector<double> p;
    for (long l = 0; l <= d; ++l) {
        const double pl = outer.probability(static_cast<std::size_t>(l));
        if (pl == 0.0) {
            continue;
        }
        const auto inner = pow_ham_distribution(l, dprime);
        p.resize(std::max(p.size(), inner.size()), 0.0);
        for (std::size_t k = 0; k < inner.size(); ++k) {
            p[k] += pl * inner[k];
        }
    }
    return p;
}

inline long draw_from(const std::vector<double>& p, Stream& rng)
{
    return static_cast<long>(DiscreteSampler(p)(rng));
}

struct WalkDraw {
    Vector state;
    long exponent = 0;
};

inline Vector apply_power(const WalkOperator& w, Vector psi, long k)
{
    for (long i = 0; i < k; ++i) {
        psi = w.v.matrix() * psi;
    }
    return psi;
}

/// POW-HAM: V^{2l} (even t) or V^{2l+1} (odd t) with l drawn from the Chebyshev coefficients of x^t.
inline WalkDraw pow_ham(long t, long d, const WalkOperator& w, const Vector& psi0, Stream& rng)
{
    require(psi0.size() == w.edge_dim(), "state must live on the edge space");
    const long k = draw_from(pow_ham_distribution(t, d), rng);
    return {apply_power(w, psi0, k), k};
}

/// EXP-HAM: l ~ e^{-t} t^l / l! on [0, d], then POW-HAM(l, d').
inline WalkDraw exp_ham(double t, long d, long dprime, const WalkOperator& w, const Vector& psi0, Stream& rng)
{
    require(psi0.size() == w.edge_dim(), "state must live on the edge space");
    const long l = draw_from(poisson_weights(t, d), rng);
    return pow_ham(l, dprime, w, psi0, rng);
}

/// Sum_k p_k V^k rho0 V^k^dagger.
inline Matrix average_density(const WalkOperator& w, const Vector& psi0, const std::vector<double>& dist)
{
    Matrix rho = Matrix::Zero(psi0.size(), psi0.size());
    Vector v = psi0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        if (k > 0) {
            v = w.v.matrix() * v;
        }
        rho += dist[k] * v * v.adjoint();
    }
    return rho;
}

/// Probability that the node register x of |y, x> lies in M.
inline double marked_mass(const Vector& edge_state, Index n, const std::vector<Index>& marked)
{
    double acc = 0.0;
    for (Index y = 0; y < n; ++y) {
        for (Index m : marked) {
            acc += std::norm(edge_state(y * n + m));
        }
    }
    return acc;
}

/// Tr[(I (x) Pi_M) rho] on the edge space.
inline double marked_trace(const Matrix& rho, Index n, const std::vector<Index>& marked)
{
    double acc = 0.0;
    for (Index y = 0; y < n; ++y) {
        for (Index m : marked) {
            acc += rho(y * n + m, y * n + m).real();
        }
    }
    return acc;
}

/// ||Pi_M f|| for a node-space vector.
inline double marked_norm2(const Vector& node_state, const std::vector<Index>& marked)
{
    double acc = 0.0;
    for (Index m : marked) {
        acc += std::norm(node_state(m));
    }
    return acc;
}

/// Both sides of the ancilla-free bound Tr[Pi rho_bar] >= Tr[Pi f rho0 f^dagger] - eps.
struct AncillaFreeCheck {
    double lhs = 0.0;
    double target = 0.0;
    double eps = 0.0;

    double slack() const { return lhs - (target - eps); }
};

/// Sum_k p_k T_k(x) with raw (unnormalized) coefficients.
inline double chebyshev_series(const std::vector<double>& coeff, double x)
{
    double acc = 0.0;
    for (std::size_t k = 0; k < coeff.size(); ++k) {
        if (coeff[k] != 0.0) {
            acc += coeff[k] * chebyshev_t(static_cast<long>(k), x);
        }
    }
    return acc;
}

inline std::vector<double> pow_ham_coefficients(long t, long d)
{
    const long dd = matched_degree(t, d);
    const auto c = chebyshev_power_coeffs(t, dd);
    std::vector<double> out(static_cast<std::size_t>(dd + 1), 0.0);
    for (std::size_t l = 0; l < c.size(); ++l) {
        out[static_cast<std::size_t>(chebyshev_power_degree(t, l))] = c[l];
    }
    return out;
}

inline std::vector<double> exp_ham_coefficients(double t, long d, long dprime)
{
    const auto outer = poisson_weights(t, d);
    std::vector<double> out;
    for (long l = 0; l <= d; ++l) {
        const auto inner = pow_ham_coefficients(l, dprime);
        out.resize(std::max(out.size(), inner.size()), 0.0);
        for (std::size_t k = 0; k < inner.size(); ++k) {
            out[k] += outer[static_cast<std::size_t>(l)] * inner[k];
        }
    }
    return out;
}

/// Exact check of the ancilla-free bound for the walk LCU with raw coefficients `coeff` (by power) targeting f(D).
/// eps = 3 ||f(D)|| ||f(D) - Sum_k c_k T_k(D)|| is the smallest tolerance the premise admits.
template <class F>
AncillaFreeCheck ancilla_free_check(const WalkOperator& w, const Vector& node_state, const std::vector<Index>& marked,
    const std::vector<double>& coeff, F&& f)
{
    double l1 = 0.0;
    for (double c : coeff) {
        l1 += c;
    }
    require(l1 > 0.0 && l1 <= 1.0 + 1e-12, "ancilla-free bound needs coefficients with l1 norm at most 1");
    std::vector<double> dist(coeff.size());
    for (std::size_t k = 0; k < coeff.size(); ++k) {
        dist[k] = coeff[k] / l1;
    }
    const Eigensystem es = eigensystem(w.d);
    double approx = 0.0;
    double fnorm = 0.0;
    for (Index k = 0; k < es.dim(); ++k) {
        const double x = es.values(k);
        approx = std::max(approx, std::abs(f(x) - chebyshev_series(coeff, x)));
        fnorm = std::max(fnorm, std::abs(f(x)));
    }
    const Matrix fd = apply_function(es, f);
    AncillaFreeCheck out;
    out.lhs = marked_trace(average_density(w, embed(node_state, w.n), dist), w.n, marked);
    out.target = marked_norm2(fd * node_state, marked);
    out.eps = 3.0 * fnorm * approx;
    return out;
}

enum class SearchAlgo { power = 1, exp = 2 };

struct SearchConfig {
    double c_t = 1.0;
    std::optional<double> bigT;
};

struct SearchOutcome {
    bool found = false;
    Index node = -1;
    double s_used = 0.0;
    double t_used = 0.0;
    long walk_steps_applied = 0;
    long budget = 0;
    bool premeasured = false;
};

/// Schedule shared by both search algorithms.
struct SearchParams {
    double hitting_time = 0.0;
    double bigT = 0.0;
    long t_max = 0;
    long d = 0;
    long dprime = 0;
    std::vector<double> s_values;
};

/// R = {2^0, ..., 2^{ceil(log2 T)}}, s = 1 - 1/r.
inline std::vector<double> interpolation_grid(double bigT)
{
    const long top = bigT > 1.0 ? static_cast<long>(std::ceil(std::log2(bigT))) : 0;
    std::vector<double> s;
    for (long j = 0; j <= top; ++j) {
        s.push_back(1.0 - 1.0 / std::ldexp(1.0, static_cast<int>(j)));
    }
    return s;
}

inline SearchParams search_params(double hitting, SearchAlgo algo, const SearchConfig& cfg)
{
    SearchParams sp;
    sp.hitting_time = hitting;
    sp.bigT = cfg.bigT.value_or(cfg.c_t * hitting);
    require(sp.bigT >= 0.0 && std::isfinite(sp.bigT), "search horizon must be finite and nonnegative");
    sp.t_max = static_cast<long>(std::floor(sp.bigT));
    const double lt = sp.bigT > 1.0 ? std::log(sp.bigT) : 0.0;
    if (algo == SearchAlgo::power) {
        sp.d = static_cast<long>(std::ceil(std::sqrt(sp.bigT * lt)));
    } else {
        sp.d = static_cast<long>(std::ceil(sp.bigT * std::exp(2.0)));
        sp.dprime = static_cast<long>(std::ceil(std::sqrt(2.0 * sp.bigT * std::log(std::max(1.0, 48.0 * lt * lt)))));
    }
    sp.s_values = interpolation_grid(sp.bigT);
    return sp;
}

/// Exponent distribution of the walk step for a given t.
inline std::vector<double> search_distribution(const SearchParams& sp, SearchAlgo algo, long t)
{
    return algo == SearchAlgo::power ? pow_ham_distribution(t, sp.d) : exp_ham_distribution(static_cast<double>(t), sp.d, sp.dprime);
}

/// Normalized sqrt(pi) restricted to unmarked nodes.
inline Vector sqrt_pi_unmarked(const MarkovChain& c, const std::vector<Index>& marked)
{
    Vector v = Vector::Zero(c.size());
    for (Index x = 0; x < c.size(); ++x) {
        if (!std::binary_search(marked.begin(), marked.end(), x)) {
            v(x) = std::sqrt(c.pi()(x));
        }
    }
    const double n = v.norm();
    return n > 0.0 ? Vector(v / n) : v;
}

/// Average over s in R and integer t in [0, T] of ||Pi_M D(s)^t |sqrt(pi_U)>||^2 (power) or ||Pi_M e^{t(D(s)-I)} |sqrt(pi_U)>||^2 (exp).
inline double exact_search_success(const MarkovChain& c, const std::vector<Index>& marked_in, double bigT, SearchAlgo kind)
{
    const std::vector<Index> marked = normalize_marked(marked_in, c.size());
    if (static_cast<Index>(marked.size()) == c.size()) {
        return 1.0;
    }
    const Vector psi = sqrt_pi_unmarked(c, marked);
    const auto t_max = static_cast<long>(std::floor(bigT));
    const std::vector<double> svals = interpolation_grid(bigT);
    double acc = 0.0;
    for (double s : svals) {
        const Eigensystem es = eigensystem(discriminant(InterpolatedChain(c, marked, s)));
        const Vector coef = es.vectors.adjoint() * psi;
        for (long t = 0; t <= t_max; ++t) {
            Vector g(coef.size());
            for (Index k = 0; k < coef.size(); ++k) {
                const double x = es.values(k);
                g(k) = coef(k) * (kind == SearchAlgo::power ? std::pow(x, static_cast<double>(t)) : std::exp(static_cast<double>(t) * (x - 1.0)));
            }
            acc += marked_norm2(es.vectors * g, marked);
        }
    }
    return acc / (static_cast<double>(svals.size()) * static_cast<double>(t_max + 1));
}

/// Spatial search by ancilla-free walk sampling on the lazified chain.
/// Walks are built once per s, and V^k |0bar, sqrt(pi_U)> with its node marginal is cached for every reachable k.
class SpatialSearch {
public:
    SpatialSearch(const MarkovChain& p, std::vector<Index> marked, SearchAlgo algo, const SearchConfig& cfg = {})
        : chain_(lazy(p))
        , marked_(normalize_marked(std::move(marked), p.size()))
        , algo_(algo)
    {
        require(chain_.is_ergodic() && chain_.is_reversible(), "spatial search needs a reversible ergodic chain");
        params_ = search_params(hitting_time(chain_, marked_), algo, cfg);
        for (Index m : marked_) {
            p_marked_ += chain_.pi()(m);
            marked_pi_.push_back(chain_.pi()(m));
        }
        if (all_marked()) {
            return;
        }
        std::size_t kmax = 0;
        for (long t = 0; t <= params_.t_max; ++t) {
            dists_.push_back(search_distribution(params_, algo_, t));
            samplers_.emplace_back(dists_.back());
            kmax = std::max(kmax, dists_.back().size());
        }
        const Index n = chain_.size();
        const Vector start = embed(sqrt_pi_unmarked(chain_, marked_), n);
        for (double sv : params_.s_values) {
            walks_.push_back(build_walk(InterpolatedChain(chain_, marked_, sv)));
            std::vector<DiscreteSampler> nodes;
            std::vector<double> mass;
            Vector v = start;
            for (std::size_t k = 0; k < kmax; ++k) {
                if (k > 0) {
                    v = walks_.back().v.matrix() * v;
                }
                std::vector<double> marginal(static_cast<std::size_t>(n), 0.0);
                for (Index y = 0; y < n; ++y) {
                    for (Index x = 0; x < n; ++x) {
                        marginal[static_cast<std::size_t>(x)] += std::norm(v(y * n + x));
                    }
                }
                nodes.emplace_back(marginal);
                mass.push_back(marked_mass(v, n, marked_));
            }
            node_samplers_.push_back(std::move(nodes));
            masses_.push_back(std::move(mass));
        }
    }

    bool all_marked() const { return static_cast<Index>(marked_.size()) == chain_.size(); }

    /// One run: pick t and s, measure Pi_M on |sqrt(pi)>, otherwise walk from |0bar>|sqrt(pi_U)> and measure the node register.
    SearchOutcome run(Stream& rng) const
    {
        SearchOutcome out;
        const auto t = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(params_.t_max + 1)));
        const std::size_t si = rng.below(params_.s_values.size());
        out.t_used = static_cast<double>(t);
        out.s_used = params_.s_values[si];
        if (all_marked() || rng.uniform() < p_marked_) {
            out.premeasured = true;
            out.found = true;
            out.node = marked_[DiscreteSampler(marked_pi_)(rng)];
            return out;
        }
        out.budget = static_cast<long>(dists_[t].size()) - 1;
        const std::size_t k = samplers_[t](rng);
        out.walk_steps_applied = static_cast<long>(k);
        out.node = static_cast<Index>(node_samplers_[si][k](rng));
        out.found = std::binary_search(marked_.begin(), marked_.end(), out.node);
        return out;
    }

    /// Exact probability that run() reports success, by enumeration over s, t and the walk exponent.
    double predicted_success() const
    {
        if (all_marked()) {
            return 1.0;
        }
        CompensatedSum acc;
        for (const auto& mass : masses_) {
            for (const auto& dist : dists_) {
                for (std::size_t k = 0; k < dist.size(); ++k) {
                    acc.add(dist[k] * mass[k]);
                }
            }
        }
        const double walk = acc.value() / (static_cast<double>(walks_.size()) * static_cast<double>(dists_.size()));
        return p_marked_ + (1.0 - p_marked_) * walk;
    }

    /// exact_search_success on the lazified chain.
    double oracle_success() const { return exact_search_success(chain_, marked_, params_.bigT, algo_); }

    /// Smallest ancilla-free slack Tr[Pi rho_bar] - (||Pi_M f(D) psi||^2 - 3 ||f|| ||f - q||) over all (s, t) of the schedule.
    double ancilla_free_slack() const
    {
        if (all_marked()) {
            return 0.0;
        }
        const Vector psi = sqrt_pi_unmarked(chain_, marked_);
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t si = 0; si < walks_.size(); ++si) {
            const Eigensystem es = eigensystem(walks_[si].d);
            const Vector coef = es.vectors.adjoint() * psi;
            for (long t = 0; t <= params_.t_max; ++t) {
                const auto td = static_cast<double>(t);
                const auto coeff = algo_ == SearchAlgo::power ? pow_ham_coefficients(t, params_.d) : exp_ham_coefficients(td, params_.d, params_.dprime);
                const auto f = [&](double x) { return algo_ == SearchAlgo::power ? std::pow(x, td) : std::exp(td * (x - 1.0)); };
                double approx = 0.0;
                double fnorm = 0.0;
                Vector g(coef.size());
                for (Index k = 0; k < es.dim(); ++k) {
                    const double x = es.values(k);
                    approx = std::max(approx, std::abs(f(x) - chebyshev_series(coeff, x)));
                    fnorm = std::max(fnorm, std::abs(f(x)));
                    g(k) = coef(k) * f(x);
                }
                const auto& dist = dists_[static_cast<std::size_t>(t)];
                double lhs = 0.0;
                for (std::size_t k = 0; k < dist.size(); ++k) {
                    lhs += dist[k] * masses_[si][k];
                }
                const double target = marked_norm2(es.vectors * g, marked_);
                worst = std::min(worst, lhs - (target - 3.0 * fnorm * approx));
            }
        }
        return worst;
    }

    const SearchParams& params() const { return params_; }
    const MarkovChain& chain() const { return chain_; }
    const std::vector<Index>& marked() const { return marked_; }
    const std::vector<WalkOperator>& walks() const { return walks_; }
    double premeasure_probability() const { return p_marked_; }

private:
    MarkovChain chain_;
    std::vector<Index> marked_;
    SearchAlgo algo_;
    SearchParams params_;
    double p_marked_ = 0.0;
    std::vector<double> marked_pi_;
    std::vector<WalkOperator> walks_;
    std::vector<std::vector<double>> dists_;
    std::vector<DiscreteSampler> samplers_;
    std::vector<std::vector<DiscreteSampler>> node_samplers_;
    std::vector<std::vector<double>> masses_;
};

inline SearchOutcome spatial_search_1(const MarkovChain& p, const std::vector<Index>& marked, const SearchConfig& cfg, Stream& rng)
{
    return SpatialSearch(p, marked, SearchAlgo::power, cfg).run(rng);
}

inline SearchOutcome spatial_search_2(const MarkovChain& p, const std::vector<Index>& marked, const SearchConfig& cfg, Stream& rng)
{
    return SpatialSearch(p, marked, SearchAlgo::exp, cfg).run(rng);
}

} // namespace lcu::walks
