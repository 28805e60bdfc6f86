#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <tuple>
#include <vector>

#include "lcu/core/dense.hpp"
#include "lcu/core/random.hpp"

namespace lcu::walks {

/// Row-stochastic transition matrix with its stationary distribution.
class MarkovChain {
public:
    MarkovChain() = default;

    explicit MarkovChain(RealMatrix p)
        : p_(std::move(p))
    {
        require(p_.rows() == p_.cols() && p_.rows() > 0, "transition matrix must be square and nonempty");
        require(p_.minCoeff() >= 0.0, "transition probabilities must be nonnegative");
        for (Index x = 0; x < p_.rows(); ++x) {
            require(std::abs(p_.row(x).sum() - 1.0) <= 1e-12, "transition matrix rows must sum to 1");
        }
        classify();
    }

    /// Simple random walk on the n-cycle.
    static MarkovChain cycle(Index n)
    {
        require(n >= 2, "cycle needs at least two nodes");
        RealMatrix w = RealMatrix::Zero(n, n);
        for (Index x = 0; x < n; ++x) {
            w(x, (x + 1) % n) = 1.0;
            w((x + 1) % n, x) = 1.0;
        }
        return from_weights(w);
    }

    /// Simple random walk on the complete graph without self-loops.
    static MarkovChain complete(Index n)
    {
        require(n >= 2, "complete graph needs at least two nodes");
        RealMatrix w = RealMatrix::Ones(n, n) - RealMatrix::Identity(n, n);
        return from_weights(w);
    }

    /// p_xy = w_xy / Sum_y w_xy for a symmetric nonnegative weight matrix.
    static MarkovChain from_weights(const RealMatrix& w)
    {
        require(w.rows() == w.cols() && w.rows() > 0, "weight matrix must be square");
        require((w - w.transpose()).cwiseAbs().maxCoeff() <= 1e-12, "edge weights must be symmetric");
        require(w.minCoeff() >= 0.0, "edge weights must be nonnegative");
        RealMatrix p = w;
        for (Index x = 0; x < w.rows(); ++x) {
            const double s = w.row(x).sum();
            require(s > 0.0, "every node needs an incident edge");
            p.row(x) /= s;
        }
        return MarkovChain(std::move(p));
    }

    /// Random connected reversible chain: a spanning path plus random symmetric weights.
    static MarkovChain random_reversible(Index n, Stream& rng, double density = 0.5)
    {
        require(n >= 2, "random chain needs at least two nodes");
        RealMatrix w = RealMatrix::Zero(n, n);
        for (Index x = 0; x < n; ++x) {
            for (Index y = x; y < n; ++y) {
                const bool path = y == x + 1;
                if (path || rng.uniform() < density) {
                    const double v = 0.1 + rng.uniform();
                    w(x, y) = v;
                    w(y, x) = v;
                }
            }
        }
        return from_weights(w);
    }

    const RealMatrix& p() const { return p_; }
    const RealVector& pi() const { return pi_; }
    Index size() const { return p_.rows(); }
    bool is_irreducible() const { return irreducible_; }
    bool is_ergodic() const { return ergodic_; }
    bool is_reversible() const { return reversible_; }

private:
    void classify()
    {
        const Index n = size();
        // Period from BFS levels: gcd over edges of level(u) + 1 - level(v).
        std::vector<long> level(static_cast<std::size_t>(n), -1);
        std::queue<Index> q;
        level[0] = 0;
        q.push(0);
        while (!q.empty()) {
            const Index u = q.front();
            q.pop();
            for (Index v = 0; v < n; ++v) {
                if (p_(u, v) > 0.0 && level[static_cast<std::size_t>(v)] < 0) {
                    level[static_cast<std::size_t>(v)] = level[static_cast<std::size_t>(u)] + 1;
                    q.push(v);
                }
            }
        }
        const bool forward = std::none_of(level.begin(), level.end(), [](long l) { return l < 0; });
        const RealMatrix pt = p_.transpose();
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        seen[0] = true;
        q.push(0);
        while (!q.empty()) {
            const Index u = q.front();
            q.pop();
            for (Index v = 0; v < n; ++v) {
                if (pt(u, v) > 0.0 && !seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = true;
                    q.push(v);
                }
            }
        }
        irreducible_ = forward && std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
        if (!irreducible_) {
            pi_ = RealVector::Constant(n, std::numeric_limits<double>::quiet_NaN());
            return;
        }
        long period = 0;
        for (Index u = 0; u < n; ++u) {
            for (Index v = 0; v < n; ++v) {
                if (p_(u, v) > 0.0) {
                    period = std::gcd(period, std::abs(level[static_cast<std::size_t>(u)] + 1 - level[static_cast<std::size_t>(v)]));
                }
            }
        }
        ergodic_ = period == 1;
        RealMatrix a = p_.transpose() - RealMatrix::Identity(n, n);
        a.row(n - 1).setOnes();
        RealVector rhs = RealVector::Zero(n);
        rhs(n - 1) = 1.0;
        pi_ = a.fullPivLu().solve(rhs);
        if ((pi_.transpose() * p_ - pi_.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
            throw ConvergenceError("stationary distribution solve inaccurate");
        }
        reversible_ = true;
        for (Index x = 0; x < n && reversible_; ++x) {
            for (Index y = 0; y < n; ++y) {
                if (std::abs(pi_(x) * p_(x, y) - pi_(y) * p_(y, x)) > 1e-10) {
                    reversible_ = false;
                    break;
                }
            }
        }
    }

    RealMatrix p_;
    RealVector pi_;
    bool irreducible_ = false;
    bool ergodic_ = false;
    bool reversible_ = false;
};

/// (I + P) / 2.
inline MarkovChain lazy(const MarkovChain& c)
{
    return MarkovChain(0.5 * (RealMatrix::Identity(c.size(), c.size()) + c.p()));
}

/// Sorted, deduplicated, range-checked node set; empty sets are rejected.
inline std::vector<Index> normalize_marked(std::vector<Index> m, Index n)
{
    require(!m.empty(), "no marked nodes");
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    require(m.front() >= 0 && m.back() < n, "marked node out of range");
    return m;
}

/// P(s) = (1 - s) P + s P', with P' absorbing at marked nodes.
class InterpolatedChain {
public:
    InterpolatedChain(MarkovChain base, std::vector<Index> marked, double s)
        : base_(std::move(base))
        , marked_(normalize_marked(std::move(marked), base_.size()))
        , s_(s)
    {
        require(s >= 0.0 && s < 1.0, "interpolation parameter must lie in [0,1)");
    }

    /// P' : marked rows replaced by self-loops.
    RealMatrix absorbing() const
    {
        RealMatrix q = base_.p();
        for (Index m : marked_) {
            q.row(m).setZero();
            q(m, m) = 1.0;
        }
        return q;
    }

    RealMatrix p() const { return (1.0 - s_) * base_.p() + s_ * absorbing(); }

    const MarkovChain& base() const { return base_; }
    const std::vector<Index>& marked() const { return marked_; }
    double s() const { return s_; }
    Index size() const { return base_.size(); }

    bool is_marked(Index x) const { return std::binary_search(marked_.begin(), marked_.end(), x); }

private:
    MarkovChain base_;
    std::vector<Index> marked_;
    double s_;
};

/// D_xy = sqrt(p_xy p_yx).
inline DenseOperator discriminant(const RealMatrix& p)
{
    const RealMatrix d = p.cwiseProduct(p.transpose()).cwiseSqrt();
    return DenseOperator::hermitian(d.cast<cplx>());
}

inline DenseOperator discriminant(const MarkovChain& c) { return discriminant(c.p()); }

inline DenseOperator discriminant(const InterpolatedChain& c) { return discriminant(c.p()); }

/// Expected steps to reach M from pi restricted to the unmarked nodes: (I - P_UU) tau = 1.
inline double hitting_time(const MarkovChain& c, const std::vector<Index>& marked)
{
    const std::vector<Index> m = normalize_marked(marked, c.size());
    require(c.is_irreducible(), "hitting time needs an irreducible chain");
    std::vector<Index> unmarked;
    for (Index x = 0; x < c.size(); ++x) {
        if (!std::binary_search(m.begin(), m.end(), x)) {
            unmarked.push_back(x);
        }
    }
    if (unmarked.empty()) {
        return 0.0;
    }
    const auto u = static_cast<Index>(unmarked.size());
    RealMatrix a(u, u);
    for (Index i = 0; i < u; ++i) {
        for (Index j = 0; j < u; ++j) {
            a(i, j) = (i == j ? 1.0 : 0.0) - c.p()(unmarked[static_cast<std::size_t>(i)], unmarked[static_cast<std::size_t>(j)]);
        }
    }
    const auto lu = a.fullPivLu();
    require(lu.isInvertible(), "marked set unreachable: singular hitting-time system");
    const RealVector tau = lu.solve(RealVector::Ones(u));
    double num = 0.0;
    double den = 0.0;
    for (Index i = 0; i < u; ++i) {
        const double w = c.pi()(unmarked[static_cast<std::size_t>(i)]);
        num += w * tau(i);
        den += w;
    }
    return num / den;
}

/// Weight matrix from directed "u v weight" triples; from_weights enforces symmetry.
inline RealMatrix weights_from_edges(Index n, const std::vector<std::tuple<Index, Index, double>>& edges)
{
    RealMatrix w = RealMatrix::Zero(n, n);
    for (const auto& [u, v, x] : edges) {
        require(u >= 0 && u < n && v >= 0 && v < n, "edge endpoint out of range");
        require(x > 0.0, "edge weight must be positive");
        w(u, v) += x;
    }
    return w;
}

} // namespace lcu::walks
