#pragma once

#include <cmath>

#include "lcu/core/random.hpp"
#include "lcu/decomp/descriptor.hpp"

namespace lcu {

/// One Taylor segment of e^{-iHt/r} as an implicit LCU over Pauli products times a single Pauli rotation.
/// Even orders k <= K carry both degree k and k+1 through the rotation.
class TaylorSegment {
public:
    TaylorSegment(const PauliHamiltonian& h, double t, long r, int bigk)
        : h_(h)
        , r_(r)
        , bigk_(bigk)
    {
        require(std::isfinite(t), "segment time must be finite");
        require(r >= 1, "segment count must be positive");
        require(bigk >= 0, "truncation order must be nonnegative");
        beta_ = h.beta();
        t_tilde_ = beta_ * t;
        x_ = beta_ > 0.0 ? std::abs(t_tilde_) / static_cast<double>(r) : 0.0;
        time_sign_ = t < 0.0 ? -1.0 : 1.0;
        std::vector<double> kw;
        CompensatedSum l1;
        for (int k = 0; k <= bigk_; k += 2) {
            const double a = x_ / (k + 1.0);
            const double w = order_weight(k) * std::sqrt(1.0 + a * a);
            orders_.push_back(k);
            kw.push_back(w);
            l1.add(w);
        }
        l1_ = l1.value();
        k_sampler_ = DiscreteSampler(kw);
        if (beta_ > 0.0) {
            std::vector<double> pw;
            for (const auto& term : h.terms()) {
                pw.push_back(std::abs(term.coefficient));
            }
            p_sampler_ = DiscreteSampler(pw);
        }
    }

    double l1_norm() const { return l1_; }
    double x() const { return x_; }
    double t_tilde() const { return t_tilde_; }
    long segments() const { return r_; }
    int bigk() const { return bigk_; }
    const PauliHamiltonian& hamiltonian() const { return h_; }

    /// Largest Pauli count any draw can contain.
    int max_order() const { return orders_.back(); }

    /// Draws one segment unitary with probability alpha_j / l1_norm.
    UnitaryDescriptor draw(Stream& rng) const
    {
        if (beta_ == 0.0) {
            return {IdentityUnitary{}, 1.0};
        }
        const int k = orders_[k_sampler_(rng)];
        PauliProductRotation pr;
        pr.paulis.resize(static_cast<std::size_t>(k));
        int sign_power = 0;
        for (int i = 0; i < k; ++i) {
            const auto l = static_cast<std::uint32_t>(p_sampler_(rng));
            pr.paulis[static_cast<std::size_t>(i)] = l;
            if (h_.terms()[l].coefficient * time_sign_ < 0.0) {
                sign_power += 2;
            }
        }
        pr.rotation_index = static_cast<std::uint32_t>(p_sampler_(rng));
        const double s = h_.terms()[pr.rotation_index].coefficient * time_sign_ < 0.0 ? -1.0 : 1.0;
        pr.angle = s * std::atan(x_ / (k + 1.0));
        return {std::move(pr), PauliString::ipow(sign_power)};
    }

    /// state <- U state for a descriptor drawn from this segment; `tmp` is scratch of equal size.
    void apply(const UnitaryDescriptor& u, Vector& state, Vector& tmp) const
    {
        if (std::holds_alternative<IdentityUnitary>(u.kind)) {
            state *= u.phase;
            return;
        }
        const auto& pr = std::get<PauliProductRotation>(u.kind);
        const auto& terms = h_.terms();
        terms[pr.rotation_index].pauli.apply(state.data(), tmp.data());
        const double c = std::cos(pr.angle);
        const double s = std::sin(pr.angle);
        state = c * state - kI * s * tmp;
        for (auto it = pr.paulis.rbegin(); it != pr.paulis.rend(); ++it) {
            terms[*it].pauli.apply(state.data(), tmp.data());
            state.swap(tmp);
        }
        state *= u.phase * PauliString::ipow(-static_cast<int>(pr.paulis.size()));
    }

    /// Number of (k, l_1..l_k, m) tuples.
    double tuple_count() const
    {
        const double l = static_cast<double>(h_.terms().size());
        double n = 0.0;
        for (int k : orders_) {
            n += std::pow(l, k + 1);
        }
        return n;
    }

    /// Exhaustive explicit LCU; only for tiny instances.
    LcuDecomposition enumerate(double max_tuples = 1e6) const
    {
        require(tuple_count() <= max_tuples, "segment too large to enumerate");
        std::vector<LcuTerm> terms;
        if (beta_ == 0.0) {
            terms.push_back({1.0, {IdentityUnitary{}, 1.0}});
            return LcuDecomposition(std::move(terms), 0.0);
        }
        const auto& ht = h_.terms();
        const auto nl = static_cast<std::uint32_t>(ht.size());
        for (std::size_t ki = 0; ki < orders_.size(); ++ki) {
            const int k = orders_[ki];
            const double a = x_ / (k + 1.0);
            const double wk = order_weight(k) * std::sqrt(1.0 + a * a);
            std::vector<std::uint32_t> idx(static_cast<std::size_t>(k), 0);
            while (true) {
                for (std::uint32_t m = 0; m < nl; ++m) {
                    double w = wk * std::abs(ht[m].coefficient) / beta_;
                    int sign_power = 0;
                    for (auto l : idx) {
                        w *= std::abs(ht[l].coefficient) / beta_;
                        if (ht[l].coefficient * time_sign_ < 0.0) {
                            sign_power += 2;
                        }
                    }
                    if (w > 0.0) {
                        const double s = ht[m].coefficient * time_sign_ < 0.0 ? -1.0 : 1.0;
                        terms.push_back({w, {PauliProductRotation{idx, m, s * std::atan(a)}, PauliString::ipow(sign_power)}});
                    }
                }
                std::size_t pos = 0;
                while (pos < idx.size() && ++idx[pos] == nl) {
                    idx[pos] = 0;
                    ++pos;
                }
                if (pos == idx.size()) {
                    break;
                }
            }
        }
        return LcuDecomposition(std::move(terms), 0.0);
    }

private:
    double order_weight(int k) const
    {
        if (k == 0) {
            return 1.0;
        }
        if (x_ == 0.0) {
            return 0.0;
        }
        return std::exp(k * std::log(x_) - std::lgamma(k + 1.0));
    }

    PauliHamiltonian h_;
    long r_;
    int bigk_;
    double beta_ = 0.0;
    double t_tilde_ = 0.0;
    double x_ = 0.0;
    double time_sign_ = 1.0;
    double l1_ = 0.0;
    std::vector<int> orders_;
    DiscreteSampler k_sampler_;
    DiscreteSampler p_sampler_;
};

inline TaylorSegment taylor_segment(const PauliHamiltonian& h, double t, long r, int bigk)
{
    return TaylorSegment(h, t, r, bigk);
}

/// Smallest K with r x^{K+1}/(K+1)! e^{x} <= gamma, x = beta t / r.
inline int taylor_order(double x, long r, double gamma)
{
    require(gamma > 0.0, "truncation target must be positive");
    if (x == 0.0) {
        return 0;
    }
    for (int k = 0; k < 1000; ++k) {
        const double tail = static_cast<double>(r) * std::exp((k + 1) * std::log(x) - std::lgamma(k + 2.0) + x);
        if (tail <= gamma) {
            return k;
        }
    }
    throw ConvergenceError("Taylor truncation order search did not terminate");
}

} // namespace lcu
