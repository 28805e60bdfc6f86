#pragma once

#include <functional>

#include "lcu/core/random.hpp"
#include "lcu/decomp/descriptor.hpp"
#include "lcu/decomp/taylor.hpp"

namespace lcu {

/// Default cost: |duration| for time evolutions, k+1 for k Paulis plus a rotation, the exponent for walk powers.
inline double default_cost(const UnitaryDescriptor& u)
{
    if (const auto* te = std::get_if<TimeEvolution>(&u.kind)) {
        return std::abs(te->duration);
    }
    if (const auto* pr = std::get_if<PauliProductRotation>(&u.kind)) {
        return static_cast<double>(pr->paulis.size()) + 1.0;
    }
    if (const auto* wp = std::get_if<WalkPower>(&u.kind)) {
        return static_cast<double>(wp->exponent);
    }
    return 0.0;
}

using CostFunction = std::function<double(const UnitaryDescriptor&)>;

struct DrawInfo {
    std::uint64_t id = 0;
    double cost = 0.0;
};

/// Finite LCU with every U_j psi0 precomputed; draws are lookups.
class PreparedLcu {
public:
    /// Returns U_j psi0 for term j.
    using ApplyFn = std::function<Vector(std::size_t, const UnitaryDescriptor&)>;

    PreparedLcu(const LcuDecomposition& lcu, const StateVector& psi0, const ApplyFn& apply, const CostFunction& cost = default_cost)
        : l1_(lcu.l1_norm())
        , dim_(psi0.dim())
    {
        require(psi0.is_normalized(), "initial state must be normalized");
        const auto n = lcu.size();
        outputs_.resize(dim_, static_cast<Index>(n));
        costs_.resize(n);
        std::vector<double> w(n);
        CompensatedSum avg;
        for (std::size_t j = 0; j < n; ++j) {
            const auto& t = lcu.terms()[j];
            outputs_.col(static_cast<Index>(j)) = apply(j, t.unitary);
            costs_[j] = cost(t.unitary);
            w[j] = t.coefficient;
            avg.add(t.coefficient * costs_[j]);
            tau_max_ = std::max(tau_max_, costs_[j]);
        }
        avg_cost_ = avg.value() / l1_;
        sampler_ = DiscreteSampler(w);
    }

    /// Time-evolution LCU on the eigensystem of H.
    static PreparedLcu on_spectrum(const LcuDecomposition& lcu, const StateVector& psi0, const Eigensystem& h,
        const CostFunction& cost = default_cost)
    {
        require(psi0.dim() == h.dim(), "state and Hamiltonian dimensions differ");
        const Vector coords = h.vectors.adjoint() * psi0.amplitudes();
        const auto apply = [&](std::size_t, const UnitaryDescriptor& u) -> Vector {
            if (std::holds_alternative<IdentityUnitary>(u.kind)) {
                return u.phase * psi0.amplitudes();
            }
            const auto* te = std::get_if<TimeEvolution>(&u.kind);
            require(te != nullptr, "spectral context supports time evolutions only");
            Vector phased(h.dim());
            for (Index k = 0; k < h.dim(); ++k) {
                phased(k) = std::exp(cplx(0.0, -te->duration * h.values(k))) * coords(k);
            }
            return u.phase * (h.vectors * phased);
        };
        return PreparedLcu(lcu, psi0, apply, cost);
    }

    /// Any LCU realizable on a context, via dense realization.
    template <class Context>
    static PreparedLcu on_context(const LcuDecomposition& lcu, const StateVector& psi0, const Context& ctx,
        const CostFunction& cost = default_cost)
    {
        const auto apply = [&](std::size_t, const UnitaryDescriptor& u) -> Vector { return realize(u, ctx).matrix() * psi0.amplitudes(); };
        return PreparedLcu(lcu, psi0, apply, cost);
    }

    /// LCU whose unitaries are supplied as explicit matrices, one per term.
    static PreparedLcu on_unitaries(const LcuDecomposition& lcu, const StateVector& psi0, const std::vector<DenseOperator>& us,
        const CostFunction& cost = default_cost)
    {
        require(us.size() == lcu.size(), "one unitary per term required");
        const auto apply = [&](std::size_t j, const UnitaryDescriptor&) -> Vector { return us[j].matrix() * psi0.amplitudes(); };
        return PreparedLcu(lcu, psi0, apply, cost);
    }

    double l1_norm() const { return l1_; }
    Index dim() const { return dim_; }
    std::size_t size() const { return costs_.size(); }
    double probability(std::size_t j) const { return sampler_.probability(j); }
    double cost(std::size_t j) const { return costs_[j]; }
    double average_cost() const { return avg_cost_; }
    double tau_max() const { return tau_max_; }
    Eigen::Ref<const Vector> output(std::size_t j) const { return outputs_.col(static_cast<Index>(j)); }

    template <class Buf>
    Eigen::Ref<const Vector> draw(Stream& rng, DrawInfo& info, Buf&, Buf&) const
    {
        const std::size_t j = sampler_(rng);
        info.id = j;
        info.cost = costs_[j];
        return outputs_.col(static_cast<Index>(j));
    }

private:
    double l1_;
    Index dim_;
    Matrix outputs_;
    std::vector<double> costs_;
    double avg_cost_ = 0.0;
    double tau_max_ = 0.0;
    DiscreteSampler sampler_;
};

/// Product W_r ... W_1 of independent segment draws applied to psi0.
class SegmentProductSampler {
public:
    SegmentProductSampler(TaylorSegment segment, const StateVector& psi0)
        : seg_(std::move(segment))
        , psi0_(psi0.amplitudes())
    {
        require(psi0.is_normalized(), "initial state must be normalized");
        require(psi0.dim() == seg_.hamiltonian().dim(), "state and Hamiltonian dimensions differ");
        const double r = static_cast<double>(seg_.segments());
        l1_ = std::pow(seg_.l1_norm(), r);
        double per_segment = 0.0;
        const double x = seg_.x();
        for (int k = 0; k <= seg_.bigk(); k += 2) {
            const double a = x / (k + 1.0);
            const double wk = (k == 0 ? 1.0 : (x == 0.0 ? 0.0 : std::exp(k * std::log(x) - std::lgamma(k + 1.0)))) * std::sqrt(1.0 + a * a);
            per_segment += wk / seg_.l1_norm() * (k + 1.0);
        }
        avg_cost_ = r * per_segment;
        tau_max_ = r * (seg_.max_order() + 1.0);
    }

    double l1_norm() const { return l1_; }
    Index dim() const { return psi0_.size(); }
    double average_cost() const { return avg_cost_; }
    double tau_max() const { return tau_max_; }
    const TaylorSegment& segment() const { return seg_; }

    Eigen::Ref<const Vector> draw(Stream& rng, DrawInfo& info, Vector& buf, Vector& tmp) const
    {
        buf = psi0_;
        if (tmp.size() != buf.size()) {
            tmp.resize(buf.size());
        }
        std::uint64_t h = 0;
        double cost = 0.0;
        for (long s = 0; s < seg_.segments(); ++s) {
            const UnitaryDescriptor u = seg_.draw(rng);
            seg_.apply(u, buf, tmp);
            if (const auto* pr = std::get_if<PauliProductRotation>(&u.kind)) {
                h = mix64(h ^ pr->rotation_index);
                for (auto l : pr->paulis) {
                    h = mix64(h ^ (l + 1));
                }
                cost += default_cost(u);
            }
        }
        info.id = h;
        info.cost = cost;
        return buf;
    }

private:
    TaylorSegment seg_;
    Vector psi0_;
    double l1_ = 1.0;
    double avg_cost_ = 0.0;
    double tau_max_ = 0.0;
};

} // namespace lcu
