#pragma once

#include <optional>
#include <variant>

#include "lcu/core/pauli.hpp"
#include "lcu/core/random.hpp"

namespace lcu {

enum class Mode { expectation, shot };

inline const char* to_string(Mode m) { return m == Mode::shot ? "shot" : "expectation"; }

/// Dense Hermitian observable or a sampled LCU of unitary observables, with cached norm data.
class Observable {
public:
    Observable(DenseOperator o)
        : dense_(std::move(o))
    {
        require(dense_->is_hermitian(), "observable must be Hermitian");
        norm_ = hermitian_norm(*dense_);
        const Matrix sq = dense_->matrix() * dense_->matrix();
        involutory_ = (sq - Matrix::Identity(dense_->dim(), dense_->dim())).norm() <= 1e-10;
        identity_ = (dense_->matrix() - Matrix::Identity(dense_->dim(), dense_->dim())).norm() == 0.0;
    }

    Observable(ObservableLcu o)
        : lcu_(std::move(o))
    {
        norm_ = lcu_->h1_norm();
        std::vector<double> w;
        involutory_ = true;
        for (const auto& t : lcu_->terms()) {
            w.push_back(std::abs(t.weight));
            const Matrix& u = t.unitary.matrix();
            if (!t.unitary.is_hermitian() || (u * u - Matrix::Identity(u.rows(), u.cols())).norm() > 1e-10) {
                involutory_ = false;
            }
        }
        sampler_ = DiscreteSampler(w);
    }

    static Observable identity(Index dim) { return Observable(DenseOperator::identity(dim)); }

    /// ||O|| for dense observables, ||h||_1 for sampled ones.
    double norm() const { return norm_; }
    /// Multiplier applied to the sample mean: ||h||_1 when terms are sampled, 1 otherwise.
    double scale() const { return lcu_ ? lcu_->h1_norm() : 1.0; }
    bool is_sampled() const { return lcu_.has_value(); }
    bool is_involutory() const { return involutory_; }
    Index dim() const { return dense_ ? dense_->dim() : lcu_->dim(); }

    /// Exact operator (dense or summed LCU).
    DenseOperator dense() const { return dense_ ? *dense_ : lcu_->dense(); }

    /// One circuit outcome given a = V1 psi0 and b = V2 psi0.
    double sample(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b, Mode mode, Stream& rng, Vector& scratch) const
    {
        double sign = 1.0;
        const Matrix* op = nullptr;
        if (lcu_) {
            const std::size_t j = sampler_(rng);
            const auto& term = lcu_->terms()[j];
            sign = term.weight < 0.0 ? -1.0 : 1.0;
            op = &term.unitary.matrix();
        } else {
            op = &dense_->matrix();
        }
        double e;
        if (identity_) {
            e = b.dot(a).real();
        } else {
            scratch.noalias() = (*op) * a;
            e = b.dot(scratch).real();
        }
        if (mode == Mode::expectation) {
            return sign * e;
        }
        if (!involutory_) {
            throw PreconditionError("shot mode requires an involutory observable");
        }
        if (std::abs(e) > 1.0 + 1e-9) {
            throw PreconditionError("shot-mode outcome probability out of range");
        }
        const double p_plus = 0.5 * (1.0 + std::clamp(e, -1.0, 1.0));
        return sign * (rng.uniform() < p_plus ? 1.0 : -1.0);
    }

private:
    std::optional<DenseOperator> dense_;
    std::optional<ObservableLcu> lcu_;
    DiscreteSampler sampler_;
    double norm_ = 0.0;
    bool involutory_ = false;
    bool identity_ = false;
};

} // namespace lcu
