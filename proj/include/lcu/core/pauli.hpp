#pragma once

#include <bit>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "lcu/core/dense.hpp"

namespace lcu {

/// Tensor product of single-qubit Paulis with a phase i^k; symbol 0 acts on the most significant bit.
class PauliString {
public:
    PauliString() = default;

    explicit PauliString(std::string_view symbols, int phase_power = 0)
        : symbols_(symbols)
        , phase_power_(((phase_power % 4) + 4) % 4)
    {
        require(!symbols_.empty(), "Pauli string must have at least one qubit");
        require(symbols_.size() <= 62, "Pauli string too long");
        const std::size_t n = symbols_.size();
        for (std::size_t q = 0; q < n; ++q) {
            const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
            switch (symbols_[q]) {
            case 'I': break;
            case 'X': x_ |= bit; break;
            case 'Y':
                x_ |= bit;
                z_ |= bit;
                break;
            case 'Z': z_ |= bit; break;
            default: throw ConfigError(std::string("bad Pauli symbol '") + symbols_[q] + "'");
            }
        }
    }

    std::size_t size() const { return symbols_.size(); }
    const std::string& symbols() const { return symbols_; }
    int phase_power() const { return phase_power_; }
    cplx phase() const { return ipow(phase_power_); }
    std::uint64_t x_mask() const { return x_; }
    std::uint64_t z_mask() const { return z_; }
    Index dim() const { return Index{1} << symbols_.size(); }

    PauliString negated() const { return PauliString(symbols_, phase_power_ + 2); }

    bool commutes_with(const PauliString& o) const
    {
        return (std::popcount(x_ & o.z_) + std::popcount(z_ & o.x_)) % 2 == 0;
    }

    /// out = P in; out must not alias in.
    void apply(const cplx* in, cplx* out) const
    {
        const cplx base = ipow(phase_power_ + std::popcount(x_ & z_));
        const std::uint64_t d = static_cast<std::uint64_t>(dim());
        for (std::uint64_t b = 0; b < d; ++b) {
            const cplx a = (std::popcount(b & z_) & 1) ? -base : base;
            out[b ^ x_] = a * in[b];
        }
    }

    Vector apply(const Vector& in) const
    {
        require(in.size() == dim(), "dimension mismatch in Pauli application");
        Vector out(in.size());
        apply(in.data(), out.data());
        return out;
    }

    Matrix dense() const
    {
        const Index d = dim();
        Matrix m = Matrix::Zero(d, d);
        const cplx base = ipow(phase_power_ + std::popcount(x_ & z_));
        for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(d); ++b) {
            m(static_cast<Index>(b ^ x_), static_cast<Index>(b)) = (std::popcount(b & z_) & 1) ? -base : base;
        }
        return m;
    }

    static cplx ipow(int k)
    {
        switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
        }
    }

private:
    std::string symbols_;
    int phase_power_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
};

inline DenseOperator pauli_to_dense(const PauliString& p)
{
    return DenseOperator::unitary(p.dense());
}

/// Real-weighted sum of Hermitian Pauli strings.
class PauliHamiltonian {
public:
    struct Term {
        double coefficient;
        PauliString pauli;
    };

    PauliHamiltonian() = default;

    explicit PauliHamiltonian(std::vector<Term> terms)
        : terms_(std::move(terms))
    {
        require(!terms_.empty(), "Hamiltonian needs at least one term");
        const std::size_t n = terms_.front().pauli.size();
        for (const auto& t : terms_) {
            require(t.pauli.size() == n, "mismatched Pauli string lengths");
            require(t.pauli.phase_power() % 2 == 0, "Hamiltonian terms must be Hermitian Pauli strings");
        }
        recompute_beta();
    }

    /// Parses "0.3*XZI + 0.4*ZZI"; whitespace is ignored, a missing coefficient means 1.
    static PauliHamiltonian parse(std::string_view text)
    {
        std::string s;
        for (char c : text) {
            if (!std::isspace(static_cast<unsigned char>(c))) {
                s.push_back(c);
            }
        }
        if (s.empty()) {
            throw ConfigError("empty Hamiltonian text");
        }
        std::vector<Term> terms;
        std::size_t pos = 0;
        while (pos < s.size()) {
            double sign = 1.0;
            if (s[pos] == '+' || s[pos] == '-') {
                sign = s[pos] == '-' ? -1.0 : 1.0;
                ++pos;
            } else if (!terms.empty()) {
                throw ConfigError("expected '+' or '-' between terms in \"" + s + "\"");
            }
            double coef = 1.0;
            if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) {
                const auto res = std::from_chars(s.data() + pos, s.data() + s.size(), coef);
                if (res.ec != std::errc()) {
                    throw ConfigError("bad coefficient in \"" + s + "\"");
                }
                pos = static_cast<std::size_t>(res.ptr - s.data());
                if (pos < s.size() && s[pos] == '*') {
                    ++pos;
                }
            }
            const std::size_t start = pos;
            while (pos < s.size() && std::string_view("IXYZ").find(s[pos]) != std::string_view::npos) {
                ++pos;
            }
            if (pos == start) {
                throw ConfigError("expected a Pauli word in \"" + s + "\"");
            }
            terms.push_back({sign * coef, PauliString(std::string_view(s).substr(start, pos - start))});
        }
        for (const auto& t : terms) {
            if (t.pauli.size() != terms.front().pauli.size()) {
                throw ConfigError("mismatched Pauli string lengths in \"" + s + "\"");
            }
        }
        return PauliHamiltonian(std::move(terms));
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t n_qubits() const { return terms_.front().pauli.size(); }
    Index dim() const { return Index{1} << n_qubits(); }
    double beta() const { return beta_; }

    /// H + shift * I, merged into an existing identity term when present.
    PauliHamiltonian shifted(double shift) const
    {
        std::vector<Term> out = terms_;
        const std::string ident(n_qubits(), 'I');
        bool merged = false;
        for (auto& t : out) {
            if (t.pauli.symbols() == ident) {
                t.coefficient += shift;
                merged = true;
                break;
            }
        }
        if (!merged) {
            out.push_back({shift, PauliString(ident)});
        }
        return PauliHamiltonian(std::move(out));
    }

    PauliHamiltonian scaled(double factor) const
    {
        std::vector<Term> out = terms_;
        for (auto& t : out) {
            t.coefficient *= factor;
        }
        return PauliHamiltonian(std::move(out));
    }

    std::string to_string() const
    {
        std::string s;
        char buf[64];
        for (std::size_t k = 0; k < terms_.size(); ++k) {
            const double c = terms_[k].coefficient;
            if (k > 0) {
                s += c < 0 ? " - " : " + ";
            } else if (c < 0) {
                s += "-";
            }
            std::snprintf(buf, sizeof(buf), "%.17g", std::abs(c));
            s += buf;
            s += "*";
            s += terms_[k].pauli.symbols();
        }
        return s;
    }

private:
    void recompute_beta()
    {
        CompensatedSum b;
        for (const auto& t : terms_) {
            b.add(std::abs(t.coefficient));
        }
        beta_ = b.value();
    }

    std::vector<Term> terms_;
    double beta_ = 0.0;
};

inline DenseOperator ham_to_dense(const PauliHamiltonian& h)
{
    const Index d = h.dim();
    Matrix m = Matrix::Zero(d, d);
    for (const auto& t : h.terms()) {
        const cplx base = PauliString::ipow(t.pauli.phase_power() + std::popcount(t.pauli.x_mask() & t.pauli.z_mask()));
        for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(d); ++b) {
            const cplx a = (std::popcount(b & t.pauli.z_mask()) & 1) ? -base : base;
            m(static_cast<Index>(b ^ t.pauli.x_mask()), static_cast<Index>(b)) += t.coefficient * a;
        }
    }
    return DenseOperator::hermitian(std::move(m));
}

/// Observable written as sum_j h_j O_j with unitary O_j.
class ObservableLcu {
public:
    struct Term {
        double weight;
        DenseOperator unitary;
    };

    explicit ObservableLcu(std::vector<Term> terms)
        : terms_(std::move(terms))
    {
        require(!terms_.empty(), "observable LCU needs at least one term");
        CompensatedSum s;
        for (const auto& t : terms_) {
            require(t.unitary.is_unitary(), "observable LCU terms must be unitary");
            require(t.unitary.dim() == terms_.front().unitary.dim(), "observable LCU dimension mismatch");
            s.add(std::abs(t.weight));
        }
        h1_ = s.value();
        require(h1_ > 0.0, "observable LCU has zero weight");
    }

    static ObservableLcu from_pauli(const PauliHamiltonian& h)
    {
        std::vector<Term> terms;
        for (const auto& t : h.terms()) {
            terms.push_back({t.coefficient, pauli_to_dense(t.pauli)});
        }
        return ObservableLcu(std::move(terms));
    }

    const std::vector<Term>& terms() const { return terms_; }
    double h1_norm() const { return h1_; }
    Index dim() const { return terms_.front().unitary.dim(); }

    DenseOperator dense() const
    {
        Matrix m = Matrix::Zero(dim(), dim());
        for (const auto& t : terms_) {
            m += t.weight * t.unitary.matrix();
        }
        return DenseOperator::hermitian(std::move(m));
    }

private:
    std::vector<Term> terms_;
    double h1_ = 0.0;
};

} // namespace lcu
