#pragma once

// Noncommutative differential operators Σ f_M ∂_M over the coefficient ring,
// kept in normal form (all derivatives to the right of all coefficients).

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "laplace/coeff.hpp"
#include "laplace/index.hpp"

namespace laplace {

/// Storage order of derivative keys: higher order first, then lexicographic.
struct DerivOrder {
    bool operator()(const MultiIndex& x, const MultiIndex& y) const noexcept {
        if (x.size() != y.size()) return x.size() > y.size();
        return x < y;
    }
};

class DiffOp {
public:
    using Terms = std::map<MultiIndex, CoeffPoly, DerivOrder>;

    DiffOp() = default;
    /// The order-zero operator "multiply by f".
    DiffOp(const CoeffPoly& f);
    DiffOp(int c) : DiffOp(CoeffPoly(c)) {}
    /// ∂_M
    static DiffOp partial(const MultiIndex& m);
    static DiffOp term(const CoeffPoly& f, const MultiIndex& m);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// Coefficient of ∂_M (zero when absent).
    CoeffPoly coefficient(const MultiIndex& m) const;
    /// Coefficient of ∂_∅.
    CoeffPoly order_zero_part() const { return coefficient(MultiIndex{}); }
    bool contains(SymbolKind k) const noexcept;

    void add_term(const MultiIndex& m, const CoeffPoly& f);

    DiffOp& operator+=(const DiffOp& other);
    DiffOp& operator-=(const DiffOp& other);
    DiffOp& operator*=(const Scalar& c);
    friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
    friend DiffOp operator*(DiffOp a, const Scalar& c) { return a *= c; }
    friend DiffOp operator*(const Scalar& c, DiffOp a) { return a *= c; }
    /// Operator product, see compose().
    friend DiffOp operator*(const DiffOp& a, const DiffOp& b);

    bool operator==(const DiffOp& other) const = default;

private:
    Terms terms_;
};

/// Differential degree: max |M| over the stored terms, or -∞ for the zero operator.
class Degree {
public:
    static Degree neg_infinity() noexcept { return Degree(); }
    static Degree finite(std::size_t d) noexcept { return Degree(d); }

    bool is_finite() const noexcept { return value_.has_value(); }
    /// Throws DomainError for -∞.
    std::size_t value() const;

    std::strong_ordering operator<=>(const Degree& other) const noexcept;
    bool operator==(const Degree& other) const noexcept = default;
    /// Comparison against an ordinary integer; -∞ is below every integer.
    bool at_most(std::size_t d) const noexcept { return !value_ || *value_ <= d; }

private:
    Degree() = default;
    explicit Degree(std::size_t d) : value_(d) {}
    std::optional<std::size_t> value_;
};

/// L_J = Σ_{K⊆J} a_{J\K} ∂_K with a_∅ = 1. Throws DomainError for empty J.
DiffOp build_L(const IndexSet& j);

/// Operator product with ∂_i f = f ∂_i + f_{,i}, returned in normal form.
DiffOp compose(const DiffOp& a, const DiffOp& b);
/// compose(a,b) - compose(b,a)
DiffOp commutator(const DiffOp& a, const DiffOp& b);

Degree differential_degree(const DiffOp& a);

/// Coefficient of the unique term of maximal differential degree. Throws
/// DomainError for the zero operator or when several ∂_M share the maximal order.
CoeffPoly leading_coefficient(const DiffOp& a);

/// Θ(A) = [A, θ] for a formal function θ. Throws DomainError if A already
/// contains θ-symbols.
DiffOp theta_map(const DiffOp& a);

/// Σ_{∅≠K⊆J} θ_{,K} L_{J\K}, expanded.
DiffOp theta_formula(const IndexSet& j);

/// One summand θ_{,K_1…K_p} L_{J_1\K_1}…L_{J_p\K_p} of the monomial Θ formula.
/// Empty residual factors (L_∅ = 1) are omitted from `factors`.
struct ThetaTerm {
    MultiIndex theta;
    std::vector<IndexSet> factors;

    auto operator<=>(const ThetaTerm&) const = default;
};

/// The summands of Θ(L_{J_1}…L_{J_p}) for pairwise disjoint blocks, in
/// deterministic order. Throws DomainError unless the blocks are nonempty
/// and pairwise disjoint.
std::vector<ThetaTerm> theta_monomial_terms(const std::vector<IndexSet>& blocks);
/// Sum of the terms above, expanded to normal form.
DiffOp theta_monomial_formula(const std::vector<IndexSet>& blocks);

/// L_{J_1} ∘ … ∘ L_{J_p} (the empty product is 1).
DiffOp product_of_L(const std::vector<IndexSet>& blocks);

/// g^{-1} A g, realised by ∂_i ↦ ∂_i + b_i. Throws DomainError if A contains b-symbols.
DiffOp conjugate(const DiffOp& a);

/// Applies gauge_transform to every coefficient.
DiffOp gauge_transform_coefficients(const DiffOp& a);

/// Σ_{K⊆J} (-1)^{|K|} L_{J\K} ∂_K with L_∅ = 1; equals the order-zero operator a_J.
DiffOp a_from_L(const IndexSet& j);

/// Applies the operator to an element of the coefficient ring: Σ f_M ∂_M(p).
CoeffPoly apply(const DiffOp& a, const CoeffPoly& p);

DiffOp relabel(const DiffOp& a, const std::map<Label, Label>& map);

} // namespace laplace
