#pragma once

// The commutative differential ring of operator coefficients:
//   a_{J,D}  (kind A)      coefficient a_J differentiated by the multi-index D
//   b_K      (kind B)      the gauge log-derivative g^{-1} g_{,K}
//   θ_{,D}   (kind Theta)  derivatives of an arbitrary function θ
// with exact rational scalars and the partial derivatives acting as derivations.

#include <compare>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "laplace/index.hpp"
#include "laplace/parallel.hpp"
#include "laplace/scalar.hpp"

namespace laplace {

enum class SymbolKind : unsigned char { A = 0, B = 1, Theta = 2 };

class CoeffSymbol {
public:
    /// a_{J,D}; J must be nonempty (a_∅ = 1 is the ring unit).
    static CoeffSymbol a(IndexSet base, MultiIndex deriv = {});
    /// b_K = g^{-1} g_{,K}; K must be nonempty (b_∅ = 1).
    static CoeffSymbol b(MultiIndex k);
    /// θ_{,D}; D may be empty (θ itself).
    static CoeffSymbol theta(MultiIndex deriv = {});

    SymbolKind kind() const noexcept { return kind_; }
    const IndexSet& base() const noexcept { return base_; }
    const MultiIndex& deriv() const noexcept { return deriv_; }

    std::strong_ordering operator<=>(const CoeffSymbol& other) const noexcept;
    bool operator==(const CoeffSymbol& other) const noexcept = default;

private:
    CoeffSymbol(SymbolKind kind, IndexSet base, MultiIndex deriv)
        : kind_(kind), base_(std::move(base)), deriv_(std::move(deriv)) {}

    SymbolKind kind_;
    IndexSet base_;
    MultiIndex deriv_;
};

/// Sorted multiset of symbols; the empty monomial is 1.
class CoeffMonomial {
public:
    using Factors = boost::container::small_vector<CoeffSymbol, 4>;

    CoeffMonomial() = default;
    explicit CoeffMonomial(Factors factors);
    explicit CoeffMonomial(const CoeffSymbol& s);

    const Factors& factors() const noexcept { return factors_; }
    std::size_t degree() const noexcept { return factors_.size(); }
    bool is_one() const noexcept { return factors_.empty(); }
    /// Total number of derivative labels over all factors (b subscripts included).
    std::size_t derivative_weight() const noexcept { return weight_; }

    CoeffMonomial operator*(const CoeffMonomial& other) const;
    bool contains(SymbolKind k) const noexcept;

    bool operator==(const CoeffMonomial& other) const noexcept { return factors_ == other.factors_; }

private:
    Factors factors_;
    std::size_t weight_ = 0;
};

/// Display and storage order: derivative weight, then number of factors,
/// then lexicographic on the sorted factors.
struct MonomialOrder {
    bool operator()(const CoeffMonomial& x, const CoeffMonomial& y) const noexcept;
};

class CoeffPoly {
public:
    using Terms = std::map<CoeffMonomial, Scalar, MonomialOrder>;

    CoeffPoly() = default;
    CoeffPoly(const Scalar& constant);
    CoeffPoly(int constant) : CoeffPoly(Scalar(constant)) {}
    static CoeffPoly symbol(const CoeffSymbol& s, const Scalar& c = 1);
    static CoeffPoly monomial(const CoeffMonomial& m, const Scalar& c = 1);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    Scalar coefficient(const CoeffMonomial& m) const;
    bool contains(SymbolKind k) const noexcept;

    /// Adds c·m, dropping the entry if it cancels.
    void add_term(const CoeffMonomial& m, const Scalar& c);

    CoeffPoly& operator+=(const CoeffPoly& other);
    CoeffPoly& operator-=(const CoeffPoly& other);
    CoeffPoly& operator*=(const Scalar& c);
    CoeffPoly operator-() const;
    friend CoeffPoly operator+(CoeffPoly a, const CoeffPoly& b) { return a += b; }
    friend CoeffPoly operator-(CoeffPoly a, const CoeffPoly& b) { return a -= b; }
    friend CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b);
    friend CoeffPoly operator*(CoeffPoly a, const Scalar& c) { return a *= c; }
    friend CoeffPoly operator*(const Scalar& c, CoeffPoly a) { return a *= c; }

    bool operator==(const CoeffPoly& other) const = default;

private:
    Terms terms_;
};

CoeffPoly add(const CoeffPoly& p, const CoeffPoly& q);
CoeffPoly mul(const CoeffPoly& p, const CoeffPoly& q);
CoeffPoly scale(const CoeffPoly& p, const Scalar& c);

/// ∂_i as a derivation. Symbol rules: ∂_i a_{J,D} = a_{J,D⊎i}, ∂_i θ_{,D} = θ_{,D⊎i},
/// ∂_i b_K = b_{K⊎i} − b_i b_K.
CoeffPoly derive(const CoeffPoly& p, Label i);
/// Iterated derive over the labels of d; the result does not depend on the order.
CoeffPoly derive_multi(const CoeffPoly& p, const MultiIndex& d);

/// Image of a single a-symbol under g^{-1} L g:
/// a_J ↦ Σ_{K⊆J} a_{J\K} b_K, a_{J,D} ↦ ∂_D of that.
CoeffPoly gauge_image(const CoeffSymbol& s);
/// Replaces every a-symbol by its gauge image and expands. Throws DomainError
/// if p already contains b or θ symbols.
CoeffPoly gauge_transform(const CoeffPoly& p, Execution exec = Execution::Serial);
/// Sets every b-symbol to zero (the constant gauge).
CoeffPoly drop_gauge(const CoeffPoly& p);

/// Applies an injective relabeling to every subscript; labels missing from the
/// map are kept. Throws DomainError if the map collapses two labels of a base set.
CoeffSymbol relabel(const CoeffSymbol& s, const std::map<Label, Label>& map);
CoeffPoly relabel(const CoeffPoly& p, const std::map<Label, Label>& map);

/// Largest label appearing anywhere in p (0 for constants).
Label max_label(const CoeffPoly& p);

} // namespace laplace
