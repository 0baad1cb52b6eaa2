#include "laplace/diffop.hpp"

#include <functional>
#include <stdexcept>

#include "laplace/errors.hpp"

namespace laplace {

// DiffOp

DiffOp::DiffOp(const CoeffPoly& f) {
    if (!f.is_zero()) terms_.emplace(MultiIndex{}, f);
}

DiffOp DiffOp::partial(const MultiIndex& m) { return term(CoeffPoly(1), m); }

DiffOp DiffOp::term(const CoeffPoly& f, const MultiIndex& m) {
    DiffOp d;
    d.add_term(m, f);
    return d;
}

CoeffPoly DiffOp::coefficient(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? CoeffPoly() : it->second;
}

bool DiffOp::contains(SymbolKind k) const noexcept {
    for (const auto& [m, f] : terms_)
        if (f.contains(k)) return true;
    return false;
}

void DiffOp::add_term(const MultiIndex& m, const CoeffPoly& f) {
    if (f.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, f);
    if (!inserted) {
        it->second += f;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DiffOp& DiffOp::operator+=(const DiffOp& other) {
    for (const auto& [m, f] : other.terms_) add_term(m, f);
    return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& other) {
    for (const auto& [m, f] : other.terms_) add_term(m, -f);
    return *this;
}

DiffOp& DiffOp::operator*=(const Scalar& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, f] : terms_) f *= c;
    return *this;
}

DiffOp operator*(const DiffOp& a, const DiffOp& b) { return compose(a, b); }

// Degree

std::size_t Degree::value() const {
    if (!value_) throw DomainError("differential degree of the zero operator is -infinity");
    return *value_;
}

std::strong_ordering Degree::operator<=>(const Degree& other) const noexcept {
    if (!value_ || !other.value_) return value_.has_value() <=> other.value_.has_value();
    return *value_ <=> *other.value_;
}

// Construction and products

DiffOp build_L(const IndexSet& j) {
    if (j.empty()) throw DomainError("L_J needs a nonempty index set");
    DiffOp l;
    for (const auto& k : subsets(j)) {
        IndexSet rest = j.minus(k);
        CoeffPoly coeff = rest.empty() ? CoeffPoly(1) : CoeffPoly::symbol(CoeffSymbol::a(rest));
        l.add_term(MultiIndex::from_set(k), coeff);
    }
    return l;
}

namespace {

struct SubMultiset {
    MultiIndex taken;
    MultiIndex remaining;
    Integer weight;
};

// All sub-multisets M1 of M with the Leibniz weight Π C(m_i, k_i).
std::vector<SubMultiset> sub_multisets(const MultiIndex& m) {
    auto groups = m.grouped();
    std::vector<SubMultiset> out;
    std::vector<Label> taken, remaining;
    std::function<void(std::size_t, Integer)> rec = [&](std::size_t g, Integer w) {
        if (g == groups.size()) {
            out.push_back({MultiIndex::from_labels(taken), MultiIndex::from_labels(remaining), w});
            return;
        }
        auto [label, mult] = groups[g];
        for (std::size_t k = 0; k <= mult; ++k) {
            for (std::size_t t = 0; t < k; ++t) taken.push_back(label);
            for (std::size_t t = k; t < mult; ++t) remaining.push_back(label);
            rec(g + 1, w * binomial(static_cast<unsigned>(mult), static_cast<unsigned>(k)));
            taken.resize(taken.size() - k);
            remaining.resize(remaining.size() - (mult - k));
        }
    };
    rec(0, Integer(1));
    return out;
}

} // namespace

DiffOp compose(const DiffOp& a, const DiffOp& b) {
    DiffOp out;
    // derivatives of each coefficient of b, keyed by the sub-multiset taken
    std::vector<std::map<MultiIndex, CoeffPoly>> derivative_cache(b.terms().size());
    for (const auto& [m, f] : a.terms()) {
        const auto splits = sub_multisets(m);
        std::size_t bi = 0;
        for (const auto& [n, g] : b.terms()) {
            auto& cache = derivative_cache[bi++];
            for (const auto& split : splits) {
                auto it = cache.find(split.taken);
                if (it == cache.end()) it = cache.emplace(split.taken, derive_multi(g, split.taken)).first;
                if (it->second.is_zero()) continue;
                CoeffPoly coeff = f * it->second;
                if (split.weight != 1) coeff *= Scalar(split.weight);
                out.add_term(split.remaining.merged(n), coeff);
            }
        }
    }
    return out;
}

DiffOp commutator(const DiffOp& a, const DiffOp& b) { return compose(a, b) - compose(b, a); }

Degree differential_degree(const DiffOp& a) {
    if (a.is_zero()) return Degree::neg_infinity();
    // DerivOrder stores the highest-order key first.
    return Degree::finite(a.terms().begin()->first.size());
}

CoeffPoly leading_coefficient(const DiffOp& a) {
    if (a.is_zero()) throw DomainError("leading coefficient of the zero operator");
    auto it = a.terms().begin();
    auto next = std::next(it);
    if (next != a.terms().end() && next->first.size() == it->first.size())
        throw DomainError("ambiguous leading term: several derivatives of maximal order");
    return it->second;
}

DiffOp theta_map(const DiffOp& a) {
    if (a.contains(SymbolKind::Theta)) throw DomainError("theta_map: operator already contains theta symbols");
    DiffOp result = commutator(a, DiffOp(CoeffPoly::symbol(CoeffSymbol::theta())));
    const CoeffSymbol bare = CoeffSymbol::theta();
    for (const auto& [m, f] : result.terms())
        for (const auto& [mono, c] : f.terms())
            for (const auto& s : mono.factors())
                if (s == bare) throw std::logic_error("theta_map: undifferentiated theta survived the commutator");
    return result;
}

DiffOp product_of_L(const std::vector<IndexSet>& blocks) {
    DiffOp acc(1);
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) acc = compose(build_L(*it), acc);
    return acc;
}

DiffOp theta_formula(const IndexSet& j) {
    if (j.empty()) throw DomainError("theta_formula needs a nonempty index set");
    return theta_monomial_formula({j});
}

std::vector<ThetaTerm> theta_monomial_terms(const std::vector<IndexSet>& blocks) {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].empty()) throw DomainError("theta monomial: empty block");
        for (std::size_t k = i + 1; k < blocks.size(); ++k)
            if (!blocks[i].disjoint(blocks[k])) throw DomainError("theta monomial: blocks must be pairwise disjoint");
    }
    std::vector<std::vector<IndexSet>> choices;
    for (const auto& b : blocks) choices.push_back(subsets(b));

    std::vector<ThetaTerm> out;
    std::vector<std::size_t> pick(blocks.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == blocks.size()) {
            ThetaTerm t;
            std::vector<Label> theta;
            for (std::size_t k = 0; k < blocks.size(); ++k) {
                const IndexSet& taken = choices[k][pick[k]];
                theta.insert(theta.end(), taken.begin(), taken.end());
                IndexSet rest = blocks[k].minus(taken);
                if (!rest.empty()) t.factors.push_back(rest);
            }
            if (theta.empty()) return;
            t.theta = MultiIndex::from_labels(theta);
            out.push_back(std::move(t));
            return;
        }
        for (std::size_t c = 0; c < choices[i].size(); ++c) {
            pick[i] = c;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

DiffOp theta_monomial_formula(const std::vector<IndexSet>& blocks) {
    DiffOp out;
    std::map<std::vector<IndexSet>, DiffOp> products;
    for (const auto& t : theta_monomial_terms(blocks)) {
        auto it = products.find(t.factors);
        if (it == products.end()) it = products.emplace(t.factors, product_of_L(t.factors)).first;
        out += compose(DiffOp(CoeffPoly::symbol(CoeffSymbol::theta(t.theta))), it->second);
    }
    return out;
}

DiffOp conjugate(const DiffOp& a) {
    if (a.contains(SymbolKind::B)) throw DomainError("conjugate: operator already contains gauge symbols");
    DiffOp out;
    for (const auto& [m, f] : a.terms()) {
        DiffOp shifted(1);
        for (auto l : m) {
            DiffOp factor = DiffOp::partial(MultiIndex{l});
            factor.add_term(MultiIndex{}, CoeffPoly::symbol(CoeffSymbol::b(MultiIndex{l})));
            shifted = compose(shifted, factor);
        }
        out += compose(DiffOp(f), shifted);
    }
    return out;
}

DiffOp gauge_transform_coefficients(const DiffOp& a) {
    DiffOp out;
    for (const auto& [m, f] : a.terms()) out.add_term(m, gauge_transform(f));
    return out;
}

DiffOp a_from_L(const IndexSet& j) {
    if (j.empty()) throw DomainError("a_from_L needs a nonempty index set");
    DiffOp out;
    for (const auto& k : subsets(j)) {
        IndexSet rest = j.minus(k);
        DiffOp l = rest.empty() ? DiffOp(1) : build_L(rest);
        DiffOp term = compose(l, DiffOp::partial(MultiIndex::from_set(k)));
        if (k.size() % 2 == 0) out += term;
        else out -= term;
    }
    return out;
}

CoeffPoly apply(const DiffOp& a, const CoeffPoly& p) {
    CoeffPoly out;
    for (const auto& [m, f] : a.terms()) out += f * derive_multi(p, m);
    return out;
}

DiffOp relabel(const DiffOp& a, const std::map<Label, Label>& map) {
    DiffOp out;
    for (const auto& [m, f] : a.terms()) {
        std::vector<Label> labels;
        for (auto l : m) {
            auto it = map.find(l);
            labels.push_back(it == map.end() ? l : it->second);
        }
        out.add_term(MultiIndex::from_labels(labels), relabel(f, map));
    }
    return out;
}

} // namespace laplace
