#include "laplace/coeff.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "laplace/errors.hpp"

namespace laplace {

// CoeffSymbol

CoeffSymbol CoeffSymbol::a(IndexSet base, MultiIndex deriv) {
    if (base.empty()) throw DomainError("a-symbol needs a nonempty base (a_{} = 1)");
    return CoeffSymbol(SymbolKind::A, std::move(base), std::move(deriv));
}

CoeffSymbol CoeffSymbol::b(MultiIndex k) {
    if (k.empty()) throw DomainError("b-symbol needs a nonempty subscript (b_{} = 1)");
    return CoeffSymbol(SymbolKind::B, IndexSet{}, std::move(k));
}

CoeffSymbol CoeffSymbol::theta(MultiIndex deriv) {
    return CoeffSymbol(SymbolKind::Theta, IndexSet{}, std::move(deriv));
}

std::strong_ordering CoeffSymbol::operator<=>(const CoeffSymbol& other) const noexcept {
    if (auto c = kind_ <=> other.kind_; c != 0) return c;
    if (auto c = base_ <=> other.base_; c != 0) return c;
    return deriv_ <=> other.deriv_;
}

// CoeffMonomial

CoeffMonomial::CoeffMonomial(Factors factors) : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end());
    for (const auto& f : factors_) weight_ += f.deriv().size();
}

CoeffMonomial::CoeffMonomial(const CoeffSymbol& s) : weight_(s.deriv().size()) {
    factors_.push_back(s);
}

CoeffMonomial CoeffMonomial::operator*(const CoeffMonomial& other) const {
    CoeffMonomial r;
    r.factors_.reserve(factors_.size() + other.factors_.size());
    std::merge(factors_.begin(), factors_.end(), other.factors_.begin(), other.factors_.end(),
               std::back_inserter(r.factors_));
    r.weight_ = weight_ + other.weight_;
    return r;
}

bool CoeffMonomial::contains(SymbolKind k) const noexcept {
    return std::any_of(factors_.begin(), factors_.end(), [k](const CoeffSymbol& s) { return s.kind() == k; });
}

bool MonomialOrder::operator()(const CoeffMonomial& x, const CoeffMonomial& y) const noexcept {
    if (x.derivative_weight() != y.derivative_weight()) return x.derivative_weight() < y.derivative_weight();
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    return std::lexicographical_compare(x.factors().begin(), x.factors().end(), y.factors().begin(),
                                        y.factors().end());
}

// CoeffPoly

CoeffPoly::CoeffPoly(const Scalar& constant) {
    if (constant != 0) terms_.emplace(CoeffMonomial{}, constant);
}

CoeffPoly CoeffPoly::symbol(const CoeffSymbol& s, const Scalar& c) {
    return monomial(CoeffMonomial(s), c);
}

CoeffPoly CoeffPoly::monomial(const CoeffMonomial& m, const Scalar& c) {
    CoeffPoly p;
    p.add_term(m, c);
    return p;
}

Scalar CoeffPoly::coefficient(const CoeffMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
}

bool CoeffPoly::contains(SymbolKind k) const noexcept {
    return std::any_of(terms_.begin(), terms_.end(), [k](const auto& t) { return t.first.contains(k); });
}

void CoeffPoly::add_term(const CoeffMonomial& m, const Scalar& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

CoeffPoly& CoeffPoly::operator+=(const CoeffPoly& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

CoeffPoly& CoeffPoly::operator-=(const CoeffPoly& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

CoeffPoly& CoeffPoly::operator*=(const Scalar& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

CoeffPoly CoeffPoly::operator-() const {
    CoeffPoly r = *this;
    for (auto& [m, v] : r.terms_) v = -v;
    return r;
}

CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b) {
    CoeffPoly r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

CoeffPoly add(const CoeffPoly& p, const CoeffPoly& q) { return p + q; }
CoeffPoly mul(const CoeffPoly& p, const CoeffPoly& q) { return p * q; }
CoeffPoly scale(const CoeffPoly& p, const Scalar& c) { return p * c; }

// Derivations

namespace {

struct SymbolTerm {
    int coefficient;
    CoeffMonomial::Factors factors;
};

boost::container::small_vector<SymbolTerm, 2> derive_symbol(const CoeffSymbol& s, Label i) {
    boost::container::small_vector<SymbolTerm, 2> out;
    switch (s.kind()) {
    case SymbolKind::A:
        out.push_back({1, {CoeffSymbol::a(s.base(), s.deriv().with(i))}});
        break;
    case SymbolKind::Theta:
        out.push_back({1, {CoeffSymbol::theta(s.deriv().with(i))}});
        break;
    case SymbolKind::B:
        // b_K = g^{-1} g_{,K}  =>  ∂_i b_K = b_{K+i} - b_i b_K
        out.push_back({1, {CoeffSymbol::b(s.deriv().with(i))}});
        out.push_back({-1, {CoeffSymbol::b(MultiIndex{i}), s}});
        break;
    }
    return out;
}

} // namespace

CoeffPoly derive(const CoeffPoly& p, Label i) {
    CoeffPoly out;
    for (const auto& [m, c] : p.terms()) {
        const auto& f = m.factors();
        for (std::size_t k = 0; k < f.size();) {
            std::size_t mult = 1;
            while (k + mult < f.size() && f[k + mult] == f[k]) ++mult;
            CoeffMonomial::Factors rest;
            rest.reserve(f.size() + 1);
            rest.insert(rest.end(), f.begin(), f.begin() + k);
            rest.insert(rest.end(), f.begin() + k + 1, f.end());
            for (auto& t : derive_symbol(f[k], i)) {
                CoeffMonomial::Factors nf = rest;
                nf.insert(nf.end(), t.factors.begin(), t.factors.end());
                out.add_term(CoeffMonomial(std::move(nf)), c * static_cast<long>(mult) * t.coefficient);
            }
            k += mult;
        }
    }
    return out;
}

CoeffPoly derive_multi(const CoeffPoly& p, const MultiIndex& d) {
    CoeffPoly r = p;
    for (auto l : d) r = derive(r, l);
    return r;
}

CoeffPoly gauge_image(const CoeffSymbol& s) {
    if (s.kind() != SymbolKind::A) throw DomainError("gauge image is defined for a-symbols only");
    const IndexSet& j = s.base();
    CoeffPoly base_image;
    for (const auto& k : subsets(j)) {
        IndexSet rest = j.minus(k);
        CoeffMonomial::Factors f;
        if (!rest.empty()) f.push_back(CoeffSymbol::a(rest));
        if (!k.empty()) f.push_back(CoeffSymbol::b(MultiIndex::from_set(k)));
        base_image.add_term(CoeffMonomial(std::move(f)), 1);
    }
    return derive_multi(base_image, s.deriv());
}

namespace {

CoeffPoly transform_terms(const std::vector<std::pair<CoeffMonomial, Scalar>>& terms, std::size_t begin,
                          std::size_t end, const std::map<CoeffSymbol, CoeffPoly>& images) {
    CoeffPoly acc;
    for (std::size_t t = begin; t < end; ++t) {
        const auto& [m, c] = terms[t];
        CoeffPoly prod(c);
        for (const auto& s : m.factors()) prod = prod * images.at(s);
        acc += prod;
    }
    return acc;
}

} // namespace

CoeffPoly gauge_transform(const CoeffPoly& p, Execution exec) {
    if (p.contains(SymbolKind::B) || p.contains(SymbolKind::Theta))
        throw DomainError("gauge_transform: input already contains gauge or theta symbols");

    std::vector<CoeffSymbol> symbols;
    for (const auto& [m, c] : p.terms())
        for (const auto& s : m.factors()) symbols.push_back(s);
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());

    std::vector<std::pair<CoeffMonomial, Scalar>> terms(p.terms().begin(), p.terms().end());
    std::vector<CoeffPoly> image_list(symbols.size());
    std::map<CoeffSymbol, CoeffPoly> images;

    if (exec == Execution::Serial) {
        for (std::size_t i = 0; i < symbols.size(); ++i) image_list[i] = gauge_image(symbols[i]);
        for (std::size_t i = 0; i < symbols.size(); ++i) images.emplace(symbols[i], std::move(image_list[i]));
        return transform_terms(terms, 0, terms.size(), images);
    }

    const long nsym = static_cast<long>(symbols.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < nsym; ++i) image_list[i] = gauge_image(symbols[i]);
    for (std::size_t i = 0; i < symbols.size(); ++i) images.emplace(symbols[i], std::move(image_list[i]));

    // Fixed chunking keeps the partial sums independent of thread scheduling.
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(terms.size(), 4 * max_threads()));
    std::vector<CoeffPoly> partial(chunks);
    const long nchunks = static_cast<long>(chunks);
#pragma omp parallel for schedule(dynamic)
    for (long c = 0; c < nchunks; ++c) {
        std::size_t b = terms.size() * c / chunks;
        std::size_t e = terms.size() * (c + 1) / chunks;
        partial[c] = transform_terms(terms, b, e, images);
    }
    CoeffPoly out;
    for (const auto& part : partial) out += part;
    return out;
}

CoeffPoly drop_gauge(const CoeffPoly& p) {
    CoeffPoly out;
    for (const auto& [m, c] : p.terms())
        if (!m.contains(SymbolKind::B)) out.add_term(m, c);
    return out;
}

CoeffSymbol relabel(const CoeffSymbol& s, const std::map<Label, Label>& map) {
    auto image = [&map](Label l) {
        auto it = map.find(l);
        return it == map.end() ? l : it->second;
    };
    std::vector<Label> base, deriv;
    for (auto l : s.base()) base.push_back(image(l));
    for (auto l : s.deriv()) deriv.push_back(image(l));
    switch (s.kind()) {
    case SymbolKind::A:
        return CoeffSymbol::a(IndexSet::from_labels(base), MultiIndex::from_labels(deriv));
    case SymbolKind::B:
        return CoeffSymbol::b(MultiIndex::from_labels(deriv));
    case SymbolKind::Theta:
        break;
    }
    return CoeffSymbol::theta(MultiIndex::from_labels(deriv));
}

CoeffPoly relabel(const CoeffPoly& p, const std::map<Label, Label>& map) {
    CoeffPoly out;
    for (const auto& [m, c] : p.terms()) {
        CoeffMonomial::Factors f;
        for (const auto& s : m.factors()) f.push_back(relabel(s, map));
        out.add_term(CoeffMonomial(std::move(f)), c);
    }
    return out;
}

Label max_label(const CoeffPoly& p) {
    Label best = 0;
    for (const auto& [m, c] : p.terms())
        for (const auto& s : m.factors()) {
            best = std::max(best, s.base().max_label());
            for (auto l : s.deriv()) best = std::max(best, l);
        }
    return best;
}

} // namespace laplace
