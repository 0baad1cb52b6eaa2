#include "laplace/symmetrizer.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <utility>

#include "laplace/errors.hpp"

namespace laplace {

// LMonomial / LPoly

LMonomial::LMonomial(std::vector<IndexSet> factors) : factors_(std::move(factors)) {
    for (const auto& f : factors_)
        if (f.empty()) throw DomainError("L factor needs a nonempty index set");
}

std::size_t LMonomial::degree() const noexcept {
    std::size_t d = 0;
    for (const auto& f : factors_) d += f.size();
    return d;
}

Composition LMonomial::shape() const {
    std::vector<unsigned> parts;
    for (const auto& f : factors_) parts.push_back(static_cast<unsigned>(f.size()));
    return Composition(std::move(parts));
}

LMonomial LMonomial::operator*(const LMonomial& other) const {
    std::vector<IndexSet> f = factors_;
    f.insert(f.end(), other.factors_.begin(), other.factors_.end());
    return LMonomial(std::move(f));
}

bool LMonomialOrder::operator()(const LMonomial& x, const LMonomial& y) const noexcept {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    if (x.length() != y.length()) return x.length() < y.length();
    return x.factors() < y.factors();
}

LPoly::LPoly(const LMonomial& m, const Scalar& c) { add_term(m, c); }

Scalar LPoly::coefficient(const LMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
}

void LPoly::add_term(const LMonomial& m, const Scalar& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LPoly& LPoly::operator+=(const LPoly& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

LPoly& LPoly::operator-=(const LPoly& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

LPoly& LPoly::operator*=(const Scalar& s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

LPoly operator*(const LPoly& a, const LPoly& b) {
    LPoly r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

// Symmetrisation

LPoly sigma(const DiagramPoly& pattern, const IndexSet& j) {
    LPoly out;
    for (const auto& [c, v] : pattern.terms()) {
        const unsigned m = c.degree();
        if (m > j.size()) throw DomainError("pattern longer than index set");
        for (const auto& inj : injections(m, j)) {
            std::vector<IndexSet> factors;
            factors.reserve(c.length());
            std::size_t slot = 0;
            for (unsigned part : c.parts()) {
                std::vector<Label> block(inj.begin() + static_cast<long>(slot),
                                         inj.begin() + static_cast<long>(slot + part));
                factors.push_back(IndexSet::from_labels(block));
                slot += part;
            }
            out.add_term(LMonomial(std::move(factors)), v);
        }
    }
    return out;
}

LPoly overbar(const DiagramPoly& pattern, const IndexSet& j) {
    for (const auto& [c, v] : pattern.terms())
        if (c.degree() != j.size()) throw DomainError("overbar needs every diagram degree equal to |J|");
    LPoly s = sigma(pattern, j);
    s *= Scalar(1) / Scalar(factorial(static_cast<unsigned>(j.size())));
    return s;
}

// Expansion

namespace {

using SuffixCache = std::map<std::vector<IndexSet>, DiffOp>;

const DiffOp& expand_suffix(const std::vector<IndexSet>& factors, std::size_t start, SuffixCache& cache) {
    std::vector<IndexSet> key(factors.begin() + static_cast<long>(start), factors.end());
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    DiffOp value = start == factors.size() ? DiffOp(1)
                                           : compose(build_L(factors[start]), expand_suffix(factors, start + 1, cache));
    return cache.emplace(std::move(key), std::move(value)).first->second;
}

DiffOp expand_range(const std::vector<std::pair<LMonomial, Scalar>>& terms, std::size_t begin, std::size_t end) {
    SuffixCache cache;
    DiffOp out;
    for (std::size_t t = begin; t < end; ++t) out += expand_suffix(terms[t].first.factors(), 0, cache) * terms[t].second;
    return out;
}

} // namespace

DiffOp expand(const LPoly& p, Execution exec) {
    std::vector<std::pair<LMonomial, Scalar>> terms(p.terms().begin(), p.terms().end());
    if (exec == Execution::Serial) return expand_range(terms, 0, terms.size());

    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(terms.size(), 4 * max_threads()));
    std::vector<DiffOp> partial(chunks);
    const long nchunks = static_cast<long>(chunks);
#pragma omp parallel for schedule(dynamic)
    for (long c = 0; c < nchunks; ++c)
        partial[c] = expand_range(terms, terms.size() * c / chunks, terms.size() * (c + 1) / chunks);
    DiffOp out;
    for (const auto& part : partial) out += part;
    return out;
}

CoeffPoly order_zero_part(const LPoly& p) {
    std::map<std::vector<IndexSet>, CoeffPoly> cache;
    std::function<const CoeffPoly&(const std::vector<IndexSet>&, std::size_t)> suffix =
        [&](const std::vector<IndexSet>& f, std::size_t start) -> const CoeffPoly& {
        std::vector<IndexSet> key(f.begin() + static_cast<long>(start), f.end());
        if (auto it = cache.find(key); it != cache.end()) return it->second;
        CoeffPoly value = start == f.size() ? CoeffPoly(1) : apply(build_L(f[start]), suffix(f, start + 1));
        return cache.emplace(std::move(key), std::move(value)).first->second;
    };
    CoeffPoly out;
    for (const auto& [m, c] : p.terms()) out += suffix(m.factors(), 0) * c;
    return out;
}

namespace {

using Mask = std::uint32_t;

IndexSet labels_of(Mask mask, const IndexSet& j) {
    std::vector<Label> labels;
    for (std::size_t i = 0; i < j.size(); ++i)
        if (mask & (Mask{1} << i)) labels.push_back(j[i]);
    return IndexSet::from_labels(labels);
}

// Σ over ordered disjoint blocks B_1..B_p ⊆ J with |B_i| = c_i of
// L_{B_1} ∘ … ∘ L_{B_p}, folded from the right with `step(L_B, tail)`,
// weighted by Π c_i! (the injections collapsing onto the same blocks).
template <class Value, class Step>
Value sigma_dp(const DiagramPoly& pattern, const IndexSet& j, bool normalise, Execution exec, Step step) {
    const std::size_t n = j.size();
    if (n > 31) throw DomainError("index set too large for subset expansion");
    const Mask full = n == 0 ? 0 : static_cast<Mask>((std::uint64_t{1} << n) - 1);

    std::map<Mask, DiffOp> l_cache;
    for (Mask b = 1; b <= full && b != 0; ++b) l_cache.emplace(b, build_L(labels_of(b, j)));

    // keyed by (suffix of parts, available labels)
    std::map<std::pair<std::vector<unsigned>, Mask>, Value> cache;
    const Value one(1);

    Value total{};
    for (const auto& [comp, coeff] : pattern.terms()) {
        const unsigned m = comp.degree();
        if (m > n) throw DomainError("pattern longer than index set");
        if (normalise && m != n) throw DomainError("overbar needs every diagram degree equal to |J|");
        const auto& parts = comp.parts();
        const std::size_t p = parts.size();

        std::vector<unsigned> prefix(p + 1, 0);
        for (std::size_t k = 0; k < p; ++k) prefix[k + 1] = prefix[k] + parts[k];

        for (std::size_t k = p; k-- > 0;) {
            std::vector<unsigned> suffix(parts.begin() + static_cast<long>(k), parts.end());
            std::vector<unsigned> tail(parts.begin() + static_cast<long>(k) + 1, parts.end());
            std::vector<Mask> needed;
            if (k == 0) {
                if (!cache.count({suffix, full})) needed.push_back(full);
            } else {
                const int size = static_cast<int>(n - prefix[k]);
                for (Mask a = 0; a <= full; ++a) {
                    if (std::popcount(a) == size && !cache.count({suffix, a})) needed.push_back(a);
                    if (a == full) break;
                }
            }
            std::vector<Value> values(needed.size());
            auto compute = [&](std::size_t idx) {
                const Mask avail = needed[idx];
                Value acc{};
                for (Mask b = avail; b != 0; b = (b - 1) & avail) {
                    if (std::popcount(b) != static_cast<int>(parts[k])) continue;
                    const Value& rest = tail.empty() ? one : cache.at({tail, avail & ~b});
                    acc += step(l_cache.at(b), rest);
                }
                values[idx] = std::move(acc);
            };
            const long count = static_cast<long>(needed.size());
            if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
                for (long i = 0; i < count; ++i) compute(static_cast<std::size_t>(i));
            } else {
                for (long i = 0; i < count; ++i) compute(static_cast<std::size_t>(i));
            }
            for (std::size_t i = 0; i < needed.size(); ++i) cache.emplace(std::make_pair(suffix, needed[i]), std::move(values[i]));
        }

        Integer weight = 1;
        for (unsigned part : parts) weight *= factorial(part);
        const Value& whole = p == 0 ? one : cache.at({std::vector<unsigned>(parts), full});
        if (p == 0) {
            // the empty diagram is the scalar 1 for every injection (there is exactly one)
            total += whole * Scalar(coeff);
        } else {
            total += whole * Scalar(coeff * Scalar(weight));
        }
    }
    if (normalise) total *= Scalar(1) / Scalar(factorial(static_cast<unsigned>(n)));
    return total;
}

} // namespace

DiffOp expand_sigma(const DiagramPoly& pattern, const IndexSet& j, Execution exec) {
    return sigma_dp<DiffOp>(pattern, j, false, exec, [](const DiffOp& l, const DiffOp& rest) { return compose(l, rest); });
}

DiffOp expand_overbar(const DiagramPoly& pattern, const IndexSet& j, Execution exec) {
    return sigma_dp<DiffOp>(pattern, j, true, exec, [](const DiffOp& l, const DiffOp& rest) { return compose(l, rest); });
}

CoeffPoly order_zero_overbar(const DiagramPoly& pattern, const IndexSet& j, Execution exec) {
    return sigma_dp<CoeffPoly>(pattern, j, true, exec, [](const DiffOp& l, const CoeffPoly& rest) { return apply(l, rest); });
}

std::map<unsigned, DiagramPoly> theta_profile(const std::vector<ThetaTerm>& terms) {
    std::map<unsigned, DiagramPoly> out;
    for (const auto& t : terms) {
        std::vector<unsigned> parts;
        for (const auto& f : t.factors) parts.push_back(static_cast<unsigned>(f.size()));
        out[static_cast<unsigned>(t.theta.size())].add_term(Composition(std::move(parts)), 1);
    }
    return out;
}

LMonomial relabel(const LMonomial& m, const std::map<Label, Label>& map) {
    std::vector<IndexSet> factors;
    for (const auto& f : m.factors()) {
        std::vector<Label> labels;
        for (auto l : f) {
            auto it = map.find(l);
            labels.push_back(it == map.end() ? l : it->second);
        }
        factors.push_back(IndexSet::from_labels(labels));
    }
    return LMonomial(std::move(factors));
}

LPoly relabel(const LPoly& p, const std::map<Label, Label>& map) {
    LPoly out;
    for (const auto& [m, c] : p.terms()) out.add_term(relabel(m, map), c);
    return out;
}

} // namespace laplace
