#pragma once

// Random values of every expression type, for round-trip and mutation tests.

#include <random>

#include "laplace/boxdiag.hpp"
#include "laplace/coeff.hpp"
#include "laplace/diffop.hpp"
#include "laplace/symmetrizer.hpp"

namespace randexpr {

using namespace laplace;

inline Scalar scalar(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-40, 40), den(1, 12);
    Scalar s(num(rng), den(rng));
    s.canonicalize();
    return s == 0 ? Scalar(1) : s;
}

// Labels are usually single digits; now and then large, to exercise the explicit regime.
inline Label label(std::mt19937& rng, bool wide) {
    if (wide && rng() % 4 == 0) return static_cast<Label>(10 + rng() % 30);
    return static_cast<Label>(1 + rng() % 9);
}

inline IndexSet index_set(std::mt19937& rng, bool wide, unsigned max_size = 3) {
    std::vector<Label> l;
    unsigned size = 1 + rng() % max_size;
    while (l.size() < size) {
        Label x = label(rng, wide);
        if (std::find(l.begin(), l.end(), x) == l.end()) l.push_back(x);
    }
    return IndexSet::from_labels(l);
}

inline MultiIndex multi_index(std::mt19937& rng, bool wide, unsigned max_size) {
    std::vector<Label> l;
    unsigned size = rng() % (max_size + 1);
    for (unsigned i = 0; i < size; ++i) l.push_back(label(rng, wide));
    return MultiIndex::from_labels(l);
}

inline CoeffSymbol symbol(std::mt19937& rng, bool wide) {
    switch (rng() % 4) {
    case 0: {
        MultiIndex k = multi_index(rng, wide, 2);
        return CoeffSymbol::b(k.empty() ? MultiIndex{label(rng, wide)} : k);
    }
    case 1:
        return CoeffSymbol::theta(multi_index(rng, wide, 2));
    default:
        return CoeffSymbol::a(index_set(rng, wide), multi_index(rng, wide, 2));
    }
}

inline CoeffPoly coeff(std::mt19937& rng, bool wide, unsigned max_terms = 5) {
    CoeffPoly p;
    unsigned terms = rng() % (max_terms + 1);
    for (unsigned t = 0; t < terms; ++t) {
        CoeffPoly m(scalar(rng));
        unsigned f = rng() % 4;
        for (unsigned i = 0; i < f; ++i) m = m * CoeffPoly::symbol(symbol(rng, wide));
        p += m;
    }
    return p;
}

inline DiagramPoly diagram(std::mt19937& rng) {
    DiagramPoly d;
    unsigned terms = rng() % 6;
    for (unsigned t = 0; t < terms; ++t) {
        std::vector<unsigned> parts;
        unsigned len = rng() % 5;
        for (unsigned i = 0; i < len; ++i) parts.push_back(1 + rng() % 12);
        d.add_term(Composition(parts), scalar(rng));
    }
    return d;
}

inline LPoly lpoly(std::mt19937& rng, bool wide) {
    LPoly p;
    unsigned terms = rng() % 6;
    for (unsigned t = 0; t < terms; ++t) {
        std::vector<IndexSet> f;
        unsigned len = rng() % 4;
        for (unsigned i = 0; i < len; ++i) f.push_back(index_set(rng, wide));
        p.add_term(LMonomial(f), scalar(rng));
    }
    return p;
}

inline DiffOp diffop(std::mt19937& rng, bool wide) {
    DiffOp a;
    unsigned terms = rng() % 5;
    for (unsigned t = 0; t < terms; ++t) a.add_term(multi_index(rng, wide, 3), coeff(rng, wide, 3));
    return a;
}

} // namespace randexpr
