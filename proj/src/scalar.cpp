#include "laplace/scalar.hpp"

#include "laplace/errors.hpp"

namespace laplace {

std::string to_string(const Scalar& s) {
    if (s.get_den() == 1) return s.get_num().get_str();
    return s.get_num().get_str() + "/" + s.get_den().get_str();
}

Scalar parse_scalar(std::string_view text) {
    auto digits = [](std::string_view t) {
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };
    bool negative = false;
    if (!text.empty() && text.front() == '-') {
        negative = true;
        text.remove_prefix(1);
    }
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!digits(num) || !digits(den)) throw DomainError("malformed rational '" + std::string(text) + "'");
    Integer d{std::string(den)};
    if (d == 0) throw DomainError("zero denominator");
    Scalar r{Integer{std::string(num)}, d};
    r.canonicalize();
    return negative ? Scalar(-r) : r;
}

Integer binomial(unsigned n, unsigned k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Integer factorial(unsigned n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

} // namespace laplace
