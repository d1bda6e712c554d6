#include "qhv/gf.hpp"

#include <stdexcept>
#include <string>

namespace qhv::gf {

namespace {

// digitwise base-p helpers on packed integers (construction-time only)
std::uint32_t digit_add(std::uint32_t a, std::uint32_t b, int p) {
    std::uint32_t out = 0, mult = 1;
    while (a || b) {
        out += mult * ((a % p + b % p) % p);
        a /= p;
        b /= p;
        mult *= p;
    }
    return out;
}

std::uint32_t digit_scale(std::uint32_t c, std::uint32_t a, int p) {
    std::uint32_t out = 0, mult = 1;
    while (a) {
        out += mult * ((a % p) * c % p);
        a /= p;
        mult *= p;
    }
    return out;
}

std::uint32_t digit_neg(std::uint32_t a, int p) {
    std::uint32_t out = 0, mult = 1;
    while (a) {
        out += mult * ((p - a % p) % p);
        a /= p;
        mult *= p;
    }
    return out;
}

std::uint32_t ipow(std::uint32_t b, int e) {
    std::uint32_t r = 1;
    while (e--) r *= b;
    return r;
}

// pinned primitive polynomials (packed base-p); searched ones are canonical anyway,
// these just spare the search for the field-tower degrees.
std::uint32_t pinned_poly(int p, int m) {
    if (p == 2) {
        switch (m) {
            case 2: return 0x7;      // x^2+x+1
            case 6: return 0x43;     // x^6+x+1
            case 10: return 0x409;   // x^10+x^3+1
            case 14: return 0x4443;  // x^14+x^10+x^6+x+1
            default: break;
        }
    }
    return 0;
}

}  // namespace

Field::Field(int p, int m, std::uint32_t poly) : p_(p), m_(m), poly_(poly) {
    if (p < 2 || m < 1) throw std::invalid_argument("gf::Field: bad (p, m)");
    Q_ = ipow(std::uint32_t(p), m);
    if (Q_ > 65536) throw std::invalid_argument("gf::Field: p^m exceeds 16-bit element representation");
    build_tables();
}

void Field::build_tables() {
    const std::uint32_t Q = Q_;
    log_.assign(Q, 0);
    exp_.assign(2 * (Q - 1), 0);
    if (Q == 2) {
        // GF(2): trivial tables
        exp_.assign(2, 1);
        log_[1] = 0;
    } else {
        std::uint32_t x = 1;
        const std::uint32_t pm = Q;  // p^m, packed x^m position
        for (std::uint32_t i = 0; i < Q - 1; ++i) {
            if (x == 1 && i != 0)
                throw std::invalid_argument("gf::Field: reduction polynomial is not primitive");
            exp_[i] = static_cast<Elem>(x);
            log_[x] = i;
            // multiply by x: shift digits, then reduce by the monic poly
            std::uint64_t shifted = std::uint64_t(x) * p_;
            while (shifted >= pm) {
                std::uint32_t lead = std::uint32_t(shifted / pm);
                shifted -= std::uint64_t(lead) * pm;
                // x^m = -(poly - x^m)
                std::uint32_t low = poly_ - pm;  // poly minus leading digit
                shifted = digit_add(std::uint32_t(shifted), digit_scale(lead, digit_neg(low, p_), p_), p_);
            }
            x = std::uint32_t(shifted);
        }
        if (x != 1) throw std::invalid_argument("gf::Field: reduction polynomial is not primitive");
        for (std::uint32_t i = 0; i < Q - 1; ++i) exp_[Q - 1 + i] = exp_[i];
    }
    if (p_ != 2) {
        add_tab_.resize(std::size_t(Q) * Q);
        neg_tab_.resize(Q);
        for (std::uint32_t a = 0; a < Q; ++a) {
            neg_tab_[a] = static_cast<Elem>(digit_neg(a, p_));
            for (std::uint32_t b = 0; b < Q; ++b)
                add_tab_[std::size_t(a) * Q + b] = static_cast<Elem>(digit_add(a, b, p_));
        }
    }
}

Field Field::make(int p, int m) {
    if (std::uint32_t pin = pinned_poly(p, m)) return Field(p, m, pin);
    const std::uint32_t pm = ipow(std::uint32_t(p), m);
    // monic degree-m candidates in ascending canonical order
    for (std::uint32_t low = 1; low < pm; ++low) {
        if (low % p == 0) continue;  // constant term 0 -> x divides -> reducible
        try {
            return Field(p, m, pm + low);
        } catch (const std::invalid_argument&) {
            continue;
        }
    }
    throw std::invalid_argument("gf::Field: no primitive polynomial found (p=" + std::to_string(p) +
                                ", m=" + std::to_string(m) + ")");
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw std::domain_error("gf::Field: inversion of zero");
    if (Q_ == 2) return 1;
    return exp_[(Q_ - 1 - log_[a]) % (Q_ - 1)];
}

Elem Field::pow(Elem a, std::uint64_t k) const {
    if (k == 0) return 1;
    if (a == 0) return 0;
    if (Q_ == 2) return 1;
    std::uint64_t e = (std::uint64_t(log_[a]) * (k % (Q_ - 1))) % (Q_ - 1);
    return exp_[e];
}

}  // namespace qhv::gf
