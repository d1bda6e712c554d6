#include "qhv/tower.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace qhv {

namespace {

std::uint32_t tower_reduction_poly(int e) {
    switch (e) {
        case 3: return 0x43;    // x^6+x+1
        case 5: return 0x409;   // x^10+x^3+1
        case 7: return 0x4443;  // x^14+x^10+x^6+x+1
        default: return 0;
    }
}

}  // namespace

FieldTower::FieldTower(int e_, gf::Field&& F_)
    : e(e_),
      q(1u << e_),
      Q(1u << (2 * e_)),
      s(1u << ((e_ - 1) / 2)),
      n((1u << ((e_ - 1) / 2)) + 1),
      sigma_exp(1u << ((e_ + 1) / 2)),
      F(std::move(F_)) {}

FieldTower build_field(int e, const BuildOptions& opts) {
    if (e < 3 || e % 2 == 0)
        throw std::invalid_argument("build_field: e must be odd and >= 3 (degenerate: sigma+2 collapses for e=1)");
    if (e > 7)
        throw std::invalid_argument("build_field: e > 7 exceeds the 16-bit element representation (desk scale)");

    gf::Field F(2, 2 * e, tower_reduction_poly(e));
    FieldTower T(e, std::move(F));
    const std::uint32_t Q = T.Q;

    T.in_gfq_.assign(Q, 0);
    T.trace_.assign(Q, 0);
    for (std::uint32_t x = 0; x < Q; ++x) {
        Elem xq = T.F.pow(static_cast<Elem>(x), T.q);
        T.trace_[x] = static_cast<Elem>(xq ^ x);
        if (T.trace_[x] == 0) {
            T.in_gfq_[x] = 1;
            T.gfq_list_.push_back(static_cast<Elem>(x));
        }
    }
    if (T.gfq_list_.size() != T.q) throw std::logic_error("build_field: subfield has wrong size");

    // absolute trace of GF(q) over GF(2): x + x^2 + ... + x^{2^(e-1)}
    auto abs_trace_q = [&](Elem x) {
        Elem t = 0, p = x;
        for (int i = 0; i < e; ++i) {
            t = static_cast<Elem>(t ^ p);
            p = T.F.mul(p, p);
        }
        return t;
    };

    auto delta_ok = [&](Elem d) { return T.in_gfq_[d] && d != 1 && abs_trace_q(d) == 1; };
    if (opts.delta_override) {
        if (!delta_ok(*opts.delta_override))
            throw std::invalid_argument("build_field: delta override violates the invariants (in GF(q), != 1, absolute trace 1)");
        T.delta = *opts.delta_override;
    } else {
        T.delta = 0;
        for (Elem d : T.gfq_list_)
            if (delta_ok(d)) {
                T.delta = d;
                break;
            }
        if (T.delta == 0) throw std::logic_error("build_field: no valid delta");
    }

    auto eps_ok = [&](std::uint32_t t) {
        return (T.F.mul(Elem(t), Elem(t)) ^ t ^ T.delta) == 0 && !T.in_gfq_[t];
    };
    if (opts.epsilon_override) {
        if (!eps_ok(*opts.epsilon_override))
            throw std::invalid_argument("build_field: epsilon override is not a root of t^2+t+delta outside GF(q)");
        T.epsilon = *opts.epsilon_override;
    } else {
        T.epsilon = 0;
        for (std::uint32_t t = 1; t < Q; ++t)
            if (eps_ok(t)) {
                T.epsilon = static_cast<Elem>(t);
                break;
            }
        if (T.epsilon == 0) throw std::logic_error("build_field: no root of t^2+t+delta found");
    }
    if (T.trace_[T.epsilon] != 1) throw std::logic_error("build_field: Tr(epsilon) != 1");

    // trace preimages: x^q + x = c has q solutions per c in GF(q); keep the smallest
    T.tsol_.assign(Q, 0);
    std::vector<std::uint8_t> seen(Q, 0);
    for (std::uint32_t x = 0; x < Q; ++x) {
        Elem c = T.trace_[x];
        if (!seen[c]) {
            seen[c] = 1;
            T.tsol_[c] = static_cast<Elem>(x);
        }
    }

    T.gamma_.assign(Q, 0);
    for (std::uint32_t x = 0; x < Q; ++x) {
        auto d = T.decompose(static_cast<Elem>(x));
        Elem v = static_cast<Elem>(T.F.pow(d.x0, T.sigma_exp + 2) ^ T.F.mul(d.x0, d.x1) ^ T.F.pow(d.x1, T.sigma_exp));
        if (!T.in_gfq_[v]) throw std::logic_error("build_field: Gamma value left GF(q)");
        T.gamma_[x] = v;
    }
    return T;
}

Elem FieldTower::sigma(Elem x) const {
    if (!in_gfq_[x]) throw std::domain_error("sigma: argument not in GF(q)");
    return F.pow(x, sigma_exp);
}

FieldTower::Decomposition FieldTower::decompose(Elem x) const {
    Elem x1 = trace_[x];
    Elem x0 = static_cast<Elem>(x ^ F.mul(epsilon, x1));
    return {x0, x1};
}

Elem FieldTower::gamma(Elem x, GammaMode mode) const {
    if (mode == GammaMode::Simplified) return gamma_[x];
    // [x + (x^q+x) eps]^{sigma+2} + (x^q+x)^sigma + (x^{2q}+x^2) eps + x^{q+1} + x^2
    Elem t = trace_[x];
    Elem bracket = static_cast<Elem>(x ^ F.mul(t, epsilon));
    Elem a = F.pow(bracket, sigma_exp + 2);
    Elem b = F.pow(t, sigma_exp);
    Elem x2 = F.mul(x, x);
    Elem x2q = F.pow(x, 2ull * q);
    Elem c = F.mul(static_cast<Elem>(x2q ^ x2), epsilon);
    Elem d = static_cast<Elem>(F.pow(x, q + 1) ^ x2);
    return static_cast<Elem>(a ^ b ^ c ^ d);
}

std::vector<Elem> FieldTower::nth_roots_of_unity(std::uint64_t m) const {
    if (m < 1) throw std::invalid_argument("nth_roots_of_unity: m must be >= 1");
    std::uint64_t g = std::gcd(m, std::uint64_t(Q - 1));
    std::uint64_t step = (Q - 1) / g;
    std::vector<Elem> out;
    out.reserve(g);
    for (std::uint64_t i = 0; i < g; ++i) out.push_back(F.exp_table()[i * step]);
    std::sort(out.begin(), out.end());
    return out;
}

Elem FieldTower::trace_preimage(Elem c) const {
    if (!in_gfq_[c]) throw std::domain_error("trace_preimage: c not in GF(q)");
    return tsol_[c];
}

}  // namespace qhv
