#pragma once

#include <cstdint>
#include <vector>

namespace qhv::gf {

using Elem = std::uint16_t;

// GF(p^m) with log/exp tables over a primitive polynomial.
//
// Elements are canonical integers in [0, p^m): the base-p digit expansion of
// an element gives its coordinates in the polynomial basis {1, x, ..., x^{m-1}}.
// For p = 2 this is the usual bit-pattern representation and addition is XOR.
// Multiplication/inversion/powering go through discrete-log tables, so the
// table generator element (the class of x) must be primitive; make() verifies
// this and construction fails otherwise.
class Field {
  public:
    // poly: packed base-p coefficients of a monic degree-m polynomial
    // (low digit = constant term, digit m = 1). Must be primitive.
    Field(int p, int m, std::uint32_t poly);

    // Deterministic construction: pinned polynomial when one exists for
    // (p, m), otherwise the smallest primitive polynomial in canonical
    // integer order.
    static Field make(int p, int m);

    int p() const { return p_; }
    int m() const { return m_; }
    std::uint32_t size() const { return Q_; }
    std::uint32_t reduction_poly() const { return poly_; }

    Elem add(Elem a, Elem b) const {
        return p_ == 2 ? static_cast<Elem>(a ^ b) : add_tab_[std::size_t(a) * Q_ + b];
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem neg(Elem a) const { return p_ == 2 ? a : neg_tab_[a]; }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    Elem inv(Elem a) const;       // throws std::domain_error on 0
    Elem pow(Elem a, std::uint64_t k) const;

    bool is_zero(Elem a) const { return a == 0; }

    // raw tables, for hot loops
    const Elem* exp_table() const { return exp_.data(); }
    const std::uint32_t* log_table() const { return log_.data(); }

  private:
    int p_, m_;
    std::uint32_t Q_, poly_;
    std::vector<Elem> exp_;           // exp_[i] = g^i, doubled to avoid mod
    std::vector<std::uint32_t> log_;  // log_[a] for a != 0
    std::vector<Elem> add_tab_;       // only for p != 2 (small fields)
    std::vector<Elem> neg_tab_;

    void build_tables();  // throws std::invalid_argument if poly not primitive
};

}  // namespace qhv::gf
