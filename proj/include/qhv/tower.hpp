#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qhv/gf.hpp"

namespace qhv {

using gf::Elem;

enum class GammaMode { Raw, Simplified };

struct BuildOptions {
    std::optional<Elem> delta_override;    // must satisfy the delta invariants
    std::optional<Elem> epsilon_override;  // must be a root of t^2+t+delta, not in GF(q)
};

// The tower GF(2) < GF(q) < GF(q^2), q = 2^e with e odd, together with the
// special elements delta, epsilon, the automorphism sigma of GF(q) and the
// polynomial Gamma_eps. GF(q) is realized inside GF(q^2) as the fixed field
// of x -> x^q. Immutable after construction; all member functions are pure.
class FieldTower {
  public:
    int e;
    std::uint32_t q, Q;
    std::uint32_t s;          // 2^((e-1)/2)
    std::uint32_t n;          // s + 1, the Fermat degree
    std::uint32_t sigma_exp;  // 2^((e+1)/2)
    gf::Field F;
    Elem delta, epsilon;

    bool in_gfq(Elem x) const { return in_gfq_[x]; }
    const std::vector<Elem>& gfq_elements() const { return gfq_list_; }

    Elem add(Elem a, Elem b) const { return static_cast<Elem>(a ^ b); }
    Elem mul(Elem a, Elem b) const { return F.mul(a, b); }
    Elem inv(Elem a) const { return F.inv(a); }
    Elem pow(Elem a, std::uint64_t k) const { return F.pow(a, k); }

    // Tr_{q^2/q}(x) = x + x^q; lands in GF(q)
    Elem trace_q2_q(Elem x) const { return trace_[x]; }

    // sigma(x) = x^{2^((e+1)/2)} on GF(q); throws std::domain_error off the subfield
    Elem sigma(Elem x) const;

    // x = x0 + eps*x1 with x0, x1 in GF(q)
    struct Decomposition {
        Elem x0, x1;
    };
    Decomposition decompose(Elem x) const;
    Elem recompose(Elem x0, Elem x1) const { return static_cast<Elem>(x0 ^ F.mul(epsilon, x1)); }

    // Gamma_eps(x); Raw evaluates the defining expression, Simplified the
    // x0^{sigma+2} + x0*x1 + x1^sigma form. Both agree on all of GF(q^2).
    Elem gamma(Elem x, GammaMode mode = GammaMode::Simplified) const;
    const std::vector<Elem>& gamma_table() const { return gamma_; }

    // all x in GF(q^2) with x^m = 1, ascending; size gcd(m, q^2-1)
    std::vector<Elem> nth_roots_of_unity(std::uint64_t m) const;

    // one solution of x^q + x = c for c in GF(q); the full fibre is sol + GF(q)
    Elem trace_preimage(Elem c) const;

  private:
    friend FieldTower build_field(int e, const BuildOptions&);
    FieldTower(int e_, gf::Field&& F_);

    std::vector<std::uint8_t> in_gfq_;
    std::vector<Elem> gfq_list_;
    std::vector<Elem> trace_;   // x + x^q
    std::vector<Elem> gamma_;   // simplified form
    std::vector<Elem> tsol_;    // preimage of the trace map, indexed by c
};

// Constructs the tower for odd e in [3, 7]. delta is the smallest-pattern
// element of GF(q)\{1} with absolute trace 1, epsilon the smaller root of
// t^2 + t + delta; overrides are validated against the same invariants.
FieldTower build_field(int e, const BuildOptions& opts = {});

}  // namespace qhv
