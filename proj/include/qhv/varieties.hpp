#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qhv/projspace.hpp"
#include "qhv/tower.hpp"

namespace qhv {

enum class VarietyTag : std::uint8_t {
    VEps = 1,             // x_r^q + x_r = sum Gamma(x_i); Fermat cone at infinity
    BT = 2,               // same affine points, Hermitian cone at infinity
    Hermitian = 3,        // affine model x_r^q + x_r = sum x_i^{q+1}, Eq.-cone at infinity
    Fermat = 4,           // sum_{i=0..r} X_i^n = 0, n = 2^((e-1)/2)+1
    HermitianConeInf = 5  // X_0 = 0 and sum_{i=1..r-1} X_i^{q+1} = 0
};

const char* variety_name(VarietyTag t);

struct VarietyKind {
    VarietyTag tag;
    int r;
};

struct PointSet {
    VarietyTag tag{};
    std::uint8_t e = 0, r = 0;
    std::uint64_t affine_count = 0, infinity_count = 0;
    std::vector<Elem> flat;  // size() * (r+1) coordinates, enumeration order

    std::uint64_t size() const { return r ? flat.size() / (r + 1) : 0; }
    Point at(std::uint64_t i) const {
        Point p;
        p.len = static_cast<std::uint8_t>(r + 1);
        for (int j = 0; j <= r; ++j) p.c[j] = flat[i * (r + 1) + j];
        return p;
    }
    void push(const Point& p) {
        for (int j = 0; j < p.len; ++j) flat.push_back(p.c[j]);
    }
};

bool membership(const FieldTower& T, VarietyKind kind, const Point& p);

// Affine points via the trace-fibre parametrization (q per (x_1..x_{r-1})
// tuple), then the infinity section; every emitted point passes membership.
PointSet enumerate_v_eps(const FieldTower& T, int r, const Guard& guard = {});
PointSet enumerate_bt(const FieldTower& T, int r, const Guard& guard = {});

struct VEpsCounts {
    std::uint64_t affine, infinity;
    std::uint64_t total() const { return affine + infinity; }
};
// Counting-only path (no materialization); affine count is exact q^{2r-1}
// by the fibre argument but is counted explicitly here.
VEpsCounts count_v_eps(const FieldTower& T, int r);

// Pi_inf ∩ variety for kinds VEps / BT / Hermitian
PointSet infinity_section(const FieldTower& T, VarietyKind kind);

// full-filter enumeration over PG(r, Q) (Fermat, Hermitian, cone)
PointSet enumerate_filtered(const FieldTower& T, VarietyKind kind, const Guard& guard = {});

std::uint64_t fermat_count(const FieldTower& T, int r, const Guard& guard = {});

// Homma-Kim bound (nu-1) q^{r-1} + nu q^{r-2} + theta_q(r-3)
std::uint64_t hk_bound(std::uint64_t nu, int r, std::uint64_t q);

struct HermitianCounts {
    std::uint64_t variety;          // |H(r, q^2)|
    std::uint64_t generic_section;  // |H(r-1, q^2)|
    std::uint64_t tangent_section;  // |Pi_0 H(r-2, q^2)|
};
HermitianCounts hermitian_counts(int r, std::uint64_t q);

// Hermitian variety sum X_i^{q+1} = 0 in PG(r, q^2) over an arbitrary field
// of square order (for the small gap tables; projectively equivalent to the
// affine model used over the tower).
std::vector<Point> hermitian_norm_form_points(const gf::Field& Fq2, int r, std::uint32_t qsub);

// Elliptic quadric Q^-(3, q): X0 X1 + X2^2 + a X2 X3 + b X3^2 with the
// deterministically smallest irreducible (a, b).
struct EllipticQuadric {
    gf::Field F;
    Elem a, b;
    std::vector<Point> points;  // q^2 + 1 of them
};
EllipticQuadric make_elliptic_quadric(std::uint32_t q);

// point-set cache: magic "QHVP", version, e, r, tag, u64le count, u16le coords
void write_pointset(const std::string& path, const PointSet& ps);
PointSet read_pointset(const std::string& path);
std::string cache_filename(const FieldTower& T, VarietyTag tag, int r);

}  // namespace qhv
