#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhv/gf.hpp"

namespace qhv {

using gf::Elem;

// A guard refusal: the requested enumeration exceeds the configured desk-scale
// caps. The message carries the exact predicted count.
class GuardError : public std::runtime_error {
  public:
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

struct Guard {
    std::uint64_t max_points = 1ull << 26;               // point materialization
    std::uint64_t max_subspaces = 100'000'000;           // k-subspace enumeration
    std::uint64_t max_stream_ops = 2'000'000'000;        // point x incident-hyperplane work
    std::uint64_t max_pairs = 2'000'000'000;             // pair hashing
};

inline constexpr int kMaxCoords = 6;  // supports PG(r, .) up to r = 5

// Normalized homogeneous coordinates: leftmost nonzero coordinate is 1.
// Also used for hyperplane duals (same normalization).
struct Point {
    std::array<Elem, kMaxCoords> c{};
    std::uint8_t len = 0;

    bool operator==(const Point& o) const { return len == o.len && c == o.c; }
    bool operator<(const Point& o) const { return c < o.c; }
};

Point make_point(std::initializer_list<Elem> coords);

// pack coordinates into a hash/set key (requires (r+1)*bits(Q-1) <= 64)
std::uint64_t point_key(const Point& p, std::uint32_t Q);

// theta_q(r) = (q^{r+1}-1)/(q-1), theta_q(-1) = 0
std::uint64_t theta(int r, std::uint64_t q);

// number of k-dimensional projective subspaces of PG(r, q); throws on overflow
std::uint64_t gaussian_binomial_subspaces(int r, int k, std::uint64_t q);

// normalize in place; returns false for the zero vector
bool normalize(const gf::Field& F, Point& p);

Elem dot(const gf::Field& F, const Point& a, const Point& b);
bool incident(const gf::Field& F, const Point& p, const Point& dual);

// All theta(r, Q) normalized points of PG(r, Q), lexicographic on the
// coordinate tuple (so (0,..,0,1) comes first and (1,0,..,0) starts the
// affine block last). Visitor returns void.
void iterate_points(const gf::Field& F, int r, const std::function<void(const Point&)>& fn);

// Canonical flat index of a normalized dual in [0, theta(r, Q)): pivot-0 duals
// first, ordered by the base-Q value of their tail. O(1) both ways.
std::uint64_t dual_index(const Point& dual, int r, std::uint32_t Q);
Point dual_from_index(std::uint64_t idx, int r, std::uint32_t Q);

// the theta(r-1, Q) duals incident with p, deterministic order
void hyperplanes_through(const gf::Field& F, const Point& p, int r,
                         const std::function<void(const Point&)>& fn);

// Echelon-basis subspace in reduced row echelon form (canonical).
// Projective dimension = rows - 1; the empty subspace has dim -1.
struct Subspace {
    std::array<Point, kMaxCoords> row{};
    std::uint8_t rows = 0;

    int dim() const { return int(rows) - 1; }
    bool operator==(const Subspace& o) const;
    bool operator<(const Subspace& o) const;
    std::string hex_key(std::uint32_t Q) const;  // serialized echelon matrix
};

// Incremental echelon container used for span computations.
class SpanBasis {
  public:
    explicit SpanBasis(const gf::Field& F, int ncoords) : F_(&F), ncoords_(ncoords) {}
    // returns true if v was independent (rank grew)
    bool insert(Point v);
    int rank() const { return int(rows_.size()); }
    int proj_dim() const { return int(rows_.size()) - 1; }
    Subspace canonical() const;  // reduced echelon form of the accumulated span

  private:
    const gf::Field* F_;
    int ncoords_;
    std::vector<Point> rows_;  // echelon (not necessarily reduced), sorted by pivot
};

// projective dimension of the span of a point collection (-1 for empty)
int span_dim(const gf::Field& F, int r, const std::vector<Point>& pts);

// canonical form of the span of basis vectors
Subspace canonical_subspace(const gf::Field& F, int r, const std::vector<Point>& basis);

// all normalized points of a subspace, lexicographic in the coefficient space
std::vector<Point> subspace_points(const gf::Field& F, int r, const Subspace& S);

// Streams every k-subspace of PG(r, Q) exactly once as a canonical reduced
// echelon matrix; refuses (GuardError, exact count in message) over the cap.
void iterate_k_subspaces(const gf::Field& F, int r, int k, const Guard& guard,
                         const std::function<void(const Subspace&)>& fn);

// canonical key of the line through two distinct points
Subspace line_key(const gf::Field& F, int r, const Point& a, const Point& b);

}  // namespace qhv
