#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhv/varieties.hpp"

namespace qhv {

// Points with multiplicities whose coordinates are the generator columns of
// the induced projective code. Multiplicities default to all ones.
struct ProjectiveSystem {
    const FieldTower* T;
    int r;
    const PointSet* pts;
    std::vector<std::uint32_t> mult;  // empty => all 1

    std::uint64_t length() const;
    std::uint32_t mult_of(std::uint64_t i) const { return mult.empty() ? 1 : mult[i]; }
};

enum class WeightMode { Exhaustive, Sampled };

struct WeightTable {
    std::map<std::uint64_t, std::uint64_t> counts;  // weight -> hyperplane classes
    std::uint64_t length = 0;
    WeightMode mode = WeightMode::Exhaustive;
    std::uint64_t seed = 0, n_samples = 0;

    std::uint64_t min_weight() const;  // minimum positive weight
    std::uint64_t max_weight() const;
    std::uint64_t class_total() const;  // sum of counts
};

// One counter per canonical hyperplane; each point is streamed through the
// theta(r-1, Q) duals incident with it.
WeightTable weight_distribution(const ProjectiveSystem& sys, const Guard& guard = {});

// labeled representative hyperplanes used by sampled modes: Pi_inf plus the
// case split of the weight-theorem proofs (types a/b/c at r = 3, i-iv at r >= 4)
std::vector<std::pair<std::string, Point>> structured_hyperplanes(const FieldTower& T, int r,
                                                                  const Guard& guard = {});

// n seeded uniform hyperplanes plus the structured representatives; weights by
// dot-product filtering over the stored points
WeightTable weight_sample(const ProjectiveSystem& sys, std::uint64_t n, std::uint64_t seed);

struct CuttingResult {
    enum class Status { Cutting, NotCutting, Unknown };
    Status status;
    bool exhaustive;
    std::optional<Point> witness_dual;  // hyperplane whose section fails to span
    int witness_span_dim = -2;
};

// exhaustive rank streaming: an incremental basis per canonical hyperplane
CuttingResult is_cutting(const ProjectiveSystem& sys, const Guard& guard = {});

// falsification-only: checks the structured candidates (Pi_inf first), then n
// sampled hyperplanes; never claims Cutting
CuttingResult is_cutting_falsify(const ProjectiveSystem& sys, std::uint64_t n, std::uint64_t seed);

enum class AbStatus { Sufficient, Inconclusive };
// Ashikhmin-Barg over GF(Q): sufficient iff w_min * Q > w_max * (Q-1)
AbStatus ab_minimality(const WeightTable& table, std::uint32_t Q);

// d_k = N - max |Omega cap Pi| over codim-k subspaces.
// Supported: k = 1 (hyperplanes), k = r-1 (lines, pair-hashed), k = r (points).
std::uint64_t generalized_weight(const ProjectiveSystem& sys, int k, const Guard& guard = {});

// exhaustive pair-hashed maximum line intersection (engine behind k = r-1)
std::uint64_t max_line_intersection(const ProjectiveSystem& sys, const Guard& guard = {});

// closed-form weights of the multiset code (affine points + P_inf with
// multiplicity j), symbolic in q
struct MultisetWeights {
    std::uint64_t length;
    std::array<std::uint64_t, 4> weights;  // q^{2r-1}, -q^{2r-3}, two j-shifted
    int distinct;
};
MultisetWeights multiset_weights(std::uint64_t q, int r, std::uint64_t j);

// the j values forcing a collapse to 3 distinct weights (Theorem-style lists)
std::vector<std::uint64_t> multiset_three_weight_js(std::uint64_t q, int r);

// exhaustive companion: realized weights of the multiset system when in guard
WeightTable multiset_realized(const FieldTower& T, int r, std::uint64_t j, const Guard& guard = {});

// rows x columns generator matrix ((r+1) x N); throws on degenerate span
std::vector<std::vector<Elem>> generator_matrix(const ProjectiveSystem& sys);

// uniform dual sampling helper (deterministic from seed)
class DualSampler {
  public:
    DualSampler(int r, std::uint32_t Q, std::uint64_t seed);
    Point next();

  private:
    int r_;
    std::uint32_t Q_;
    std::uint64_t state_;
    std::uint64_t bound_;
};

}  // namespace qhv
