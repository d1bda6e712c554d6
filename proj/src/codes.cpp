#include "qhv/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "qhv/rng.hpp"

namespace qhv {

namespace {

int pivot_of_raw(const Elem* v, int n) {
    for (int i = 0; i < n; ++i)
        if (v[i]) return i;
    return -1;
}

// Streams the canonical indices of the theta(r-1, Q) duals incident with a
// point, grouped by the dual's pivot position. Per pivot class p the dual is
// (0..0, 1, c_{p+1}..c_r) and the incidence equation fixes one tail
// coordinate; the rest range freely.
class IncidentDualStreamer {
  public:
    IncidentDualStreamer(const gf::Field& F, int r)
        : F_(F), r_(r), Q_(F.size()), b_(std::bit_width(Q_ - 1)) {
        tab_.assign(std::size_t(r + 1) * Q_, 0);
        offs_.resize(r + 2);
        offs_[0] = 0;
        std::uint64_t blk = 1;
        for (int j = 0; j < r; ++j) blk *= Q_;
        for (int p = 0; p <= r; ++p) {
            offs_[p + 1] = offs_[p] + blk;
            blk /= Q_;
        }
    }

    template <class Fn>
    void stream(const Point& P, Fn&& fn) {
        const int r = r_;
        for (int i = 0; i <= r; ++i) {
            if (!P.c[i]) continue;
            Elem* t = &tab_[std::size_t(i) * Q_];
            const std::uint32_t lp = F_.log_table()[P.c[i]];
            const Elem* ex = F_.exp_table();
            const std::uint32_t* lg = F_.log_table();
            t[0] = 0;
            for (std::uint32_t c = 1; c < Q_; ++c) t[c] = ex[lg[c] + lp];
        }
        for (int p = 0; p <= r; ++p) {
            int j = -1;
            for (int i = r; i > p; --i)
                if (P.c[i]) {
                    j = i;
                    break;
                }
            const std::uint64_t base = offs_[p];
            if (j < 0) {
                if (P.c[p] == 0) {
                    std::uint64_t cnt = 1;
                    for (int i = p + 1; i <= r; ++i) cnt *= Q_;
                    for (std::uint64_t v = 0; v < cnt; ++v) fn(base + v);
                }
                continue;
            }
            const Elem invPj = F_.inv(P.c[j]);
            const std::uint32_t linv = F_.log_table()[invPj];
            const Elem* ex = F_.exp_table();
            const std::uint32_t* lg = F_.log_table();
            int free[kMaxCoords];
            int nf = 0;
            for (int i = p + 1; i <= r; ++i)
                if (i != j) free[nf++] = i;
            const int shift_j = b_ * (r - j);
            Elem cfree[kMaxCoords] = {};
            Elem accs[kMaxCoords + 1];
            std::uint64_t idxs[kMaxCoords + 1];
            accs[0] = P.c[p];
            idxs[0] = base;
            for (int d = 0; d < nf; ++d) {  // all free coords start at 0
                accs[d + 1] = accs[d];
                idxs[d + 1] = idxs[d];
            }
            while (true) {
                const Elem acc = accs[nf];
                const std::uint64_t cj = acc ? std::uint64_t(ex[lg[acc] + linv]) : 0;
                fn(idxs[nf] + (cj << shift_j));
                int t = nf - 1;
                for (; t >= 0; --t) {
                    if (std::uint32_t(++cfree[t]) < Q_) {
                        const int i = free[t];
                        accs[t + 1] = static_cast<Elem>(accs[t] ^ tab_[std::size_t(i) * Q_ + cfree[t]]);
                        idxs[t + 1] = idxs[t] + (std::uint64_t(cfree[t]) << (b_ * (r - i)));
                        for (int u = t + 1; u < nf; ++u) {
                            cfree[u] = 0;
                            accs[u + 1] = accs[u];
                            idxs[u + 1] = idxs[u];
                        }
                        break;
                    }
                    cfree[t] = 0;
                }
                if (t < 0) break;
            }
        }
    }

  private:
    const gf::Field& F_;
    int r_;
    std::uint32_t Q_;
    int b_;
    std::vector<Elem> tab_;
    std::vector<std::uint64_t> offs_;
};

std::uint64_t stream_op_count(const ProjectiveSystem& sys) {
    return sys.pts->size() * theta(sys.r - 1, sys.T->Q);
}

// open-addressing u64 -> u32 counter map (line-key histogram)
class KeyCounter {
  public:
    explicit KeyCounter(std::uint64_t expected) {
        std::uint64_t cap = 1;
        while (cap < expected * 2) cap <<= 1;
        if (cap < (1u << 12)) cap = 1u << 12;
        keys_.assign(cap, kEmpty);
        cnt_.assign(cap, 0);
        mask_ = cap - 1;
    }
    void add(std::uint64_t k) {
        std::uint64_t h = k * 0x9E3779B97F4A7C15ull;
        h ^= h >> 29;
        std::uint64_t i = h & mask_;
        while (true) {
            if (keys_[i] == k) {
                ++cnt_[i];
                return;
            }
            if (keys_[i] == kEmpty) {
                keys_[i] = k;
                cnt_[i] = 1;
                return;
            }
            i = (i + 1) & mask_;
        }
    }
    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t i = 0; i < keys_.size(); ++i)
            if (keys_[i] != kEmpty) fn(keys_[i], cnt_[i]);
    }

  private:
    static constexpr std::uint64_t kEmpty = ~0ull;
    std::vector<std::uint64_t> keys_;
    std::vector<std::uint32_t> cnt_;
    std::uint64_t mask_;
};

}  // namespace

std::uint64_t ProjectiveSystem::length() const {
    if (mult.empty()) return pts->size();
    std::uint64_t n = 0;
    for (auto m : mult) n += m;
    return n;
}

std::uint64_t WeightTable::min_weight() const {
    for (const auto& [w, c] : counts)
        if (w > 0) return w;
    throw std::logic_error("WeightTable: no positive weight");
}

std::uint64_t WeightTable::max_weight() const {
    if (counts.empty()) throw std::logic_error("WeightTable: empty");
    return counts.rbegin()->first;
}

std::uint64_t WeightTable::class_total() const {
    std::uint64_t t = 0;
    for (const auto& [w, c] : counts) t += c;
    return t;
}

WeightTable weight_distribution(const ProjectiveSystem& sys, const Guard& guard) {
    const FieldTower& T = *sys.T;
    const int r = sys.r;
    const std::uint64_t nh = theta(r, T.Q);
    const std::uint64_t ops = stream_op_count(sys);
    if (ops > guard.max_stream_ops)
        throw GuardError("weight_distribution: " + std::to_string(ops) +
                         " point-hyperplane increments exceed the cap " +
                         std::to_string(guard.max_stream_ops) + "; use weight_sample");
    std::vector<std::uint32_t> cnt(nh, 0);
    IncidentDualStreamer S(T.F, r);
    const std::uint64_t npts = sys.pts->size();
    for (std::uint64_t i = 0; i < npts; ++i) {
        const Point P = sys.pts->at(i);
        const std::uint32_t m = sys.mult_of(i);
        S.stream(P, [&](std::uint64_t idx) { cnt[idx] += m; });
    }
    WeightTable w;
    w.length = sys.length();
    w.mode = WeightMode::Exhaustive;
    for (std::uint64_t idx = 0; idx < nh; ++idx) ++w.counts[w.length - cnt[idx]];
    return w;
}

std::vector<std::pair<std::string, Point>> structured_hyperplanes(const FieldTower& T, int r,
                                                                  const Guard& guard) {
    std::vector<std::pair<std::string, Point>> out;
    Point pinf;
    pinf.len = static_cast<std::uint8_t>(r + 1);
    pinf.c[0] = 1;
    out.emplace_back("pi_inf", pinf);
    if (r == 3) {
        out.emplace_back("type-a", make_point({0, 1, 1, 0}));  // X1 + X2 = 0: ratio 1 is an n-th root
        out.emplace_back("type-b", make_point({0, 1, 0, 0}));
        out.emplace_back("type-c", make_point({0, 0, 0, 1}));
        return out;
    }
    // r >= 4: split by P_inf membership and by the BT section size
    PointSet bt = enumerate_bt(T, r, guard);
    HermitianCounts hc = hermitian_counts(r, T.q);
    auto section = [&](const Point& dual) {
        std::uint64_t s = 0;
        const std::uint64_t n = bt.size();
        for (std::uint64_t i = 0; i < n; ++i)
            if (dot(T.F, bt.at(i), dual) == 0) ++s;
        return s;
    };
    bool found[4] = {false, false, false, false};  // i, ii, iii, iv
    const char* names[4] = {"case-i", "case-ii", "case-iii", "case-iv"};
    const std::uint64_t nh = theta(r, T.Q);
    for (std::uint64_t idx = 1; idx < nh && !(found[0] && found[1] && found[2] && found[3]); ++idx) {
        Point d = dual_from_index(idx, r, T.Q);
        bool through = d.c[r] == 0;  // P_inf = (0..0,1) on the hyperplane
        std::uint64_t s = section(d);
        int which;
        if (!through)
            which = (s == hc.generic_section) ? 0 : 1;
        else
            which = (s == hc.tangent_section) ? 2 : 3;
        if ((s != hc.generic_section && s != hc.tangent_section))
            throw std::logic_error("structured_hyperplanes: BT section size off the two-value spectrum");
        if (!found[which]) {
            found[which] = true;
            out.emplace_back(names[which], d);
        }
    }
    return out;
}

WeightTable weight_sample(const ProjectiveSystem& sys, std::uint64_t n, std::uint64_t seed) {
    const FieldTower& T = *sys.T;
    const int r = sys.r;
    const std::uint32_t Q = T.Q;
    WeightTable w;
    w.length = sys.length();
    w.mode = WeightMode::Sampled;
    w.seed = seed;
    w.n_samples = n;

    const std::uint64_t npts = sys.pts->size();
    const Elem* flat = sys.pts->flat.data();
    std::vector<Elem> tab(std::size_t(r + 1) * Q);
    auto weigh = [&](const Point& dual) {
        for (int i = 0; i <= r; ++i) {
            Elem* t = &tab[std::size_t(i) * Q];
            if (!dual.c[i]) {
                std::memset(t, 0, sizeof(Elem) * Q);
                continue;
            }
            for (std::uint32_t c = 0; c < Q; ++c) t[c] = T.F.mul(Elem(c), dual.c[i]);
        }
        std::uint64_t on = 0;
        const Elem* p = flat;
        for (std::uint64_t i = 0; i < npts; ++i, p += r + 1) {
            Elem acc = 0;
            for (int j = 0; j <= r; ++j) acc = static_cast<Elem>(acc ^ tab[std::size_t(j) * Q + p[j]]);
            if (acc == 0) on += sys.mult_of(i);
        }
        return w.length - on;
    };

    for (const auto& [name, dual] : structured_hyperplanes(T, r)) ++w.counts[weigh(dual)];
    DualSampler ds(r, Q, seed);
    for (std::uint64_t i = 0; i < n; ++i) ++w.counts[weigh(ds.next())];
    return w;
}

CuttingResult is_cutting(const ProjectiveSystem& sys, const Guard& guard) {
    const FieldTower& T = *sys.T;
    const int r = sys.r;
    const std::uint64_t nh = theta(r, T.Q);
    const std::uint64_t ops = stream_op_count(sys);
    if (ops > guard.max_stream_ops)
        throw GuardError("is_cutting: " + std::to_string(ops) +
                         " rank-streaming increments exceed the cap; use is_cutting_falsify");
    const int stride = r * (r + 1);
    std::vector<Elem> rows(nh * std::size_t(stride), 0);
    std::vector<std::uint8_t> rank(nh, 0);
    IncidentDualStreamer S(T.F, r);
    const std::uint64_t npts = sys.pts->size();
    for (std::uint64_t i = 0; i < npts; ++i) {
        const Point P = sys.pts->at(i);
        S.stream(P, [&](std::uint64_t idx) {
            std::uint8_t& rk = rank[idx];
            if (rk == r) return;
            Elem v[kMaxCoords];
            std::memcpy(v, P.c.data(), sizeof(Elem) * (r + 1));
            Elem* base = &rows[idx * std::size_t(stride)];
            for (int t = 0; t < rk; ++t) {
                Elem* row = base + t * (r + 1);
                int piv = pivot_of_raw(row, r + 1);
                if (v[piv]) {
                    Elem coef = T.F.mul(v[piv], T.F.inv(row[piv]));
                    for (int c = piv; c <= r; ++c) v[c] = static_cast<Elem>(v[c] ^ T.F.mul(coef, row[c]));
                }
            }
            int pv = pivot_of_raw(v, r + 1);
            if (pv < 0) return;
            int pos = rk;
            while (pos > 0 && pivot_of_raw(base + (pos - 1) * (r + 1), r + 1) > pv) --pos;
            std::memmove(base + (pos + 1) * (r + 1), base + pos * (r + 1),
                         sizeof(Elem) * std::size_t(rk - pos) * (r + 1));
            std::memcpy(base + pos * (r + 1), v, sizeof(Elem) * (r + 1));
            ++rk;
        });
    }
    for (std::uint64_t idx = 0; idx < nh; ++idx) {
        if (rank[idx] < r) {
            CuttingResult res;
            res.status = CuttingResult::Status::NotCutting;
            res.exhaustive = true;
            res.witness_dual = dual_from_index(idx, r, T.Q);
            res.witness_span_dim = int(rank[idx]) - 1;
            return res;
        }
    }
    return {CuttingResult::Status::Cutting, true, std::nullopt, -2};
}

CuttingResult is_cutting_falsify(const ProjectiveSystem& sys, std::uint64_t n, std::uint64_t seed) {
    const FieldTower& T = *sys.T;
    const int r = sys.r;
    std::vector<Point> candidates;
    for (auto& [name, d] : structured_hyperplanes(T, r)) candidates.push_back(d);
    DualSampler ds(r, T.Q, seed);
    for (std::uint64_t i = 0; i < n; ++i) candidates.push_back(ds.next());
    const std::uint64_t npts = sys.pts->size();
    for (const Point& dual : candidates) {
        SpanBasis basis(T.F, r + 1);
        for (std::uint64_t i = 0; i < npts && basis.rank() < r; ++i) {
            Point P = sys.pts->at(i);
            if (dot(T.F, P, dual) == 0) basis.insert(P);
        }
        if (basis.rank() < r) {
            CuttingResult res;
            res.status = CuttingResult::Status::NotCutting;
            res.exhaustive = false;
            res.witness_dual = dual;
            res.witness_span_dim = basis.proj_dim();
            return res;
        }
    }
    return {CuttingResult::Status::Unknown, false, std::nullopt, -2};
}

AbStatus ab_minimality(const WeightTable& table, std::uint32_t Q) {
    if (table.mode != WeightMode::Exhaustive)
        throw std::invalid_argument("ab_minimality: requires an exhaustive weight table");
    unsigned __int128 wmin = table.min_weight(), wmax = table.max_weight();
    return wmin * Q > wmax * (Q - 1) ? AbStatus::Sufficient : AbStatus::Inconclusive;
}

std::uint64_t max_line_intersection(const ProjectiveSystem& sys, const Guard& guard) {
    if (!sys.mult.empty())
        throw std::invalid_argument("max_line_intersection: multiplicities unsupported here");
    const FieldTower& T = *sys.T;
    const gf::Field& F = T.F;
    const int r = sys.r;
    const std::uint64_t n = sys.pts->size();
    if (n < 2) return n;
    const std::uint64_t pairs = n * (n - 1) / 2;
    if (pairs > guard.max_pairs)
        throw GuardError("max_line_intersection: " + std::to_string(pairs) +
                         " point pairs exceed the cap " + std::to_string(guard.max_pairs));
    const int b = std::bit_width(T.Q - 1);
    if (2 * (r + 1) * b > 64)
        throw std::invalid_argument("max_line_intersection: line keys exceed 64 bits at this (r, Q)");

    std::vector<Point> pts(n);
    for (std::uint64_t i = 0; i < n; ++i) pts[i] = sys.pts->at(i);

    std::uint64_t expected;
    try {
        expected = gaussian_binomial_subspaces(r, 1, T.Q);
    } catch (const std::overflow_error&) {
        expected = 1ull << 25;
    }
    expected = std::min<std::uint64_t>(std::min(expected, pairs), 1ull << 25);
    KeyCounter map(expected);

    const int ncoord = r + 1;
    auto pack2 = [&](const Elem* u, const Elem* v) {
        std::uint64_t k = 0;
        for (int i = 0; i < ncoord; ++i) k = (k << b) | u[i];
        for (int i = 0; i < ncoord; ++i) k = (k << b) | v[i];
        return k;
    };
    // canonical reduced echelon form of the span of two normalized points
    Elem row0[kMaxCoords], row1[kMaxCoords];
    for (std::uint64_t i = 0; i < n; ++i) {
        const Point& A = pts[i];
        const int pa = pivot_of_raw(A.c.data(), ncoord);
        for (std::uint64_t j = i + 1; j < n; ++j) {
            const Point& B = pts[j];
            const int pb = pivot_of_raw(B.c.data(), ncoord);
            const Elem *lo, *hi;
            int plo;
            if (pa == pb) {
                // difference has a later pivot; normalize it, then clear it in A
                Elem d[kMaxCoords];
                for (int t = 0; t < ncoord; ++t) d[t] = static_cast<Elem>(A.c[t] ^ B.c[t]);
                int pd = pivot_of_raw(d, ncoord);
                Elem iv = F.inv(d[pd]);
                for (int t = pd; t < ncoord; ++t) d[t] = F.mul(d[t], iv);
                Elem coef = A.c[pd];
                for (int t = 0; t < ncoord; ++t) row0[t] = static_cast<Elem>(A.c[t] ^ F.mul(coef, d[t]));
                std::memcpy(row1, d, sizeof(Elem) * ncoord);
                map.add(pack2(row0, row1));
                continue;
            } else if (pa < pb) {
                lo = A.c.data();
                hi = B.c.data();
                plo = pb;
            } else {
                lo = B.c.data();
                hi = A.c.data();
                plo = pa;
            }
            Elem coef = lo[plo];
            for (int t = 0; t < ncoord; ++t) row0[t] = static_cast<Elem>(lo[t] ^ F.mul(coef, hi[t]));
            map.add(pack2(row0, hi));
        }
    }
    std::uint64_t best = 2;
    map.for_each([&](std::uint64_t, std::uint32_t c) {
        // c = k(k-1)/2 for the k collinear points on this line
        std::uint64_t k = (1 + std::uint64_t(std::sqrt(double(1) + 8.0 * c))) / 2;
        while (k * (k - 1) / 2 > c) --k;
        while (k * (k + 1) / 2 <= c) ++k;
        if (k * (k - 1) / 2 != c) throw std::logic_error("max_line_intersection: non-triangular pair count");
        best = std::max(best, k);
    });
    return best;
}

std::uint64_t generalized_weight(const ProjectiveSystem& sys, int k, const Guard& guard) {
    const int r = sys.r;
    if (k == 1) return weight_distribution(sys, guard).min_weight();
    if (k == r) {
        std::uint32_t mx = 1;
        if (!sys.mult.empty())
            for (auto m : sys.mult) mx = std::max(mx, m);
        return sys.length() - mx;
    }
    if (k == r - 1) return sys.length() - max_line_intersection(sys, guard);
    throw std::invalid_argument("generalized_weight: only k in {1, r-1, r} is enumerable at desk scale");
}

MultisetWeights multiset_weights(std::uint64_t q, int r, std::uint64_t j) {
    if (r < 3 || j < 1) throw std::invalid_argument("multiset_weights: need r >= 3, j >= 1");
    auto pw = [&](int k) {
        std::uint64_t v = 1;
        for (int i = 0; i < k; ++i) v *= q;
        return v;
    };
    const bool sign_pos = (r - 1) % 2 == 0;  // (-1)^{r-1}
    MultisetWeights mw;
    mw.length = pw(2 * r - 1) + j;
    mw.weights[0] = pw(2 * r - 1);
    mw.weights[1] = mw.weights[0] - pw(2 * r - 3);
    mw.weights[2] = sign_pos ? mw.weights[1] + pw(r - 2) + j : mw.weights[1] - pw(r - 2) + j;
    mw.weights[3] = sign_pos ? mw.weights[2] - pw(r - 1) : mw.weights[2] + pw(r - 1);
    std::vector<std::uint64_t> u(mw.weights.begin(), mw.weights.end());
    std::sort(u.begin(), u.end());
    mw.distinct = int(std::unique(u.begin(), u.end()) - u.begin());
    return mw;
}

std::vector<std::uint64_t> multiset_three_weight_js(std::uint64_t q, int r) {
    auto pw = [&](int k) {
        std::uint64_t v = 1;
        for (int i = 0; i < k; ++i) v *= q;
        return v;
    };
    if (r % 2 == 1) return {pw(r - 1) - pw(r - 2), pw(2 * r - 3) - pw(r - 2), pw(2 * r - 3) + pw(r - 1) - pw(r - 2)};
    return {pw(r - 2), pw(2 * r - 3) + pw(r - 2), pw(2 * r - 3) - pw(r - 1) + pw(r - 2)};
}

WeightTable multiset_realized(const FieldTower& T, int r, std::uint64_t j, const Guard& guard) {
    PointSet v = enumerate_v_eps(T, r, guard);
    const std::uint64_t nh = theta(r, T.Q);
    const std::uint64_t ops = v.affine_count * theta(r - 1, T.Q);
    if (ops > guard.max_stream_ops)
        throw GuardError("multiset_realized: streaming work " + std::to_string(ops) + " over cap");
    std::vector<std::uint32_t> cnt(nh, 0);
    IncidentDualStreamer S(T.F, r);
    const std::uint64_t npts = v.size();
    for (std::uint64_t i = 0; i < npts; ++i) {
        Point P = v.at(i);
        if (P.c[0] == 0) continue;  // affine part only
        S.stream(P, [&](std::uint64_t idx) { ++cnt[idx]; });
    }
    WeightTable w;
    std::uint64_t qpow = 1;
    for (int i = 0; i < 2 * r - 1; ++i) qpow *= T.q;
    w.length = qpow + j;
    w.mode = WeightMode::Exhaustive;
    for (std::uint64_t idx = 0; idx < nh; ++idx) {
        Point d = dual_from_index(idx, r, T.Q);
        std::uint64_t on = cnt[idx] + (d.c[r] == 0 ? j : 0);  // P_inf incident iff c_r = 0
        ++w.counts[w.length - on];
    }
    return w;
}

std::vector<std::vector<Elem>> generator_matrix(const ProjectiveSystem& sys) {
    const int r = sys.r;
    std::vector<Point> pts(sys.pts->size());
    for (std::uint64_t i = 0; i < sys.pts->size(); ++i) pts[i] = sys.pts->at(i);
    int d = span_dim(sys.T->F, r, pts);
    if (d < r)
        throw std::invalid_argument("generator_matrix: degenerate system, span has projective dimension " +
                                    std::to_string(d));
    std::vector<std::vector<Elem>> M(r + 1);
    for (auto& row : M) row.reserve(sys.length());
    for (std::uint64_t i = 0; i < pts.size(); ++i)
        for (std::uint32_t m = 0; m < sys.mult_of(i); ++m)
            for (int c = 0; c <= r; ++c) M[c].push_back(pts[i].c[c]);
    return M;
}

DualSampler::DualSampler(int r, std::uint32_t Q, std::uint64_t seed)
    : r_(r), Q_(Q), state_(seed), bound_(theta(r, Q)) {}

Point DualSampler::next() {
    SplitMix64 rng(state_);
    std::uint64_t idx = rng.bounded(bound_);
    state_ = rng.next();  // fold the generator state forward deterministically
    return dual_from_index(idx, r_, Q_);
}

}  // namespace qhv
