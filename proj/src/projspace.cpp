#include "qhv/projspace.hpp"

#include <algorithm>
#include <bit>

namespace qhv {

namespace {

std::string u128_to_string(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

int pivot_of(const Point& p) {
    for (int i = 0; i < p.len; ++i)
        if (p.c[i]) return i;
    return -1;
}

}  // namespace

Point make_point(std::initializer_list<Elem> coords) {
    Point p;
    p.len = static_cast<std::uint8_t>(coords.size());
    int i = 0;
    for (Elem v : coords) p.c[i++] = v;
    return p;
}

std::uint64_t point_key(const Point& p, std::uint32_t Q) {
    const int bits = std::bit_width(Q - 1);
    if (bits * p.len > 64) throw std::invalid_argument("point_key: coordinates do not fit a 64-bit key");
    std::uint64_t k = 0;
    for (int i = 0; i < p.len; ++i) k = (k << bits) | p.c[i];
    return k;
}

std::uint64_t theta(int r, std::uint64_t q) {
    if (r < -1) throw std::invalid_argument("theta: r < -1");
    if (r == -1) return 0;
    unsigned __int128 acc = 0, pw = 1;
    for (int i = 0; i <= r; ++i) {
        acc += pw;
        pw *= q;
        if (acc > ~std::uint64_t(0)) throw std::overflow_error("theta: overflow");
    }
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t gaussian_binomial_subspaces(int r, int k, std::uint64_t q) {
    if (k < -1 || k > r) return k == -1 ? 1 : 0;
    // [r+1 choose k+1]_q, built factor by factor; partial products stay integral
    unsigned __int128 acc = 1;
    for (int i = 0; i <= k; ++i) {
        unsigned __int128 num = 1, den = 1;
        for (int j = 0; j < r + 1 - i; ++j) num *= q;  // q^{r+1-i}
        num -= 1;
        for (int j = 0; j < i + 1; ++j) den *= q;
        den -= 1;
        acc = acc * num;  // may overflow for huge params; caught below
        acc /= den;
        if (acc >> 100) throw std::overflow_error("gaussian_binomial_subspaces: overflow");
    }
    if (acc > ~std::uint64_t(0)) throw std::overflow_error("gaussian_binomial_subspaces: exceeds 64 bits");
    return static_cast<std::uint64_t>(acc);
}

bool normalize(const gf::Field& F, Point& p) {
    int piv = pivot_of(p);
    if (piv < 0) return false;
    if (p.c[piv] != 1) {
        Elem iv = F.inv(p.c[piv]);
        for (int i = piv; i < p.len; ++i) p.c[i] = F.mul(p.c[i], iv);
    }
    return true;
}

Elem dot(const gf::Field& F, const Point& a, const Point& b) {
    Elem acc = 0;
    for (int i = 0; i < a.len; ++i) acc = F.add(acc, F.mul(a.c[i], b.c[i]));
    return acc;
}

bool incident(const gf::Field& F, const Point& p, const Point& dual) { return dot(F, p, dual) == 0; }

void iterate_points(const gf::Field& F, int r, const std::function<void(const Point&)>& fn) {
    const std::uint32_t Q = F.size();
    Point p;
    p.len = static_cast<std::uint8_t>(r + 1);
    for (int piv = r; piv >= 0; --piv) {
        p.c.fill(0);
        p.c[piv] = 1;
        const int nfree = r - piv;
        while (true) {
            fn(p);
            int i = r;
            for (; i > piv; --i) {
                if (++p.c[i] < Q) break;
                p.c[i] = 0;
            }
            if (i == piv) break;
            (void)nfree;
        }
    }
}

std::uint64_t dual_index(const Point& dual, int r, std::uint32_t Q) {
    int piv = pivot_of(dual);
    std::uint64_t off = 0, blk = 1;
    for (int j = 0; j < r; ++j) blk *= Q;  // Q^r
    for (int j = 0; j < piv; ++j) {
        off += blk;
        blk /= Q;
    }
    std::uint64_t v = 0;
    for (int i = piv + 1; i <= r; ++i) v = v * Q + dual.c[i];
    return off + v;
}

Point dual_from_index(std::uint64_t idx, int r, std::uint32_t Q) {
    Point d;
    d.len = static_cast<std::uint8_t>(r + 1);
    std::uint64_t blk = 1;
    for (int j = 0; j < r; ++j) blk *= Q;
    int piv = 0;
    while (idx >= blk) {
        idx -= blk;
        blk /= Q;
        ++piv;
    }
    d.c[piv] = 1;
    for (int i = r; i > piv; --i) {
        d.c[i] = static_cast<Elem>(idx % Q);
        idx /= Q;
    }
    return d;
}

void hyperplanes_through(const gf::Field& F, const Point& p, int r,
                         const std::function<void(const Point&)>& fn) {
    // basis of the dual solution space of c . p = 0
    int j = -1;
    for (int i = r; i >= 0; --i)
        if (p.c[i]) {
            j = i;
            break;
        }
    if (j < 0) throw std::invalid_argument("hyperplanes_through: zero point");
    Elem ivj = F.inv(p.c[j]);
    std::vector<Point> basis;
    for (int i = 0; i <= r; ++i) {
        if (i == j) continue;
        Point b;
        b.len = static_cast<std::uint8_t>(r + 1);
        b.c[i] = 1;
        b.c[j] = F.neg(F.mul(p.c[i], ivj));
        basis.push_back(b);
    }
    iterate_points(F, r - 1, [&](const Point& lam) {
        Point c;
        c.len = static_cast<std::uint8_t>(r + 1);
        for (int a = 0; a < r; ++a) {
            if (lam.c[a] == 0) continue;
            for (int i = 0; i <= r; ++i) c.c[i] = F.add(c.c[i], F.mul(lam.c[a], basis[a].c[i]));
        }
        normalize(F, c);
        fn(c);
    });
}

bool Subspace::operator==(const Subspace& o) const {
    if (rows != o.rows) return false;
    for (int i = 0; i < rows; ++i)
        if (!(row[i] == o.row[i])) return false;
    return true;
}

bool Subspace::operator<(const Subspace& o) const {
    if (rows != o.rows) return rows < o.rows;
    for (int i = 0; i < rows; ++i) {
        if (row[i] < o.row[i]) return true;
        if (o.row[i] < row[i]) return false;
    }
    return false;
}

std::string Subspace::hex_key(std::uint32_t Q) const {
    static const char* hexd = "0123456789abcdef";
    const int digits = (std::bit_width(Q - 1) + 3) / 4;
    std::string out;
    for (int i = 0; i < rows; ++i) {
        if (i) out.push_back(':');
        for (int c2 = 0; c2 < row[i].len; ++c2) {
            for (int d = digits - 1; d >= 0; --d) out.push_back(hexd[(row[i].c[c2] >> (4 * d)) & 0xf]);
        }
    }
    return out;
}

bool SpanBasis::insert(Point v) {
    for (const Point& b : rows_) {
        int pb = pivot_of(b);
        if (v.c[pb]) {
            Elem coef = F_->mul(v.c[pb], F_->inv(b.c[pb]));
            for (int i = 0; i < ncoords_; ++i) v.c[i] = F_->sub(v.c[i], F_->mul(coef, b.c[i]));
        }
    }
    if (pivot_of(v) < 0) return false;
    rows_.push_back(v);
    std::sort(rows_.begin(), rows_.end(),
              [](const Point& a, const Point& b) { return pivot_of(a) < pivot_of(b); });
    return true;
}

Subspace SpanBasis::canonical() const {
    std::vector<Point> rr = rows_;
    // normalize leading entries, then eliminate above pivots
    for (auto& row : rr) {
        int pv = pivot_of(row);
        Elem iv = F_->inv(row.c[pv]);
        for (int i = 0; i < ncoords_; ++i) row.c[i] = F_->mul(row.c[i], iv);
    }
    for (std::size_t i = 0; i < rr.size(); ++i) {
        int pv = pivot_of(rr[i]);
        for (std::size_t j = 0; j < i; ++j) {
            if (rr[j].c[pv]) {
                Elem coef = rr[j].c[pv];
                for (int t = 0; t < ncoords_; ++t) rr[j].c[t] = F_->sub(rr[j].c[t], F_->mul(coef, rr[i].c[t]));
            }
        }
    }
    Subspace S;
    S.rows = static_cast<std::uint8_t>(rr.size());
    for (std::size_t i = 0; i < rr.size(); ++i) S.row[i] = rr[i];
    return S;
}

int span_dim(const gf::Field& F, int r, const std::vector<Point>& pts) {
    SpanBasis b(F, r + 1);
    for (const Point& p : pts) {
        b.insert(p);
        if (b.rank() == r + 1) break;
    }
    return b.proj_dim();
}

Subspace canonical_subspace(const gf::Field& F, int r, const std::vector<Point>& basis) {
    SpanBasis b(F, r + 1);
    for (const Point& p : basis) b.insert(p);
    return b.canonical();
}

std::vector<Point> subspace_points(const gf::Field& F, int r, const Subspace& S) {
    std::vector<Point> out;
    if (S.rows == 0) return out;
    out.reserve(theta(S.dim(), F.size()));
    iterate_points(F, S.dim(), [&](const Point& lam) {
        Point p;
        p.len = static_cast<std::uint8_t>(r + 1);
        for (int a = 0; a < S.rows; ++a) {
            if (lam.c[a] == 0) continue;
            for (int i = 0; i <= r; ++i) p.c[i] = F.add(p.c[i], F.mul(lam.c[a], S.row[a].c[i]));
        }
        out.push_back(p);  // already normalized: reduced echelon rows
    });
    return out;
}

void iterate_k_subspaces(const gf::Field& F, int r, int k, const Guard& guard,
                         const std::function<void(const Subspace&)>& fn) {
    const std::uint32_t Q = F.size();
    std::uint64_t total = gaussian_binomial_subspaces(r, k, Q);
    if (total > guard.max_subspaces)
        throw GuardError("iterate_k_subspaces: " + std::to_string(total) + " subspaces of dim " +
                         std::to_string(k) + " in PG(" + std::to_string(r) + "," + std::to_string(Q) +
                         ") exceed the cap " + std::to_string(guard.max_subspaces) +
                         "; use sampled mode");
    const int rows = k + 1, cols = r + 1;
    std::vector<int> piv(rows);
    for (int i = 0; i < rows; ++i) piv[i] = i;
    auto emit_combination = [&](const std::vector<int>& pv) {
        std::vector<std::pair<int, int>> free;
        for (int i = 0; i < rows; ++i)
            for (int c2 = pv[i] + 1; c2 < cols; ++c2)
                if (std::find(pv.begin(), pv.end(), c2) == pv.end()) free.emplace_back(i, c2);
        Subspace S;
        S.rows = static_cast<std::uint8_t>(rows);
        for (int i = 0; i < rows; ++i) {
            S.row[i] = Point{};
            S.row[i].len = static_cast<std::uint8_t>(cols);
            S.row[i].c[pv[i]] = 1;
        }
        // odometer over free entries, lexicographic
        while (true) {
            fn(S);
            int t = int(free.size()) - 1;
            for (; t >= 0; --t) {
                auto [i, c2] = free[t];
                if (++S.row[i].c[c2] < Q) break;
                S.row[i].c[c2] = 0;
            }
            if (t < 0) break;
        }
    };
    // combinations of pivot columns in lexicographic order
    while (true) {
        emit_combination(piv);
        int i = rows - 1;
        while (i >= 0 && piv[i] == cols - rows + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < rows; ++j) piv[j] = piv[j - 1] + 1;
    }
}

Subspace line_key(const gf::Field& F, int r, const Point& a, const Point& b) {
    if (a == b) throw std::domain_error("line_key: identical points");
    return canonical_subspace(F, r, {a, b});
}

}  // namespace qhv
