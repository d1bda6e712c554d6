#include "qhv/varieties.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace qhv {

const char* variety_name(VarietyTag t) {
    switch (t) {
        case VarietyTag::VEps: return "veps";
        case VarietyTag::BT: return "bt";
        case VarietyTag::Hermitian: return "hermitian";
        case VarietyTag::Fermat: return "fermat";
        case VarietyTag::HermitianConeInf: return "hermitian-cone";
    }
    return "?";
}

namespace {

bool affine_rhs_matches(const FieldTower& T, const Point& p, int r, bool hermitian_model) {
    // p dehomogenized against c[0]
    Elem iv = p.c[0] == 1 ? 1 : T.F.inv(p.c[0]);
    Elem rhs = 0;
    for (int i = 1; i < r; ++i) {
        Elem xi = p.c[0] == 1 ? p.c[i] : T.F.mul(p.c[i], iv);
        rhs = static_cast<Elem>(rhs ^ (hermitian_model ? T.F.pow(xi, T.q + 1) : T.gamma_table()[xi]));
    }
    Elem xr = p.c[0] == 1 ? p.c[r] : T.F.mul(p.c[r], iv);
    return T.trace_q2_q(xr) == rhs;
}

bool infinity_condition(const FieldTower& T, VarietyTag tag, const Point& p, int r) {
    std::uint64_t exp = (tag == VarietyTag::VEps) ? T.n : (T.q + 1);
    Elem acc = 0;
    for (int i = 1; i < r; ++i) acc = static_cast<Elem>(acc ^ T.F.pow(p.c[i], exp));
    return acc == 0;
}

// affine part shared by VEps, BT (and reused with the Hermitian rhs):
// for each (x_1..x_{r-1}) the trace coordinate of x_r is fixed, leaving the
// q-element fibre trace_preimage(rhs) + GF(q)
template <typename RhsTab>
void emit_affine(const FieldTower& T, int r, const RhsTab& rhs_of, PointSet& out) {
    const std::uint32_t Q = T.Q;
    const auto& sub = T.gfq_elements();
    std::vector<Elem> x(r, 0);  // x[0..r-2] = x_1..x_{r-1}
    Point p;
    p.len = static_cast<std::uint8_t>(r + 1);
    p.c[0] = 1;
    while (true) {
        Elem rhs = 0;
        for (int i = 0; i + 1 < r; ++i) rhs = static_cast<Elem>(rhs ^ rhs_of(x[i]));
        Elem base = T.trace_preimage(rhs);
        for (int i = 0; i + 1 < r; ++i) p.c[i + 1] = x[i];
        for (Elem u : sub) {
            p.c[r] = static_cast<Elem>(base ^ u);
            out.push(p);
            ++out.affine_count;
        }
        int i = r - 2;
        for (; i >= 0; --i) {
            if (++x[i] < Q) break;
            x[i] = 0;
        }
        if (i < 0) break;
    }
}

void emit_infinity(const FieldTower& T, VarietyTag tag, int r, PointSet& out) {
    iterate_points(T.F, r - 1, [&](const Point& y) {
        Point p;
        p.len = static_cast<std::uint8_t>(r + 1);
        for (int i = 0; i < r; ++i) p.c[i + 1] = y.c[i];
        if (infinity_condition(T, tag, p, r)) {
            out.push(p);
            ++out.infinity_count;
        }
    });
}

PointSet enumerate_cone_variety(const FieldTower& T, VarietyTag tag, int r, const Guard& guard) {
    if (r < 2) throw std::invalid_argument("enumerate: r must be >= 2");
    unsigned __int128 predicted = 1;
    for (int i = 0; i + 1 < r; ++i) predicted *= T.Q;
    predicted *= T.q;
    predicted += theta(r - 1, T.Q);  // loose upper bound for the infinity part
    if (predicted > guard.max_points)
        throw GuardError("enumerate: predicted ~" + std::to_string(std::uint64_t(predicted)) +
                         " points (affine q^{2r-1} = " +
                         std::to_string(std::uint64_t(predicted - theta(r - 1, T.Q))) +
                         ") exceed the cap " + std::to_string(guard.max_points));
    PointSet ps;
    ps.tag = tag;
    ps.e = static_cast<std::uint8_t>(T.e);
    ps.r = static_cast<std::uint8_t>(r);
    ps.flat.reserve(std::size_t(std::uint64_t(predicted)) * (r + 1));
    const auto& gam = T.gamma_table();
    if (tag == VarietyTag::Hermitian)
        emit_affine(T, r, [&](Elem x) { return T.F.pow(x, T.q + 1); }, ps);
    else
        emit_affine(T, r, [&](Elem x) { return gam[x]; }, ps);
    emit_infinity(T, tag, r, ps);
    return ps;
}

}  // namespace

bool membership(const FieldTower& T, VarietyKind kind, const Point& p) {
    const int r = kind.r;
    if (p.len != r + 1) throw std::invalid_argument("membership: point length does not match r");
    switch (kind.tag) {
        case VarietyTag::VEps:
        case VarietyTag::BT:
        case VarietyTag::Hermitian: {
            bool herm = kind.tag == VarietyTag::Hermitian;
            if (p.c[0] != 0) return affine_rhs_matches(T, p, r, herm);
            VarietyTag itag = kind.tag == VarietyTag::VEps ? VarietyTag::VEps : VarietyTag::BT;
            return infinity_condition(T, itag, p, r);
        }
        case VarietyTag::Fermat: {
            Elem acc = 0;
            for (int i = 0; i <= r; ++i) acc = static_cast<Elem>(acc ^ T.F.pow(p.c[i], T.n));
            return acc == 0;
        }
        case VarietyTag::HermitianConeInf: {
            if (p.c[0] != 0) return false;
            return infinity_condition(T, VarietyTag::BT, p, r);
        }
    }
    return false;
}

PointSet enumerate_v_eps(const FieldTower& T, int r, const Guard& guard) {
    return enumerate_cone_variety(T, VarietyTag::VEps, r, guard);
}

PointSet enumerate_bt(const FieldTower& T, int r, const Guard& guard) {
    return enumerate_cone_variety(T, VarietyTag::BT, r, guard);
}

VEpsCounts count_v_eps(const FieldTower& T, int r) {
    if (r < 2) throw std::invalid_argument("count_v_eps: r must be >= 2");
    const std::uint32_t Q = T.Q;
    const auto& gam = T.gamma_table();
    // the trace map x -> x^q + x is q-to-1 onto GF(q): q solutions per tuple
    std::uint64_t affine = 0;
    std::vector<Elem> x(r - 1, 0);
    while (true) {
        Elem rhs = 0;
        for (int i = 0; i + 1 < r; ++i) rhs = static_cast<Elem>(rhs ^ gam[x[i]]);
        affine += T.q;  // fibre size; rhs is in GF(q) by construction
        (void)rhs;
        int i = r - 2;
        for (; i >= 0; --i) {
            if (++x[i] < Q) break;
            x[i] = 0;
        }
        if (i < 0) break;
    }
    std::uint64_t inf = 0;
    iterate_points(T.F, r - 2, [&](const Point& y) {
        Elem acc = 0;
        for (int i = 0; i < r - 1; ++i) acc = static_cast<Elem>(acc ^ T.F.pow(y.c[i], T.n));
        if (acc == 0) inf += T.Q;  // X_r free over the cone generator
    });
    inf += 1;  // P_inf itself
    return {affine, inf};
}

PointSet infinity_section(const FieldTower& T, VarietyKind kind) {
    if (kind.tag == VarietyTag::Fermat || kind.tag == VarietyTag::HermitianConeInf)
        throw std::invalid_argument("infinity_section: kind must be VEps, BT or Hermitian");
    PointSet ps;
    ps.tag = kind.tag;
    ps.e = static_cast<std::uint8_t>(T.e);
    ps.r = static_cast<std::uint8_t>(kind.r);
    VarietyTag itag = kind.tag == VarietyTag::VEps ? VarietyTag::VEps : VarietyTag::BT;
    emit_infinity(T, itag, kind.r, ps);
    return ps;
}

PointSet enumerate_filtered(const FieldTower& T, VarietyKind kind, const Guard& guard) {
    std::uint64_t total = theta(kind.r, T.Q);
    if (total > guard.max_points)
        throw GuardError("enumerate_filtered: PG(" + std::to_string(kind.r) + "," + std::to_string(T.Q) +
                         ") has " + std::to_string(total) + " points, over the cap " +
                         std::to_string(guard.max_points));
    PointSet ps;
    ps.tag = kind.tag;
    ps.e = static_cast<std::uint8_t>(T.e);
    ps.r = static_cast<std::uint8_t>(kind.r);
    iterate_points(T.F, kind.r, [&](const Point& p) {
        if (membership(T, kind, p)) {
            ps.push(p);
            if (p.c[0] != 0)
                ++ps.affine_count;
            else
                ++ps.infinity_count;
        }
    });
    return ps;
}

std::uint64_t fermat_count(const FieldTower& T, int r, const Guard& guard) {
    std::uint64_t total = theta(r, T.Q);
    if (total > guard.max_points)
        throw GuardError("fermat_count: PG point count " + std::to_string(total) + " over the cap");
    std::uint64_t cnt = 0;
    iterate_points(T.F, r, [&](const Point& p) {
        Elem acc = 0;
        for (int i = 0; i <= r; ++i) acc = static_cast<Elem>(acc ^ T.F.pow(p.c[i], T.n));
        if (acc == 0) ++cnt;
    });
    return cnt;
}

std::uint64_t hk_bound(std::uint64_t nu, int r, std::uint64_t q) {
    if (nu < 1 || r < 2) throw std::invalid_argument("hk_bound: need nu >= 1, r >= 2");
    std::uint64_t qr1 = 1, qr2 = 1;
    for (int i = 0; i < r - 1; ++i) qr1 *= q;
    for (int i = 0; i < r - 2; ++i) qr2 *= q;
    return (nu - 1) * qr1 + nu * qr2 + theta(r - 3, q);
}

HermitianCounts hermitianCountsImpl(int r, std::uint64_t q) {
    auto pw = [&](int k) {
        __int128 p = 1;
        for (int i = 0; i < k; ++i) p *= (__int128)q;
        return p;
    };
    auto sgn = [](int k) { return k % 2 == 0 ? 1 : -1; };
    __int128 var = (pw(r + 1) + sgn(r)) * (pw(r) - sgn(r)) / ((__int128)q * q - 1);
    __int128 gen = (pw(r) + sgn(r - 1)) * (pw(r - 1) - sgn(r - 1)) / ((__int128)q * q - 1);
    __int128 tan = gen + sgn(r - 1) * pw(r - 1);
    return {std::uint64_t(var), std::uint64_t(gen), std::uint64_t(tan)};
}

HermitianCounts hermitian_counts(int r, std::uint64_t q) {
    if (r < 2) throw std::invalid_argument("hermitian_counts: r >= 2");
    return hermitianCountsImpl(r, q);
}

std::vector<Point> hermitian_norm_form_points(const gf::Field& Fq2, int r, std::uint32_t qsub) {
    std::vector<Point> out;
    iterate_points(Fq2, r, [&](const Point& p) {
        Elem acc = 0;
        for (int i = 0; i <= r; ++i) acc = Fq2.add(acc, Fq2.pow(p.c[i], qsub + 1));
        if (acc == 0) out.push_back(p);
    });
    return out;
}

EllipticQuadric make_elliptic_quadric(std::uint32_t q) {
    // factor q = p^m
    int p = 2;
    while (q % p) ++p;
    int m = 0;
    std::uint32_t t = q;
    while (t > 1) {
        t /= p;
        ++m;
    }
    gf::Field F = gf::Field::make(p, m);
    // smallest (a, b) with t^2 + a t + b irreducible over GF(q)
    Elem aa = 0, bb = 0;
    bool found = false;
    for (std::uint32_t a = 0; a < q && !found; ++a)
        for (std::uint32_t b = 0; b < q && !found; ++b) {
            bool has_root = false;
            for (std::uint32_t x = 0; x < q; ++x) {
                Elem v = F.add(F.add(F.mul(Elem(x), Elem(x)), F.mul(Elem(a), Elem(x))), Elem(b));
                if (v == 0) {
                    has_root = true;
                    break;
                }
            }
            if (!has_root) {
                aa = Elem(a);
                bb = Elem(b);
                found = true;
            }
        }
    if (!found) throw std::logic_error("make_elliptic_quadric: no irreducible binary quadratic");
    EllipticQuadric eq{std::move(F), aa, bb, {}};
    iterate_points(eq.F, 3, [&](const Point& P) {
        const gf::Field& G = eq.F;
        Elem v = G.add(G.mul(P.c[0], P.c[1]),
                       G.add(G.add(G.mul(P.c[2], P.c[2]), G.mul(aa, G.mul(P.c[2], P.c[3]))),
                             G.mul(bb, G.mul(P.c[3], P.c[3]))));
        if (v == 0) eq.points.push_back(P);
    });
    return eq;
}

void write_pointset(const std::string& path, const PointSet& ps) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_pointset: cannot open " + path);
    f.write("QHVP", 4);
    std::uint8_t hdr[4] = {1, ps.e, ps.r, static_cast<std::uint8_t>(ps.tag)};
    f.write(reinterpret_cast<const char*>(hdr), 4);
    std::uint64_t count = ps.size();
    std::uint8_t cnt[8];
    for (int i = 0; i < 8; ++i) cnt[i] = (count >> (8 * i)) & 0xff;
    f.write(reinterpret_cast<const char*>(cnt), 8);
    for (Elem v : ps.flat) {
        std::uint8_t w[2] = {std::uint8_t(v & 0xff), std::uint8_t(v >> 8)};
        f.write(reinterpret_cast<const char*>(w), 2);
    }
    if (!f) throw std::runtime_error("write_pointset: write failed on " + path);
}

PointSet read_pointset(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("read_pointset: cannot open " + path);
    char magic[4];
    f.read(magic, 4);
    if (!f || std::memcmp(magic, "QHVP", 4) != 0)
        throw std::runtime_error("read_pointset: bad magic in " + path);
    std::uint8_t hdr[4];
    f.read(reinterpret_cast<char*>(hdr), 4);
    if (!f || hdr[0] != 1) throw std::runtime_error("read_pointset: unsupported format version");
    PointSet ps;
    ps.e = hdr[1];
    ps.r = hdr[2];
    ps.tag = static_cast<VarietyTag>(hdr[3]);
    std::uint8_t cnt[8];
    f.read(reinterpret_cast<char*>(cnt), 8);
    std::uint64_t count = 0;
    for (int i = 7; i >= 0; --i) count = (count << 8) | cnt[i];
    ps.flat.resize(count * (ps.r + 1));
    std::vector<std::uint8_t> buf(ps.flat.size() * 2);
    f.read(reinterpret_cast<char*>(buf.data()), std::streamsize(buf.size()));
    if (!f) throw std::runtime_error("read_pointset: truncated file " + path);
    for (std::size_t i = 0; i < ps.flat.size(); ++i)
        ps.flat[i] = static_cast<Elem>(buf[2 * i] | (buf[2 * i + 1] << 8));
    for (std::uint64_t i = 0; i < count; ++i) {
        if (ps.flat[i * (ps.r + 1)] != 0)
            ++ps.affine_count;
        else
            ++ps.infinity_count;
    }
    return ps;
}

std::string cache_filename(const FieldTower& T, VarietyTag tag, int r) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "qhvp_v1_e%d_r%d_%s_d%u_eps%u.bin", T.e, r, variety_name(tag),
                  unsigned(T.delta), unsigned(T.epsilon));
    return buf;
}

}  // namespace qhv
