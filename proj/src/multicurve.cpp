#include "fibrecontact/multicurve.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace fibrecontact::multicurve {

bool SurfaceDecomposition::has_disk() const {
    return std::any_of(pieces.begin(), pieces.end(), [](const Piece& p) { return p.is_disk(); });
}

Validation validate(const SurfaceDecomposition& dec) {
    auto fail = [](std::string msg) { return Validation{false, std::move(msg)}; };
    if (dec.ambient_chi % 2 != 0 || dec.ambient_chi > 2)
        return fail("ambient surface must be closed and orientable (even chi <= 2)");
    if (dec.ambient_sphere != (dec.ambient_chi == 2)) return fail("sphere flag disagrees with chi");
    if (dec.pieces.empty()) return fail("no pieces");

    long chi = 0;
    std::set<std::string> ids;
    for (const auto& p : dec.pieces) {
        if (p.genus < 0) return fail("piece " + p.id + " has negative genus");
        if (p.boundaries < 0) return fail("piece " + p.id + " has a negative boundary count");
        if (!ids.insert(p.id).second) return fail("duplicate piece id " + p.id);
        if (p.boundaries == 0 && (dec.pieces.size() != 1 || !dec.curves.empty()))
            return fail("closed piece " + p.id + " must be the whole surface");
        chi += p.euler_characteristic();
    }
    if (chi != dec.ambient_chi)
        return fail("euler mismatch: pieces sum to " + std::to_string(chi) + ", surface has " +
                    std::to_string(dec.ambient_chi));

    std::set<std::pair<std::size_t, long>> used;
    std::vector<std::size_t> parent(dec.pieces.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& c : dec.curves) {
        for (const CurveEnd& e : {c.a, c.b}) {
            if (e.piece >= dec.pieces.size()) return fail("curve " + c.id + " refers to an unknown piece");
            if (e.slot < 1 || e.slot > dec.pieces[e.piece].boundaries)
                return fail("curve " + c.id + " uses slot " + std::to_string(e.slot) + " of piece " +
                            dec.pieces[e.piece].id + ", which has " +
                            std::to_string(dec.pieces[e.piece].boundaries) + " boundary components");
            if (!used.insert({e.piece, e.slot}).second)
                return fail("boundary slot " + dec.pieces[e.piece].id + "." + std::to_string(e.slot) +
                            " is used twice");
        }
        parent[find(c.a.piece)] = find(c.b.piece);
    }
    for (std::size_t i = 0; i < dec.pieces.size(); ++i)
        for (long s = 1; s <= dec.pieces[i].boundaries; ++s)
            if (!used.count({i, s}))
                return fail("boundary slot " + dec.pieces[i].id + "." + std::to_string(s) + " is unused");
    for (std::size_t i = 1; i < dec.pieces.size(); ++i)
        if (find(i) != find(0)) return fail("the gluing graph is disconnected");
    return {};
}

void require_valid(const SurfaceDecomposition& dec) {
    auto v = validate(dec);
    if (!v.valid) throw InvalidDecomposition(v.diagnostic);
}

bool is_essential(const SurfaceDecomposition& dec) {
    require_valid(dec);
    if (dec.ambient_sphere) return dec.curves.empty();
    return !dec.has_disk();
}

std::string to_string(Tightness t) {
    switch (t) {
        case Tightness::UniversallyTight: return "UniversallyTight";
        case Tightness::NotUniversallyTight: return "NotUniversallyTight";
        case Tightness::OvertwistedCertificate: return "OvertwistedCertificate";
    }
    return "?";
}

Tightness universal_tightness(const SurfaceDecomposition& dec, long euler) {
    require_valid(dec);
    bool disk = dec.has_disk();
    if (!dec.ambient_sphere && !disk) return Tightness::UniversallyTight;
    if (dec.ambient_sphere && euler < 0 && dec.curves_empty()) return Tightness::UniversallyTight;
    if (dec.ambient_sphere && euler >= 0 && dec.curves_connected()) return Tightness::UniversallyTight;
    if (disk) {
        bool inequality = dec.ambient_sphere ? euler >= 0 : euler > 0;
        if (!dec.curves_connected() || !inequality) return Tightness::OvertwistedCertificate;
    }
    return Tightness::NotUniversallyTight;
}

bool convex_neighborhood_tight(const SurfaceDecomposition& dec) {
    require_valid(dec);
    if (dec.ambient_sphere) return dec.curves_connected();
    return !dec.has_disk();
}

namespace {

std::pair<long, long> label(const Piece& p) { return {p.genus, p.boundaries}; }

// Canonical encoding: ambient data, sorted piece labels, then the
// lexicographically least sorted edge list over label-preserving relabellings.
std::vector<long> canonical(const SurfaceDecomposition& dec) {
    std::size_t n = dec.pieces.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return label(dec.pieces[a]) < label(dec.pieces[b]); });

    std::vector<long> head{dec.ambient_chi, dec.ambient_sphere ? 1 : 0, static_cast<long>(n)};
    for (std::size_t i : order) {
        head.push_back(dec.pieces[i].genus);
        head.push_back(dec.pieces[i].boundaries);
    }

    // Groups of positions (in sorted order) sharing a label.
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && label(dec.pieces[order[j]]) == label(dec.pieces[order[i]])) ++j;
        groups.emplace_back(i, j);
        i = j;
    }

    // perm[k] = new position of the piece at sorted position k.
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> pos_of(n);
    for (std::size_t k = 0; k < n; ++k) pos_of[order[k]] = k;

    std::vector<long> best;
    bool have = false;
    auto evaluate = [&] {
        std::vector<std::pair<long, long>> edges;
        for (const auto& c : dec.curves) {
            long u = static_cast<long>(perm[pos_of[c.a.piece]]);
            long v = static_cast<long>(perm[pos_of[c.b.piece]]);
            edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        std::sort(edges.begin(), edges.end());
        std::vector<long> flat;
        for (auto [u, v] : edges) {
            flat.push_back(u);
            flat.push_back(v);
        }
        if (!have || flat < best) {
            best = std::move(flat);
            have = true;
        }
    };
    // Enumerate the product of the permutations of each group.
    auto rec = [&](auto&& self, std::size_t g) -> void {
        if (g == groups.size()) {
            evaluate();
            return;
        }
        auto [lo, hi] = groups[g];
        std::sort(perm.begin() + long(lo), perm.begin() + long(hi));
        do {
            self(self, g + 1);
        } while (std::next_permutation(perm.begin() + long(lo), perm.begin() + long(hi)));
    };
    rec(rec, 0);

    head.push_back(static_cast<long>(dec.curves.size()));
    head.insert(head.end(), best.begin(), best.end());
    return head;
}

}  // namespace

MulticurveClass::MulticurveClass(SurfaceDecomposition dec) : dec_(std::move(dec)) {
    require_valid(dec_);
    if (dec_.pieces.size() > 8) throw ScaleExceeded("isotopy comparison is limited to 8 pieces");
    canonical_ = canonical(dec_);
}

bool isotopy_equal(const MulticurveClass& a, const MulticurveClass& b) { return a == b; }

TorusCurve::TorusCurve(long p, long q) : p_(p), q_(q) {
    if (std::gcd(p, q) != 1) throw InvalidDecomposition("torus curve (" + std::to_string(p) + ", " +
                                                        std::to_string(q) + ") is not primitive");
    if (q_ < 0 || (q_ == 0 && p_ < 0)) {
        p_ = -p_;
        q_ = -q_;
    }
}

long torus_intersection(const TorusCurve& a, const TorusCurve& b) { return std::abs(a.p() * b.q() - a.q() * b.p()); }

void TorusDividingSet::validate() const {
    if (components <= 0 || components % 2 != 0)
        throw InvalidDecomposition("a dividing set on a torus has an even positive number of components");
}

Rational bennequin_semilocal_bound(const TorusDividingSet& gamma, const TorusCurve& c) {
    gamma.validate();
    return make_rational(-gamma.components * torus_intersection(gamma.slope, c), 2);
}

long tb_from_degree(long degree, long n) {
    if (n <= 0) throw InvalidDecomposition("n must be positive");
    return degree + n - 1;
}

namespace {

long parse_long(std::string_view s, std::size_t line) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("expected an integer, got '" + std::string(s) + "'", line);
    return v;
}

std::string_view value_of(std::string_view field, std::string_view key, std::size_t line) {
    if (field.size() <= key.size() || field.substr(0, key.size()) != key || field[key.size()] != '=')
        throw ParseError("expected " + std::string(key) + "=..., got '" + std::string(field) + "'", line);
    return field.substr(key.size() + 1);
}

}  // namespace

SurfaceDecomposition parse_decomposition(std::string_view text) {
    SurfaceDecomposition dec;
    bool have_surface = false;
    std::map<std::string, std::size_t, std::less<>> piece_index;
    std::vector<std::tuple<std::string, std::string, std::string, std::size_t>> pending;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::istringstream ls(raw);
        std::vector<std::string> f;
        for (std::string w; ls >> w;) f.push_back(w);
        if (f.empty() || f[0][0] == '#') continue;
        if (f[0] == "surface") {
            if (have_surface) throw ParseError("duplicate surface line", line);
            if (f.size() != 3) throw ParseError("surface line needs chi=<int> sphere=<bool>", line);
            dec.ambient_chi = parse_long(value_of(f[1], "chi", line), line);
            auto s = value_of(f[2], "sphere", line);
            if (s != "true" && s != "false") throw ParseError("sphere must be true or false", line);
            dec.ambient_sphere = s == "true";
            have_surface = true;
        } else if (f[0] == "piece") {
            if (f.size() != 4) throw ParseError("piece line needs <id> genus=<g> boundaries=<b>", line);
            if (piece_index.count(f[1])) throw ParseError("duplicate piece id " + f[1], line);
            Piece p{f[1], parse_long(value_of(f[2], "genus", line), line),
                    parse_long(value_of(f[3], "boundaries", line), line)};
            piece_index.emplace(p.id, dec.pieces.size());
            dec.pieces.push_back(std::move(p));
        } else if (f[0] == "curve") {
            if (f.size() != 4) throw ParseError("curve line needs <id> <piece>.<slot> <piece>.<slot>", line);
            pending.emplace_back(f[1], f[2], f[3], line);
        } else {
            throw ParseError("unknown record '" + f[0] + "'", line);
        }
    }
    if (!have_surface) throw ParseError("missing surface line", line);
    auto end_of = [&](const std::string& s, std::size_t ln) {
        auto dot = s.rfind('.');
        if (dot == std::string::npos) throw ParseError("expected <piece>.<slot>, got '" + s + "'", ln);
        auto it = piece_index.find(std::string_view(s).substr(0, dot));
        if (it == piece_index.end()) throw ParseError("unknown piece '" + s.substr(0, dot) + "'", ln);
        return CurveEnd{it->second, parse_long(std::string_view(s).substr(dot + 1), ln)};
    };
    for (const auto& [id, a, b, ln] : pending) dec.curves.push_back({id, end_of(a, ln), end_of(b, ln)});
    return dec;
}

std::string to_text(const SurfaceDecomposition& dec) {
    std::ostringstream out;
    out << "surface chi=" << dec.ambient_chi << " sphere=" << (dec.ambient_sphere ? "true" : "false") << "\n";
    for (const auto& p : dec.pieces) out << "piece " << p.id << " genus=" << p.genus << " boundaries=" << p.boundaries << "\n";
    for (const auto& c : dec.curves)
        out << "curve " << c.id << " " << dec.pieces.at(c.a.piece).id << "." << c.a.slot << " "
            << dec.pieces.at(c.b.piece).id << "." << c.b.slot << "\n";
    return out.str();
}

}  // namespace fibrecontact::multicurve
