#include "fibrecontact/circle_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fibrecontact::circle {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Rational rational_floor(const Rational& r) { return Rational(floor_of(r)); }

bool collinear(const Breakpoint& a, const Breakpoint& b, const Breakpoint& c) {
    return (b.value - a.value) * (c.t - a.t) == (c.value - a.value) * (b.t - a.t);
}

}  // namespace

LiftedCircleMap::LiftedCircleMap() : breakpoints_{{Rational(0), Rational(0)}}, bt_{0.0}, bv_{0.0} {}

LiftedCircleMap LiftedCircleMap::translation(const Rational& c) {
    return piecewise_linear({{Rational(0), c}});
}

LiftedCircleMap LiftedCircleMap::piecewise_linear(std::vector<Breakpoint> bps) {
    if (bps.empty()) throw InvalidMap("piecewise-linear map needs at least one breakpoint");
    for (const auto& b : bps)
        if (b.t < 0 || b.t >= 1)
            throw InvalidMap("breakpoint abscissa " + to_string(b.t) + " is outside [0,1)");
    std::sort(bps.begin(), bps.end(), [](const Breakpoint& a, const Breakpoint& b) { return a.t < b.t; });
    for (std::size_t i = 1; i < bps.size(); ++i) {
        if (bps[i].t == bps[i - 1].t)
            throw InvalidMap("duplicate breakpoint abscissa " + to_string(bps[i].t));
        if (!(bps[i].value > bps[i - 1].value))
            throw InvalidMap("map is not strictly increasing at t = " + to_string(bps[i].t));
    }
    if (!(bps.back().value < bps.front().value + 1))
        throw InvalidMap("map is not strictly increasing across t = 1");

    if (bps.front().t != 0) {
        // Interpolate f(1) on the wrap segment, then f(0) = f(1) - 1.
        const auto& last = bps.back();
        Rational t1 = bps.front().t + 1, v1 = bps.front().value + 1;
        Rational at_one = last.value + (Rational(1) - last.t) * (v1 - last.value) / (t1 - last.t);
        bps.insert(bps.begin(), Breakpoint{Rational(0), at_one - 1});
    }

    // Drop interior breakpoints that sit on the line through their neighbours.
    std::vector<Breakpoint> kept{bps.front()};
    for (std::size_t i = 1; i < bps.size(); ++i) {
        Breakpoint next = i + 1 < bps.size() ? bps[i + 1]
                                             : Breakpoint{Rational(1), bps.front().value + 1};
        if (!collinear(kept.back(), bps[i], next)) kept.push_back(bps[i]);
    }

    LiftedCircleMap f;
    f.kind_ = Kind::PiecewiseLinear;
    f.breakpoints_ = std::move(kept);
    f.bt_.clear();
    f.bv_.clear();
    for (const auto& b : f.breakpoints_) {
        f.bt_.push_back(to_double(b.t));
        f.bv_.push_back(to_double(b.value));
    }
    return f;
}

LiftedCircleMap LiftedCircleMap::moebius(const hyperbolic::Isometry2H& iso, long winding) {
    LiftedCircleMap f;
    f.kind_ = Kind::MoebiusBoundaryLift;
    f.breakpoints_.clear();
    f.bt_.clear();
    f.bv_.clear();
    f.iso_ = iso;
    f.winding_ = winding;
    f.lift_offset_ = -std::floor(f.moebius_base(0.0));
    return f;
}

// For |z| = 1 the disk action is z -> z * w / conj(w) with w = alpha + beta conj(z).
// Since |beta| < |alpha|, arg(1 + (beta/alpha) conj(z)) stays in (-pi/2, pi/2) and
// gives a continuous lift without any unwrapping.
double LiftedCircleMap::moebius_base(double t) const {
    double whole = std::floor(t);
    double s = t - whole;
    auto alpha = iso_.alpha(), beta = iso_.beta();
    auto ratio = beta / alpha;
    auto w = 1.0 + ratio * std::polar(1.0, -2.0 * std::numbers::pi * s);
    return whole + s + (std::arg(alpha) + std::arg(w)) / std::numbers::pi;
}

LiftedCircleMap LiftedCircleMap::word(std::vector<WordLetter> letters) {
    std::vector<WordLetter> flat;
    for (auto& l : letters) {
        if (!l.map) throw InvalidMap("word letter without a map");
        if (l.exponent != 1 && l.exponent != -1) throw InvalidMap("word exponents must be +1 or -1");
        if (l.map->kind_ == Kind::Word) {
            const auto& inner = l.map->letters_;
            if (l.exponent == 1) {
                flat.insert(flat.end(), inner.begin(), inner.end());
            } else {
                for (auto it = inner.rbegin(); it != inner.rend(); ++it)
                    flat.push_back({it->map, -it->exponent});
            }
        } else {
            flat.push_back(l);
        }
    }
    LiftedCircleMap f;
    f.kind_ = Kind::Word;
    f.breakpoints_.clear();
    f.bt_.clear();
    f.bv_.clear();
    for (const auto& l : flat)
        f.resolved_.push_back(l.exponent == 1 ? l.map : share(invert(*l.map)));
    f.letters_ = std::move(flat);
    return f;
}

bool LiftedCircleMap::is_exact() const {
    switch (kind_) {
        case Kind::PiecewiseLinear: return true;
        case Kind::MoebiusBoundaryLift: return false;
        case Kind::Word:
            return std::all_of(resolved_.begin(), resolved_.end(),
                               [](const MapRef& m) { return m->is_exact(); });
    }
    return false;
}

double LiftedCircleMap::operator()(double t) const {
    switch (kind_) {
        case Kind::PiecewiseLinear: {
            double whole = std::floor(t);
            double s = t - whole;
            auto it = std::upper_bound(bt_.begin(), bt_.end(), s);
            std::size_t i = static_cast<std::size_t>(it - bt_.begin()) - 1;
            double t0 = bt_[i], v0 = bv_[i];
            double t1 = i + 1 < bt_.size() ? bt_[i + 1] : 1.0;
            double v1 = i + 1 < bv_.size() ? bv_[i + 1] : bv_[0] + 1.0;
            return whole + v0 + (s - t0) * (v1 - v0) / (t1 - t0);
        }
        case Kind::MoebiusBoundaryLift:
            return moebius_base(t) + lift_offset_ + static_cast<double>(winding_);
        case Kind::Word: {
            double x = t;
            for (auto it = resolved_.rbegin(); it != resolved_.rend(); ++it) x = (**it)(x);
            return x;
        }
    }
    return t;
}

Rational LiftedCircleMap::eval_exact(const Rational& t) const {
    if (kind_ == Kind::Word) {
        if (!is_exact()) throw InvalidMap("word contains inexact letters");
        Rational x = t;
        for (auto it = resolved_.rbegin(); it != resolved_.rend(); ++it) x = (*it)->eval_exact(x);
        return x;
    }
    if (kind_ != Kind::PiecewiseLinear) throw InvalidMap("exact evaluation needs a piecewise-linear map");
    Rational whole = rational_floor(t);
    Rational s = t - whole;
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), s,
                               [](const Rational& v, const Breakpoint& b) { return v < b.t; });
    std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    const auto& p = breakpoints_[i];
    Breakpoint q = i + 1 < breakpoints_.size() ? breakpoints_[i + 1]
                                               : Breakpoint{Rational(1), breakpoints_[0].value + 1};
    Rational v = p.value + (s - p.t) * (q.value - p.value) / (q.t - p.t);
    return v + whole;
}

std::optional<LiftedCircleMap> LiftedCircleMap::flatten() const {
    if (kind_ == Kind::PiecewiseLinear) return *this;
    if (!is_exact()) return std::nullopt;
    LiftedCircleMap acc;
    for (const auto& m : resolved_) acc = compose(acc, *m->flatten());
    return acc;
}

MapRef share(LiftedCircleMap f) { return std::make_shared<const LiftedCircleMap>(std::move(f)); }

namespace {

LiftedCircleMap compose_pl(const LiftedCircleMap& f, const LiftedCircleMap& g) {
    LiftedCircleMap g_inv = invert(g);
    std::vector<Rational> ts;
    for (const auto& b : g.breakpoints()) ts.push_back(b.t);
    // Preimages under g of f's breakpoints (and their integer translates) in [0,1).
    Rational lo = g.eval_exact(Rational(0));
    for (const auto& b : f.breakpoints()) {
        Rational v = b.t + rational_floor(lo - b.t);
        if (v < lo) v += 1;
        ts.push_back(g_inv.eval_exact(v));
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<Breakpoint> bps;
    bps.reserve(ts.size());
    for (const auto& t : ts)
        if (t >= 0 && t < 1) bps.push_back({t, f.eval_exact(g.eval_exact(t))});
    return LiftedCircleMap::piecewise_linear(std::move(bps));
}

}  // namespace

LiftedCircleMap compose(const LiftedCircleMap& f, const LiftedCircleMap& g) {
    using Kind = LiftedCircleMap::Kind;
    if (f.kind() == Kind::PiecewiseLinear && g.kind() == Kind::PiecewiseLinear) return compose_pl(f, g);
    return LiftedCircleMap::word({{share(f), 1}, {share(g), 1}});
}

LiftedCircleMap invert(const LiftedCircleMap& f) {
    using Kind = LiftedCircleMap::Kind;
    switch (f.kind()) {
        case Kind::PiecewiseLinear: {
            std::vector<Breakpoint> inv;
            for (const auto& b : f.breakpoints()) {
                Rational whole = rational_floor(b.value);
                inv.push_back({b.value - whole, b.t - whole});
            }
            return LiftedCircleMap::piecewise_linear(std::move(inv));
        }
        case Kind::MoebiusBoundaryLift: {
            auto g = LiftedCircleMap::moebius(f.isometry().inverse(), 0);
            // Pick the integer shift with g(f(0)) = 0.
            double shift = -std::round(g(f(0.0)));
            g.winding_ = static_cast<long>(shift);
            return g;
        }
        case Kind::Word: {
            std::vector<WordLetter> rev;
            for (auto it = f.letters().rbegin(); it != f.letters().rend(); ++it)
                rev.push_back({it->map, -it->exponent});
            return LiftedCircleMap::word(std::move(rev));
        }
    }
    return f;
}

Scalar sup_displacement(const LiftedCircleMap& f, std::size_t grid) {
    if (auto pl = f.flatten()) {
        const auto& bps = pl->breakpoints();
        Rational best = bps.front().value - bps.front().t;
        for (const auto& b : bps) best = std::max(best, Rational(b.value - b.t));
        return Scalar(best);
    }
    if (grid == 0) grid = 1;
    auto disp = [&](double t) { return f(t) - t; };
    std::size_t arg = 0;
    double best = disp(0.0);
    for (std::size_t k = 1; k < grid; ++k) {
        double v = disp(static_cast<double>(k) / static_cast<double>(grid));
        if (v > best) {
            best = v;
            arg = k;
        }
    }
    // Golden-section refinement on the two neighbouring cells.
    double h = 1.0 / static_cast<double>(grid);
    double a = static_cast<double>(arg) * h - h, b = static_cast<double>(arg) * h + h;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = disp(c), fd = disp(d);
    for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = disp(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = disp(d);
        }
    }
    return Scalar(std::max({best, fc, fd}));
}

Scalar inf_displacement(const LiftedCircleMap& f, std::size_t grid) {
    Scalar s = sup_displacement(invert(f), grid);
    if (s.is_exact()) return Scalar(Rational(-s.exact()));
    return Scalar(-s.to_double());
}

TranslationNumberEstimate translation_number(const LiftedCircleMap& f, std::size_t iterations,
                                             std::size_t exact_bit_limit) {
    if (iterations == 0) throw std::invalid_argument("translation_number needs at least one iteration");
    TranslationNumberEstimate est;
    est.iterations = iterations;
    const double n = static_cast<double>(iterations);

    std::size_t done = 0;
    double x = 0.0;
    if (auto pl = f.flatten()) {
        Rational q(0);
        while (done < iterations && bit_size(q) <= exact_bit_limit) {
            q = pl->eval_exact(q);
            ++done;
        }
        if (done == iterations) {
            est.exact_value = Rational(q / Rational(static_cast<long>(iterations)));
            est.value = to_double(*est.exact_value);
            est.error_bound = 1.0 / n;
            return est;
        }
        x = to_double(q);
        double slack_sum = 0.0;
        for (; done < iterations; ++done) {
            x = (*pl)(x);
            slack_sum += 16.0 * kEps * (std::abs(x) + 2.0);
        }
        est.value = x / n;
        est.error_bound = 1.0 / n + slack_sum / n;
        return est;
    }

    std::size_t letters = f.kind() == LiftedCircleMap::Kind::Word ? f.letters().size() : 1;
    double slack_sum = 0.0;
    for (; done < iterations; ++done) {
        x = f(x);
        slack_sum += 64.0 * kEps * (std::abs(x) + 4.0) * static_cast<double>(letters);
    }
    est.value = x / n;
    est.error_bound = 1.0 / n + slack_sum / n;
    return est;
}

LiftedCircleMap commutator(const MapRef& a, const MapRef& b) {
    return LiftedCircleMap::word({{a, 1}, {b, 1}, {a, -1}, {b, -1}});
}

LiftedCircleMap evaluate_relator(std::span<const MapRef> maps) {
    if (maps.empty() || maps.size() % 2 != 0)
        throw OddMapCount("relator needs a positive even number of maps, got " + std::to_string(maps.size()));
    std::vector<WordLetter> letters;
    for (std::size_t i = 0; i < maps.size(); i += 2) {
        const auto& a = maps[i];
        const auto& b = maps[i + 1];
        letters.insert(letters.end(), {{a, 1}, {b, 1}, {a, -1}, {b, -1}});
    }
    return LiftedCircleMap::word(std::move(letters));
}

WoodCheck wood_bound_check(std::span<const MapRef> maps, std::size_t grid) {
    return wood_bound_check(evaluate_relator(maps), static_cast<int>(maps.size() / 2), grid);
}

WoodCheck wood_bound_check(const LiftedCircleMap& rel, int genus, std::size_t grid) {
    WoodCheck out;
    out.genus = genus;
    const double bound = 2.0 * out.genus;
    auto pl = rel.flatten();
    out.min_displacement = std::numeric_limits<double>::infinity();
    out.max_displacement = -std::numeric_limits<double>::infinity();
    if (grid == 0) grid = 1;
    for (std::size_t k = 0; k < grid; ++k) {
        bool violated;
        double d;
        if (pl) {
            Rational t(static_cast<long>(k), static_cast<long>(grid));
            t.canonicalize();
            Rational dq = pl->eval_exact(t) - t;
            d = to_double(dq);
            violated = dq > out.genus * 2 || dq < -out.genus * 2;
        } else {
            double t = static_cast<double>(k) / static_cast<double>(grid);
            d = rel(t) - t;
            violated = d > bound || d < -bound;
        }
        out.min_displacement = std::min(out.min_displacement, d);
        out.max_displacement = std::max(out.max_displacement, d);
        if (violated && out.holds) {
            out.holds = false;
            out.witness = static_cast<double>(k) / static_cast<double>(grid);
        }
    }
    return out;
}

long euler_from_sections(const LiftedCircleMap& fD, const LiftedCircleMap& fK, std::size_t grid, double tol) {
    if (grid == 0) grid = 1;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    for (std::size_t k = 0; k < grid; ++k) {
        double t = static_cast<double>(k) / static_cast<double>(grid);
        double d = fD(t) - fK(t);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
        sum += d;
    }
    if (hi - lo > tol)
        throw NonConstantDifference("section lifts differ by a non-constant amount (spread " +
                                    std::to_string(hi - lo) + ")");
    double mean = sum / static_cast<double>(grid);
    double nearest = std::round(mean);
    if (std::abs(mean - nearest) > tol)
        throw NonIntegerDifference("section lifts differ by " + std::to_string(mean) +
                                   ", which is not an integer");
    return static_cast<long>(nearest);
}

}  // namespace fibrecontact::circle
