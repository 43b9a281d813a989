#include "fibrecontact/formcalc/forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

namespace fibrecontact::formcalc {

std::optional<std::size_t> Chart::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    return std::nullopt;
}

bool Chart::excluded(std::span<const double> point) const {
    return std::any_of(exclusions.begin(), exclusions.end(),
                       [&](const Exclusion& ex) { return std::abs(ex.expr.eval(point)) < ex.eps; });
}

void Chart::validate() const {
    if (names.size() < 1 || names.size() > 4) throw InvalidChart("charts have between 1 and 4 coordinates");
    if (ranges.size() != names.size() || periodic.size() != names.size())
        throw InvalidChart("chart ranges and periodicity flags must match the coordinates");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto& n = names[i];
        if (n == "pi" || n == "sin" || n == "cos" || n == "exp") throw InvalidChart("reserved coordinate name '" + n + "'");
        if (!seen.insert(n).second) throw InvalidChart("duplicate coordinate '" + n + "'");
        if (!(ranges[i].first < ranges[i].second)) throw InvalidChart("empty range for '" + n + "'");
    }
    for (const auto& n : names)
        if (n.size() > 1 && n[0] == 'd' && seen.count(n.substr(1)))
            throw InvalidChart("coordinate '" + n + "' collides with a differential");
    for (const auto& ex : exclusions) {
        if (!(ex.eps > 0)) throw InvalidChart("exclusion radius must be positive");
        if (ex.expr.arity() > names.size()) throw InvalidChart("exclusion uses an unknown coordinate");
    }
}

Chart make_chart(std::vector<std::string> names, std::vector<std::pair<double, double>> ranges) {
    Chart c;
    c.periodic.assign(names.size(), false);
    c.names = std::move(names);
    c.ranges = std::move(ranges);
    c.validate();
    return c;
}

TwoForm::TwoForm(std::size_t dim) : dim_(dim), upper_(dim * (dim - 1) / 2, Expr::constant(0)) {}

std::size_t TwoForm::slot(std::size_t i, std::size_t j) const {
    if (!(i < j && j < dim_)) throw std::out_of_range("two-form index");
    // Row-major position of (i, j) in the strict upper triangle.
    return i * dim_ - i * (i + 1) / 2 + (j - i - 1);
}

const Expr& TwoForm::at(std::size_t i, std::size_t j) const { return upper_[slot(i, j)]; }
void TwoForm::set(std::size_t i, std::size_t j, Expr e) { upper_[slot(i, j)] = std::move(e); }

TwoForm exterior_derivative(const OneForm& alpha) {
    std::size_t n = alpha.coeffs.size();
    TwoForm out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            out.set(i, j, simplify_sub(derivative(alpha.coeffs[j], i), derivative(alpha.coeffs[i], j)));
    return out;
}

Expr contact_coefficient(const OneForm& alpha) {
    if (alpha.coeffs.size() != 3) throw DimensionMismatch("the contact condition needs a 3-dimensional chart");
    auto F = exterior_derivative(alpha);
    const auto& a = alpha.coeffs;
    return simplify_add(simplify_sub(simplify_mul(a[0], F.at(1, 2)), simplify_mul(a[1], F.at(0, 2))),
                        simplify_mul(a[2], F.at(0, 1)));
}

std::string to_string(ContactSign s) {
    switch (s) {
        case ContactSign::Positive: return "Positive";
        case ContactSign::Negative: return "Negative";
        case ContactSign::Mixed: return "Mixed";
    }
    return "?";
}

ContactSign parse_contact_sign(std::string_view text) {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "positive") return ContactSign::Positive;
    if (s == "negative") return ContactSign::Negative;
    if (s == "mixed") return ContactSign::Mixed;
    throw Error("unknown contact sign '" + std::string(text) + "'");
}

namespace {

struct Axis {
    double lo, step;
    std::size_t count;
    double at(double k) const { return lo + k * step; }
};

std::vector<Axis> grid_axes(const Chart& chart, std::size_t per_axis) {
    std::vector<Axis> axes;
    for (std::size_t i = 0; i < chart.dim(); ++i) {
        auto [lo, hi] = chart.ranges[i];
        std::size_t n = std::max<std::size_t>(per_axis, 2);
        double step = chart.periodic[i] ? (hi - lo) / n : (hi - lo) / (n - 1);
        axes.push_back({lo, step, n});
    }
    return axes;
}

bool inside(const Chart& chart, std::span<const double> x) {
    for (std::size_t i = 0; i < chart.dim(); ++i) {
        if (chart.periodic[i]) continue;
        if (x[i] < chart.ranges[i].first || x[i] > chart.ranges[i].second) return false;
    }
    return !chart.excluded(x);
}

}  // namespace

ContactReport contact_sign(const OneForm& alpha, std::size_t per_axis, double tolerance) {
    Expr c = contact_coefficient(alpha);
    const Chart& chart = alpha.chart;
    auto axes = grid_axes(chart, per_axis);

    ContactReport rep;
    double min_pos = std::numeric_limits<double>::infinity();
    double min_neg = std::numeric_limits<double>::infinity();
    std::size_t n_pos = 0, n_neg = 0, n_zero = 0;
    std::vector<std::vector<double>> zero_pts, pos_pts, neg_pts;

    auto record = [&](const std::vector<double>& x, double v) {
        ++rep.samples;
        if (!std::isfinite(v) || std::abs(v) <= tolerance) {
            ++n_zero;
            if (zero_pts.size() < 8) zero_pts.push_back(x);
        } else if (v > 0) {
            ++n_pos;
            min_pos = std::min(min_pos, v);
            if (pos_pts.size() < 8) pos_pts.push_back(x);
        } else {
            ++n_neg;
            min_neg = std::min(min_neg, -v);
            if (neg_pts.size() < 8) neg_pts.push_back(x);
        }
    };

    std::vector<double> x(3), y(3);
    for (std::size_t i = 0; i < axes[0].count; ++i)
        for (std::size_t j = 0; j < axes[1].count; ++j)
            for (std::size_t k = 0; k < axes[2].count; ++k) {
                x = {axes[0].at(double(i)), axes[1].at(double(j)), axes[2].at(double(k))};
                if (chart.excluded(x)) continue;
                double v = c.eval(x);
                record(x, v);
                if (std::isfinite(v) && std::abs(v) >= 10 * tolerance) continue;
                // Half-step stencil around a near-degenerate sample.
                for (int di = -1; di <= 1; ++di)
                    for (int dj = -1; dj <= 1; ++dj)
                        for (int dk = -1; dk <= 1; ++dk) {
                            if (di == 0 && dj == 0 && dk == 0) continue;
                            y = {axes[0].at(i + 0.5 * di), axes[1].at(j + 0.5 * dj), axes[2].at(k + 0.5 * dk)};
                            if (!inside(chart, y)) continue;
                            record(y, c.eval(y));
                        }
            }

    if (n_zero == 0 && n_neg == 0 && n_pos > 0) {
        rep.sign = ContactSign::Positive;
        rep.min_abs = min_pos;
    } else if (n_zero == 0 && n_pos == 0 && n_neg > 0) {
        rep.sign = ContactSign::Negative;
        rep.min_abs = min_neg;
    } else {
        rep.sign = ContactSign::Mixed;
        rep.min_abs = n_zero > 0 ? 0.0 : std::min(min_pos, min_neg);
        rep.witnesses = zero_pts;
        // Otherwise one witness of each sign.
        if (rep.witnesses.empty()) {
            if (!pos_pts.empty()) rep.witnesses.push_back(pos_pts.front());
            if (!neg_pts.empty()) rep.witnesses.push_back(neg_pts.front());
        }
    }
    return rep;
}

OneForm pullback(const Chart& source, std::span<const Expr> map, const OneForm& alpha) {
    if (map.size() != alpha.coeffs.size())
        throw DimensionMismatch("map has " + std::to_string(map.size()) + " components, form has " +
                                std::to_string(alpha.coeffs.size()));
    for (const auto& m : map)
        if (m.arity() > source.dim()) throw DimensionMismatch("map uses coordinates outside the source chart");
    std::vector<Expr> composed;
    for (const auto& a : alpha.coeffs) composed.push_back(simplify(substitute(a, map)));
    OneForm out{source, {}};
    for (std::size_t j = 0; j < source.dim(); ++j) {
        Expr acc = Expr::constant(0);
        for (std::size_t i = 0; i < map.size(); ++i)
            acc = simplify_add(acc, simplify_mul(composed[i], derivative(map[i], j)));
        out.coeffs.push_back(acc);
    }
    return out;
}

std::vector<Expr> compose_maps(std::span<const Expr> f, std::span<const Expr> g) {
    std::vector<Expr> out;
    for (const auto& fi : f) out.push_back(simplify(substitute(fi, g)));
    return out;
}

std::vector<std::vector<double>> sample_points(const Chart& chart, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uniform_real_distribution<double>> dist;
    for (auto [lo, hi] : chart.ranges) dist.emplace_back(lo, hi);
    std::vector<std::vector<double>> out;
    std::size_t attempts = 0;
    while (out.size() < count) {
        if (++attempts > 1000 * (count + 1)) throw InvalidChart("exclusions cover the whole chart");
        std::vector<double> x(chart.dim());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = dist[i](rng);
        if (!chart.excluded(x)) out.push_back(std::move(x));
    }
    return out;
}

double max_difference(const Expr& a, const Expr& b, std::span<const std::vector<double>> points) {
    double m = 0;
    for (const auto& x : points) {
        double d = std::abs(a.eval(x) - b.eval(x));
        if (!std::isfinite(d)) return std::numeric_limits<double>::infinity();
        m = std::max(m, d);
    }
    return m;
}

bool numerically_equal(const Expr& a, const Expr& b, const Chart& chart, std::size_t count, double tol,
                       std::uint64_t seed) {
    auto pts = sample_points(chart, count, seed);
    return max_difference(a, b, pts) <= tol;
}

bool numerically_equal(const OneForm& a, const OneForm& b, std::size_t count, double tol, std::uint64_t seed) {
    if (a.coeffs.size() != b.coeffs.size()) return false;
    auto pts = sample_points(a.chart, count, seed);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        if (max_difference(a.coeffs[i], b.coeffs[i], pts) > tol) return false;
    return true;
}

KernelMatch kernel_match(const OneForm& a, const OneForm& b, std::span<const std::vector<double>> points) {
    if (a.coeffs.size() != b.coeffs.size()) throw DimensionMismatch("forms live on different charts");
    KernelMatch km;
    km.min_ratio = std::numeric_limits<double>::infinity();
    std::size_t n = a.coeffs.size();
    std::vector<double> va(n), vb(n);
    for (const auto& x : points) {
        double na = 0, nb = 0, dot = 0;
        for (std::size_t i = 0; i < n; ++i) {
            va[i] = a.coeffs[i].eval(x);
            vb[i] = b.coeffs[i].eval(x);
            na += va[i] * va[i];
            nb += vb[i] * vb[i];
            dot += va[i] * vb[i];
        }
        na = std::sqrt(na);
        nb = std::sqrt(nb);
        if (na == 0 || nb == 0) {
            km.max_direction_error = std::numeric_limits<double>::infinity();
            km.min_ratio = 0;
            continue;
        }
        double err = 0;
        for (std::size_t i = 0; i < n; ++i) err += std::pow(va[i] / na - vb[i] / nb, 2);
        km.max_direction_error = std::max(km.max_direction_error, std::sqrt(err));
        km.min_ratio = std::min(km.min_ratio, dot / (na * na));
    }
    return km;
}

SlopeReport characteristic_slope_on_torus(const OneForm& alpha, double r, std::string_view r_name,
                                          std::string_view theta_name, std::string_view z_name, std::size_t samples) {
    const Chart& c = alpha.chart;
    if (c.dim() != 3) throw DimensionMismatch("torus slopes need a 3-dimensional chart");
    auto ir = c.index_of(r_name), it = c.index_of(theta_name), iz = c.index_of(z_name);
    if (!ir || !it || !iz) throw DimensionMismatch("chart lacks the cylindrical coordinates");
    const Expr& a_theta = alpha.coeffs[*it];
    const Expr& a_z = alpha.coeffs[*iz];
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0;
    std::size_t n = std::max<std::size_t>(samples, 1);
    std::vector<double> x(3);
    x[*ir] = r;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            x[*it] = c.ranges[*it].first + (c.ranges[*it].second - c.ranges[*it].first) * double(i) / double(n);
            x[*iz] = c.ranges[*iz].first + (c.ranges[*iz].second - c.ranges[*iz].first) * double(j) / double(n);
            double az = a_z.eval(x);
            if (!(std::abs(az) > 1e-12)) throw DegenerateKernel("the kernel contains the z direction at r = " + std::to_string(r));
            double s = -a_theta.eval(x) / az;
            lo = std::min(lo, s);
            hi = std::max(hi, s);
            sum += s;
        }
    return {sum / double(n * n), hi - lo};
}

double slope_formula(double r) {
    double r2 = r * r;
    return r2 / (r2 * r2 - 1.0);
}

double r_of_slope(long p, long q) {
    if (q <= 0) throw SlopeOutOfRange("denominator must be positive");
    if (p == 0) throw SlopeOutOfRange("slope 0 is only reached at r = 0");
    if (std::gcd(p, q) != 1) throw SlopeOutOfRange("p and q must be coprime");
    double target = double(p) / double(q);
    // Negative slopes come from r in (0, 1), where the formula decreases from 0
    // to -inf; positive slopes from r > 1, where it decreases from +inf to 0.
    double lo, hi;
    if (target < 0) {
        lo = 0.0;
        hi = 1.0;
    } else {
        lo = 1.0;
        hi = 2.0;
        while (slope_formula(hi) > target) hi *= 2.0;
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (slope_formula(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::string to_text(const OneForm& alpha) {
    std::string out;
    for (std::size_t i = 0; i < alpha.coeffs.size(); ++i) {
        if (alpha.coeffs[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += to_text(alpha.coeffs[i], alpha.chart.names) + "*d" + alpha.chart.names[i];
    }
    return out.empty() ? "0*d" + alpha.chart.names.at(0) : out;
}

}  // namespace fibrecontact::formcalc
