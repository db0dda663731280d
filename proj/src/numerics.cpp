#include "paretogeo/numerics.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <queue>
#include <utility>

namespace paretogeo::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxEvaluations = 4'000'000;

// Kronrod abscissae (descending, centre last) and weights; Gauss weights for
// the odd-indexed Kronrod nodes plus the centre.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    double abs_value;
    int depth;

    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod_15(const ScalarFunction& f, double a, double b, int depth,
                       std::size_t& evaluations) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<double, 7> f_lo{};
    std::array<double, 7> f_hi{};
    const double f_centre = f(centre);
    double kronrod = kWgk[7] * f_centre;
    double gauss = kWg[3] * f_centre;
    double abs_sum = std::abs(kronrod);
    bool finite = std::isfinite(f_centre);

    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f_lo[j] = f(centre - dx);
        f_hi[j] = f(centre + dx);
        finite = finite && std::isfinite(f_lo[j]) && std::isfinite(f_hi[j]);
        kronrod += kWgk[j] * (f_lo[j] + f_hi[j]);
        abs_sum += kWgk[j] * (std::abs(f_lo[j]) + std::abs(f_hi[j]));
        if (j % 2 == 1) gauss += kWg[j / 2] * (f_lo[j] + f_hi[j]);
    }
    evaluations += 15;
    if (!finite) {
        throw QuadratureError("quad_adaptive: integrand is not finite on the panel",
                              QuadratureResult{std::numeric_limits<double>::quiet_NaN(),
                                               std::numeric_limits<double>::infinity(),
                                               evaluations});
    }

    const double mean = 0.5 * kronrod;
    double asc = kWgk[7] * std::abs(f_centre - mean);
    for (std::size_t j = 0; j < 7; ++j) {
        asc += kWgk[j] * (std::abs(f_lo[j] - mean) + std::abs(f_hi[j] - mean));
    }

    const double width = std::abs(half);
    const double value = kronrod * half;
    asc *= width;
    abs_sum *= width;

    // QUADPACK-style scaling of |K15 - G7|.
    double error = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && error != 0.0) {
        error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
    }
    if (abs_sum > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        error = std::max(50.0 * kEps * abs_sum, error);
    }
    return Panel{a, b, value, error, abs_sum, depth};
}

}  // namespace

QuadratureResult quad_adaptive(const ScalarFunction& f, double a, double b, double tol) {
    if (!(a < b)) throw std::invalid_argument("quad_adaptive: requires a < b");
    if (!(tol > 0.0)) throw std::invalid_argument("quad_adaptive: tolerance must be > 0");

    std::size_t evaluations = 0;
    std::priority_queue<Panel> open;
    std::vector<Panel> exhausted;  // hit the depth cap

    open.push(gauss_kronrod_15(f, a, b, 0, evaluations));

    auto totals = [&] {
        QuadratureResult r{0.0, 0.0, evaluations};
        double abs_total = 0.0;
        auto add = [&](const Panel& p) {
            r.value += p.value;
            r.abs_error_estimate += p.error;
            abs_total += p.abs_value;
        };
        auto copy = open;
        while (!copy.empty()) {
            add(copy.top());
            copy.pop();
        }
        for (const Panel& p : exhausted) add(p);
        return std::pair{r, abs_total};
    };

    double value = open.top().value;
    double error = open.top().error;
    double abs_total = open.top().abs_value;
    double exhausted_error = 0.0;
    std::size_t splits = 0;

    while (true) {
        const double target = std::max(tol, 100.0 * kEps * abs_total);
        if (error <= target) break;
        // Capped panels can no longer improve, so their error alone decides.
        if (open.empty() || evaluations >= kMaxEvaluations || exhausted_error > target) {
            auto [best, unused] = totals();
            throw QuadratureError("quad_adaptive: tolerance not met", best);
        }
        const Panel worst = open.top();
        open.pop();
        if (worst.depth >= kMaxQuadratureDepth) {
            exhausted.push_back(worst);
            exhausted_error += worst.error;
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = gauss_kronrod_15(f, worst.a, mid, worst.depth + 1, evaluations);
        const Panel right = gauss_kronrod_15(f, mid, worst.b, worst.depth + 1, evaluations);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_total += left.abs_value + right.abs_value - worst.abs_value;
        open.push(left);
        open.push(right);

        // Running sums drift; resum occasionally.
        if (++splits % 200 == 0) {
            auto [r, at] = totals();
            value = r.value;
            error = r.abs_error_estimate;
            abs_total = at;
        }
    }

    auto [result, unused] = totals();
    result.evaluations = evaluations;
    return result;
}

QuadratureResult quad_semi_infinite(const ScalarFunction& f, double a, double tol) {
    const ScalarFunction mapped = [&f, a](double t) {
        const double s = 1.0 - t;
        const double value = f(a + t / s);
        if (value == 0.0) return 0.0;
        return value / (s * s);
    };
    return quad_adaptive(mapped, 0.0, 1.0, tol);
}

double bisect_root(const ScalarFunction& f, double lo, double hi, double tol) {
    if (lo > hi) std::swap(lo, hi);
    double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if (std::signbit(f_lo) == std::signbit(f_hi) || std::isnan(f_lo) || std::isnan(f_hi)) {
        throw BracketError("bisect_root: bracket invalid (no sign change)");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if (std::signbit(f_mid) == std::signbit(f_lo)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error("log_gamma: argument must be positive and finite");
    }
    if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);

    static constexpr std::array<double, 9> kLanczos = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    constexpr double g = 7.0;

    const double z = x - 1.0;
    double series = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) {
        series += kLanczos[i] / (z + static_cast<double>(i));
    }
    const double t = z + g + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
           std::log(series);
}

double gamma_cdf(double x, double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0)) {
        throw std::invalid_argument("gamma_cdf: shape and rate must be > 0");
    }
    if (!(x > 0.0)) return 0.0;
    if (std::isinf(x)) return 1.0;

    const double z = rate * x;
    const double log_prefactor = -z + shape * std::log(z) - log_gamma(shape);
    constexpr int kMaxIter = 100000;

    if (z < shape + 1.0) {
        // Series for P.
        double term = 1.0 / shape;
        double sum = term;
        double ap = shape;
        for (int i = 0; i < kMaxIter; ++i) {
            ap += 1.0;
            term *= z / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * kEps) break;
        }
        return std::clamp(sum * std::exp(log_prefactor), 0.0, 1.0);
    }

    // Modified Lentz continued fraction for Q.
    constexpr double tiny = 1e-300;
    double b = z + 1.0 - shape;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - shape);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return std::clamp(1.0 - std::exp(log_prefactor) * h, 0.0, 1.0);
}

double gamma_pdf(double x, double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0)) {
        throw std::invalid_argument("gamma_pdf: shape and rate must be > 0");
    }
    if (x < 0.0) return 0.0;
    if (x == 0.0) {
        if (shape == 1.0) return rate;
        return shape < 1.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return std::exp(shape * std::log(rate) + (shape - 1.0) * std::log(x) - rate * x -
                    log_gamma(shape));
}

Matrix2 finite_diff_jacobian(const std::function<Vec2(const Vec2&)>& f, const Vec2& at,
                             double h) {
    Matrix2 jac{};
    for (std::size_t j = 0; j < 2; ++j) {
        const double step = h * std::max(std::abs(at[j]), 1.0);
        Vec2 plus = at;
        Vec2 minus = at;
        plus[j] += step;
        minus[j] -= step;
        const Vec2 fp = f(plus);
        const Vec2 fm = f(minus);
        for (std::size_t i = 0; i < 2; ++i) jac[i][j] = (fp[i] - fm[i]) / (2.0 * step);
    }
    return jac;
}

Vec2 finite_diff_gradient(const std::function<double(const Vec2&)>& f, const Vec2& at,
                          double h) {
    Vec2 grad{};
    for (std::size_t j = 0; j < 2; ++j) {
        const double step = h * std::max(std::abs(at[j]), 1.0);
        Vec2 plus = at;
        Vec2 minus = at;
        plus[j] += step;
        minus[j] -= step;
        grad[j] = (f(plus) - f(minus)) / (2.0 * step);
    }
    return grad;
}

}  // namespace paretogeo::numerics
