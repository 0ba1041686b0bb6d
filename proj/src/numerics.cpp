#include "wavelab/numerics.hpp"

#include <algorithm>
#include <numbers>

namespace wavelab {

namespace {

double simpson_raw(const double* f, std::size_t n, std::size_t stride, double h) {
    // n counts the samples reachable with the given stride.
    if (n < 2) return 0.0;
    auto at = [&](std::size_t i) { return f[i * stride]; };
    if (n == 2) return 0.5 * h * (at(0) + at(1));
    if (n == 4) return 3.0 * h / 8.0 * (at(0) + 3.0 * at(1) + 3.0 * at(2) + at(3));
    std::size_t intervals = n - 1;
    std::size_t simpson_end = (intervals % 2 == 0) ? n - 1 : n - 4;
    double s = at(0) + at(simpson_end);
    for (std::size_t i = 1; i < simpson_end; ++i) s += (i % 2 ? 4.0 : 2.0) * at(i);
    s *= h / 3.0;
    if (simpson_end != n - 1) {
        const std::size_t k = simpson_end;
        s += 3.0 * h / 8.0 * (at(k) + 3.0 * at(k + 1) + 3.0 * at(k + 2) + at(k + 3));
    }
    return s;
}

}  // namespace

Quad simpson(const double* f, std::size_t n, double h) {
    Quad q;
    q.value = simpson_raw(f, n, 1, h);
    if (n >= 9 && (n - 1) % 2 == 0) {
        const double coarse = simpson_raw(f, (n - 1) / 2 + 1, 2, 2.0 * h);
        q.error = std::fabs(q.value - coarse) / 15.0;
    } else if (n >= 9) {
        const std::size_t m = n - 1;  // drop last sample to pair up
        const double fine = simpson_raw(f, m, 1, h);
        const double coarse = simpson_raw(f, (m - 1) / 2 + 1, 2, 2.0 * h);
        q.error = std::fabs(fine - coarse) / 15.0;
    }
    return q;
}

Quad simpson(const std::vector<double>& f, double h) { return simpson(f.data(), f.size(), h); }

Quad trapezoid(const std::vector<double>& f, double h) {
    Quad q;
    const std::size_t n = f.size();
    if (n < 2) return q;
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < n; ++i) s += f[i];
    q.value = s * h;
    if (n >= 5 && (n - 1) % 2 == 0) {
        double c = 0.5 * (f.front() + f.back());
        for (std::size_t i = 2; i + 1 < n; i += 2) c += f[i];
        q.error = std::fabs(q.value - 2.0 * h * c) / 3.0;
    }
    return q;
}

namespace {

double cubic_integral(const double* f, std::size_t n, long s0, double a, double b, double h) {
    // Integrate the cubic through nodes s0..s0+3 over [a, b] (positions in length units).
    std::vector<double> gx, gw;
    gauss_legendre(2, gx, gw);
    double sum = 0.0;
    for (int q = 0; q < 2; ++q) {
        const double x = 0.5 * (a + b) + 0.5 * (b - a) * gx[q];
        const double xi = x / h - static_cast<double>(s0);
        double val = 0.0;
        for (int i = 0; i < 4; ++i) {
            double li = 1.0;
            for (int k = 0; k < 4; ++k)
                if (k != i) li *= (xi - k) / static_cast<double>(i - k);
            val += li * f[s0 + i];
        }
        sum += 0.5 * (b - a) * gw[q] * val;
    }
    (void)n;
    return sum;
}

}  // namespace

Quad integrate_from(const std::vector<double>& f, double h, double a, bool one_sided) {
    const std::size_t n = f.size();
    if (n < 2) return {};
    if (a <= 0.0) return simpson(f, h);
    const double xa = a / h;
    long j0 = static_cast<long>(std::ceil(xa - 1e-9));
    if (j0 >= static_cast<long>(n)) return {};
    Quad q = simpson(f.data() + j0, n - static_cast<std::size_t>(j0), h);
    const double gap = static_cast<double>(j0) * h - a;
    if (gap > 1e-12 * h && n >= 4) {
        long s0 = one_sided ? j0 : j0 - 2;
        s0 = std::clamp(s0, 0L, static_cast<long>(n) - 4);
        q.value += cubic_integral(f.data(), n, s0, a, static_cast<double>(j0) * h, h);
    }
    return q;
}

double trapezoid_from(const std::vector<double>& f, double h, double a) {
    const std::size_t n = f.size();
    if (n < 2) return 0.0;
    a = std::max(a, 0.0);
    const double xa = a / h;
    long j0 = static_cast<long>(std::ceil(xa - 1e-9));
    if (j0 >= static_cast<long>(n)) return 0.0;
    double s = 0.0;
    for (std::size_t j = static_cast<std::size_t>(j0); j + 1 < n; ++j) s += 0.5 * h * (f[j] + f[j + 1]);
    const double gap = static_cast<double>(j0) * h - a;
    if (gap > 1e-12 * h && j0 >= 1) {
        const double w = gap / h;  // fraction of the cell [j0-1, j0]
        const double fa = f[j0] + (f[j0 - 1] - f[j0]) * w;
        s += 0.5 * gap * (fa + f[j0]);
    }
    return s;
}

double product_trapezoid(const std::vector<double>& f, double h, double p) {
    const std::size_t n = f.size();
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double a = static_cast<double>(j) * h;
        const double b = a + h;
        const double m0 = (std::pow(b, p + 1.0) - (a > 0.0 ? std::pow(a, p + 1.0) : 0.0)) / (p + 1.0);
        const double m1 = (std::pow(b, p + 2.0) - (a > 0.0 ? std::pow(a, p + 2.0) : 0.0)) / (p + 2.0);
        // f(r) = f_j (b - r)/h + f_{j+1} (r - a)/h
        s += (f[j] * (b * m0 - m1) + f[j + 1] * (m1 - a * m0)) / h;
    }
    return s;
}

std::vector<double> cumulative_integral(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    std::vector<double> c(n, 0.0);
    if (n < 2) return c;
    if (n < 4) {
        for (std::size_t k = 1; k < n; ++k) c[k] = c[k - 1] + 0.5 * h * (f[k - 1] + f[k]);
        return c;
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double inc;
        if (k == 0) {
            inc = h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
        } else if (k + 2 >= n) {
            inc = h / 24.0 * (f[k - 2] - 5.0 * f[k - 1] + 19.0 * f[k] + 9.0 * f[k + 1]);
        } else {
            inc = h / 24.0 * (-f[k - 1] + 13.0 * f[k] + 13.0 * f[k + 1] - f[k + 2]);
        }
        c[k + 1] = c[k] + inc;
    }
    return c;
}

std::vector<double> derivative(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    std::vector<double> d(n, 0.0);
    if (n < 5) {
        for (std::size_t j = 0; j < n; ++j) {
            if (n < 2) break;
            if (j == 0) d[j] = (f[1] - f[0]) / h;
            else if (j == n - 1) d[j] = (f[j] - f[j - 1]) / h;
            else d[j] = (f[j + 1] - f[j - 1]) / (2.0 * h);
        }
        return d;
    }
    for (std::size_t j = 2; j + 2 < n; ++j)
        d[j] = (-f[j + 2] + 8.0 * f[j + 1] - 8.0 * f[j - 1] + f[j - 2]) / (12.0 * h);
    d[0] = (-11.0 * f[0] + 18.0 * f[1] - 9.0 * f[2] + 2.0 * f[3]) / (6.0 * h);
    d[1] = (-2.0 * f[0] - 3.0 * f[1] + 6.0 * f[2] - f[3]) / (6.0 * h);
    const std::size_t e = n - 1;
    d[e] = (11.0 * f[e] - 18.0 * f[e - 1] + 9.0 * f[e - 2] - 2.0 * f[e - 3]) / (6.0 * h);
    d[e - 1] = (2.0 * f[e] + 3.0 * f[e - 1] - 6.0 * f[e - 2] + f[e - 3]) / (6.0 * h);
    return d;
}

std::vector<double> derivative_high(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    std::vector<double> d = derivative(f, h);
    static const double c8[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    static const double c6[3] = {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
    for (std::size_t j = 0; j < n; ++j) {
        if (j >= 4 && j + 4 < n) {
            double s = 0.0;
            for (int k = 1; k <= 4; ++k) s += c8[k - 1] * (f[j + k] - f[j - k]);
            d[j] = s / h;
        } else if (j >= 3 && j + 3 < n) {
            double s = 0.0;
            for (int k = 1; k <= 3; ++k) s += c6[k - 1] * (f[j + k] - f[j - k]);
            d[j] = s / h;
        }
    }
    return d;
}

double interp_cubic(const double* f, std::size_t n, double x) {
    if (n == 0) return 0.0;
    if (n == 1) return f[0];
    if (x <= 0.0) return f[0];
    const double last = static_cast<double>(n - 1);
    if (x >= last) return f[n - 1];
    const long i = static_cast<long>(std::floor(x));
    const double t = x - static_cast<double>(i);
    if (t == 0.0) return f[i];
    if (n < 4) return f[i] + t * (f[i + 1] - f[i]);
    long s0 = std::clamp(i - 1, 0L, static_cast<long>(n) - 4);
    const double xi = x - static_cast<double>(s0);
    double val = 0.0, lo = f[s0], hi = f[s0];
    for (int a = 0; a < 4; ++a) {
        double la = 1.0;
        for (int b = 0; b < 4; ++b)
            if (b != a) la *= (xi - b) / static_cast<double>(a - b);
        val += la * f[s0 + a];
        lo = std::min(lo, f[s0 + a]);
        hi = std::max(hi, f[s0 + a]);
    }
    return std::clamp(val, lo, hi);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = std::min(x.size(), y.size());
    LineFit out;
    if (n < 2) return out;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    out.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    out.intercept = my - out.slope * mx;
    return out;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::fabs(dz) < 1e-16) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
}

double smooth_step_down(double s) {
    if (s <= 0.0) return 1.0;
    if (s >= 1.0) return 0.0;
    auto psi = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
    const double a = psi(1.0 - s);
    return a / (a + psi(s));
}

}  // namespace wavelab
