#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <unsupported/Eigen/Polynomials>

#include "fractile/error.hpp"
#include "fractile/tube.hpp"
#include "lattice.hpp"

namespace fractile {

namespace {

using cplx = std::complex<double>;

constexpr double kResidualTol = 1e-10;

cplx moran(const std::vector<double>& r, cplx s) {
    cplx v = -1.0;
    for (double x : r) v += std::pow(x, s);
    return v;
}

cplx moran_prime(const std::vector<double>& r, cplx s) {
    cplx v = 0.0;
    for (double x : r) v += std::pow(x, s) * std::log(x);
    return v;
}

cplx newton(const std::vector<double>& r, cplx s, int iters = 60) {
    for (int i = 0; i < iters; ++i) {
        const cplx fp = moran_prime(r, s);
        if (std::abs(fp) == 0.0) break;
        const cplx step = moran(r, s) / fp;
        s -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(s))) break;
    }
    return s;
}

}  // namespace

namespace detail {

std::optional<LatticeData> lattice_data(const IfsSystem& s) {
    const std::vector<double> r = s.ratios();
    std::vector<double> L;
    for (double x : r) L.push_back(-std::log(x));
    const double lmin = *std::min_element(L.begin(), L.end());
    for (int p = 1; p <= 64; ++p) {
        const double base = lmin / p;
        std::vector<int> k;
        bool ok = true;
        for (double l : L) {
            const double q = l / base;
            const double qi = std::round(q);
            if (std::abs(q - qi) > 1e-9 * std::max(1.0, qi) || qi > 4096) {
                ok = false;
                break;
            }
            k.push_back(static_cast<int>(qi));
        }
        if (!ok) continue;
        int g = 0;
        for (int x : k) g = std::gcd(g, x);
        for (int& x : k) x /= g;
        LatticeData out;
        out.exponents = k;
        out.base_ratio = std::exp(-base * g);
        const int deg = *std::max_element(k.begin(), k.end());
        Eigen::VectorXd coeff = Eigen::VectorXd::Zero(deg + 1);
        coeff[0] = -1.0;
        for (int x : k) coeff[x] += 1.0;
        auto poly = [&](cplx z) {
            cplx v = 0.0;
            for (int i = deg; i >= 0; --i) v = v * z + coeff[i];
            return v;
        };
        auto dpoly = [&](cplx z) {
            cplx v = 0.0;
            for (int i = deg; i >= 1; --i) v = v * z + coeff[i] * static_cast<double>(i);
            return v;
        };
        std::vector<cplx> roots;
        if (deg == 1) {
            roots.push_back(-coeff[0] / coeff[1]);
        } else {
            Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
            solver.compute(coeff);
            for (Eigen::Index i = 0; i < solver.roots().size(); ++i) roots.push_back(solver.roots()[i]);
        }
        for (auto& z : roots)
            for (int it = 0; it < 50; ++it) {
                const cplx dp = dpoly(z);
                if (std::abs(dp) < 1e-300) break;
                const cplx step = poly(z) / dp;
                z -= step;
                if (std::abs(step) <= 1e-16 * std::abs(z)) break;
            }
        // Merge coincident roots into one entry with multiplicity.
        for (size_t i = 0; i < roots.size(); ++i) {
            bool dup = false;
            for (size_t j = 0; j < out.roots.size(); ++j)
                if (std::abs(roots[i] - out.roots[j]) <= 1e-6 * std::max(1.0, std::abs(out.roots[j]))) {
                    ++out.multiplicity[j];
                    dup = true;
                    break;
                }
            if (!dup) {
                out.roots.push_back(roots[i]);
                out.multiplicity.push_back(1);
            }
        }
        return out;
    }
    return std::nullopt;
}

}  // namespace detail

namespace {

// Winding of f along a -> b, refined until consecutive argument steps are small.
struct ArgWalker {
    const std::vector<double>& r;
    int evaluations = 0;

    double segment(cplx a, cplx b, cplx fa, cplx fb, int depth) {
        const double step = std::arg(fb / fa);
        if (std::abs(step) < 0.25 && depth >= 3) return step;
        if (depth > 48) throw Inconclusive("argument principle did not resolve a contour segment");
        const cplx m = 0.5 * (a + b);
        const cplx fm = value(m);
        return segment(a, m, fa, fm, depth + 1) + segment(m, b, fm, fb, depth + 1);
    }

    cplx value(cplx s) {
        ++evaluations;
        const cplx v = moran(r, s);
        if (std::abs(v) < 1e-12) throw OutOfRange("zero on contour");
        return v;
    }

    // Number of zeros inside [x0,x1] x [y0,y1].
    int count(double x0, double x1, double y0, double y1) {
        const cplx c[4] = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
        cplx f[4];
        for (int i = 0; i < 4; ++i) f[i] = value(c[i]);
        double total = 0.0;
        for (int i = 0; i < 4; ++i) total += segment(c[i], c[(i + 1) % 4], f[i], f[(i + 1) % 4], 0);
        return static_cast<int>(std::lround(total / (2.0 * M_PI)));
    }
};

struct Finder {
    ArgWalker walk;
    std::vector<ComplexPole> found;

    int safe_count(double& x0, double& x1, double& y0, double& y1) {
        for (int attempt = 0; attempt < 8; ++attempt) {
            try {
                return walk.count(x0, x1, y0, y1);
            } catch (const OutOfRange&) {
                const double h = 1e-7 * (attempt + 1) * std::max(1.0, x1 - x0);
                x0 -= h;
                x1 += h;
                y0 -= h;
                y1 += h;
            }
        }
        throw Inconclusive("zeros keep landing on the counting contour");
    }

    void search(double x0, double x1, double y0, double y1, int n) {
        if (n <= 0) return;
        const double w = x1 - x0, h = y1 - y0;
        if (n == 1 || std::max(w, h) < 1e-8) {
            for (cplx start : {cplx{0.5 * (x0 + x1), 0.5 * (y0 + y1)}, cplx{x0 + 0.25 * w, y0 + 0.25 * h},
                               cplx{x0 + 0.75 * w, y0 + 0.75 * h}}) {
                const cplx s = newton(walk.r, start);
                const double pad = 1e-9 * std::max(1.0, std::max(w, h));
                if (s.real() < x0 - pad || s.real() > x1 + pad || s.imag() < y0 - pad || s.imag() > y1 + pad) continue;
                if (std::abs(moran(walk.r, s)) > kResidualTol) continue;
                found.push_back({s, std::abs(moran(walk.r, s)), n});
                return;
            }
            if (std::max(w, h) < 1e-8) throw Inconclusive("Newton polishing failed inside a counted cell");
        }
        // Split the longer side; shift the cut if a zero sits on it.
        if (w >= h) {
            double xm = x0 + 0.5 * w;
            for (int attempt = 0;; ++attempt) {
                try {
                    double a0 = x0, a1 = xm, b0 = y0, b1 = y1;
                    const int left = walk.count(a0, a1, b0, b1);
                    search(x0, xm, y0, y1, left);
                    search(xm, x1, y0, y1, n - left);
                    return;
                } catch (const OutOfRange&) {
                    if (attempt > 8) throw Inconclusive("zeros keep landing on the split line");
                    xm += 1e-3 * w * (attempt + 1);
                }
            }
        } else {
            double ym = y0 + 0.5 * h;
            for (int attempt = 0;; ++attempt) {
                try {
                    double a0 = x0, a1 = x1, b0 = y0, b1 = ym;
                    const int low = walk.count(a0, a1, b0, b1);
                    search(x0, x1, y0, ym, low);
                    search(x0, x1, ym, y1, n - low);
                    return;
                } catch (const OutOfRange&) {
                    if (attempt > 8) throw Inconclusive("zeros keep landing on the split line");
                    ym += 1e-3 * h * (attempt + 1);
                }
            }
        }
    }
};

}  // namespace

ComplexDimensionSet complex_dimensions(const IfsSystem& s, double im_lo, double im_hi) {
    if (!s.all_similitudes()) throw Unsupported("complex dimensions need a similitude system");
    if (!(im_lo <= im_hi)) throw InvalidArgument("empty imaginary window");
    const std::vector<double> r = s.ratios();
    const double D = similarity_dimension(s).value;
    ComplexDimensionSet out;
    out.im_lo = im_lo;
    out.im_hi = im_hi;

    if (const auto lat = detail::lattice_data(s)) {
        out.lattice = true;
        out.base_ratio = lat->base_ratio;
        out.exponents = lat->exponents;
        const double lr = std::log(lat->base_ratio);
        double re_lo = D, re_hi = D;
        for (size_t i = 0; i < lat->roots.size(); ++i) {
            const cplx z = lat->roots[i];
            const double a = std::arg(z);
            // Im s = (arg z + 2 pi m) / ln r with ln r < 0.
            const long m_lo = static_cast<long>(std::ceil((im_hi * lr - a) / (2.0 * M_PI) - 1e-12));
            const long m_hi = static_cast<long>(std::floor((im_lo * lr - a) / (2.0 * M_PI) + 1e-12));
            for (long m = m_lo; m <= m_hi; ++m) {
                cplx w = cplx(std::log(std::abs(z)), a + 2.0 * M_PI * static_cast<double>(m)) / lr;
                if (lat->multiplicity[i] == 1) w = newton(r, w, 8);
                if (w.imag() < im_lo - 1e-9 || w.imag() > im_hi + 1e-9) continue;
                if (std::abs(w.imag()) < 1e-13) w.imag(0.0);
                out.poles.push_back({w, std::abs(moran(r, w)), lat->multiplicity[i]});
                re_lo = std::min(re_lo, w.real());
                re_hi = std::max(re_hi, w.real());
            }
        }
        out.re_lo = re_lo;
        out.re_hi = re_hi;
    } else {
        // Zeros lie in sigma_min <= Re s <= D, where the smallest-ratio terms stop dominating.
        const double rmin = *std::min_element(r.begin(), r.end());
        auto dominated = [&](double sigma) {
            double lead = 0.0, rest = 1.0;
            for (double x : r) (x == rmin ? lead : rest) += std::pow(x, sigma);
            return lead > rest;
        };
        double lo = D - 1.0;
        while (!dominated(lo)) lo = D - 2.0 * (D - lo);
        double hi = D;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (dominated(mid) ? lo : hi) = mid;
        }
        out.re_lo = lo - 0.25;
        out.re_hi = D + 0.25;
        Finder f{ArgWalker{r}, {}};
        const double margin = 1e-3;
        double y = im_lo - margin;
        const double ytop = im_hi + margin;
        while (y < ytop) {
            double x0 = out.re_lo, x1 = out.re_hi, y0 = y, y1 = std::min(ytop, y + 1.0);
            const int n = f.safe_count(x0, x1, y0, y1);
            const size_t before = f.found.size();
            f.search(x0, x1, y0, y1, n);
            int got = 0;
            for (size_t i = before; i < f.found.size(); ++i) got += f.found[i].multiplicity;
            if (got != n) throw Inconclusive("argument-principle count and Newton hits disagree");
            y = y1;
        }
        for (auto& p : f.found) {
            if (std::abs(p.s.imag()) < 1e-13) p.s.imag(0.0);
            if (p.s.imag() >= im_lo - 1e-12 && p.s.imag() <= im_hi + 1e-12) out.poles.push_back(p);
        }
    }
    for (const auto& p : out.poles)
        if (p.residual > kResidualTol) throw Inconclusive("pole residual above 1e-10");
    std::sort(out.poles.begin(), out.poles.end(), [](const ComplexPole& a, const ComplexPole& b) {
        if (a.s.imag() != b.s.imag()) return a.s.imag() < b.s.imag();
        return a.s.real() > b.s.real();
    });
    return out;
}

}  // namespace fractile
