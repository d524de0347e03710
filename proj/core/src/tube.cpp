#include "fractile/tube.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "fractile/compat.hpp"
#include "fractile/error.hpp"
#include "fractile/grid_volume.hpp"
#include "fractile/kernel.hpp"
#include "lattice.hpp"

namespace fractile {

namespace {

constexpr int kTableSize = 256;

}  // namespace

GeneratorProfile GeneratorProfile::build(const Region& g, const Tolerance& tol) {
    GeneratorProfile p;
    p.dim_ = g.dimension();
    p.measure_ = g.measure();
    p.region_ = g;
    p.tol_ = tol;
    if (p.dim_ == 1) {
        if (g.intervals().size() != 1) throw InvalidArgument("generator must be a single interval");
        p.rho_ = 0.5 * p.measure_;
        p.kind_ = Kind::Polynomial;
        p.kappa_ = {2.0};
        return p;
    }
    p.rho_ = fractile::inradius(g, tol);
    if (g.is_convex()) {
        // Tangential polygons erode homothetically: gamma(x) = A (1 - (1 - x/rho)^2).
        bool mono = true;
        for (double f : {0.2, 0.5, 0.8}) {
            const double x = f * p.rho_;
            const double want = p.measure_ * (1.0 - (1.0 - f) * (1.0 - f));
            if (std::abs(inner_tube_volume(g, x, tol) - want) > 1e-11 * std::max(1.0, p.measure_)) mono = false;
        }
        if (mono) {
            p.kind_ = Kind::Polynomial;
            p.kappa_ = {-p.measure_ / (p.rho_ * p.rho_), 2.0 * p.measure_ / p.rho_};
        } else {
            p.kind_ = Kind::ConvexExact;
        }
        return p;
    }
    p.kind_ = Kind::Tabulated;
    const double x0 = p.rho_ * 1e-4;
    for (int i = 0; i < kTableSize; ++i) {
        const double x = x0 * std::pow(p.rho_ / x0, static_cast<double>(i) / (kTableSize - 1));
        p.tab_x_.push_back(x);
        p.tab_y_.push_back(inner_tube_volume(g, x, tol));
    }
    for (int i = 0; i + 1 < kTableSize; i += kTableSize / 16) {
        const double x = std::sqrt(p.tab_x_[i] * p.tab_x_[i + 1]);
        p.interp_err_ = std::max(p.interp_err_, std::abs(p(x) - inner_tube_volume(g, x, tol)));
    }
    return p;
}

double GeneratorProfile::operator()(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= rho_) return measure_;
    switch (kind_) {
        case Kind::Polynomial: {
            double v = 0.0;
            for (size_t k = 0; k < kappa_.size(); ++k) v += kappa_[k] * std::pow(x, dim_ - static_cast<int>(k));
            return std::clamp(v, 0.0, measure_);
        }
        case Kind::ConvexExact:
            return inner_tube_volume(region_, x, tol_);
        case Kind::Tabulated: {
            if (x <= tab_x_.front()) return tab_y_.front() * x / tab_x_.front();
            const auto it = std::upper_bound(tab_x_.begin(), tab_x_.end(), x);
            const size_t i = static_cast<size_t>(it - tab_x_.begin());
            if (i >= tab_x_.size()) return tab_y_.back();
            const double t = (x - tab_x_[i - 1]) / (tab_x_[i] - tab_x_[i - 1]);
            return tab_y_[i - 1] + t * (tab_y_[i] - tab_y_[i - 1]);
        }
    }
    return measure_;
}

ScalingSum::ScalingSum(const Tiling& t) : tiling_(&t) {
    const IfsSystem& s = t.system();
    if (!s.all_similitudes()) throw Unsupported("scaling sum needs a similitude system; use the grid method");
    const int d = s.dimension();
    double sum = 0.0;
    for (double r : s.ratios()) {
        ratios_.push_back(r);
        sum += std::pow(r, d);
    }
    if (sum >= 1.0) throw PreconditionFailed("sum of r_j^d >= 1: the tile series diverges (trivial system)");
    total_ = 1.0 / (1.0 - sum);
    for (const auto& g : t.generators()) profiles_.push_back(GeneratorProfile::build(g.region, t.tolerance()));
}

double ScalingSum::operator()(double eps) const {
    if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
    const int d = tiling_->system().dimension();
    double v = 0.0;
    for (const auto& prof : profiles_) {
        const double cut = eps / prof.inradius();
        double explicit_sum = 0.0, partial = 0.0;
        std::function<void(double)> walk = [&](double r) {
            if (r <= cut) return;
            const double w = std::pow(r, d);
            explicit_sum += w * prof(eps / r);
            partial += w;
            for (double rj : ratios_) walk(r * rj);
        };
        walk(1.0);
        v += explicit_sum + prof.measure() * std::max(0.0, total_ - partial);
    }
    return v;
}

double scaling_sum_inner_volume(const Tiling& t, double eps) { return ScalingSum(t)(eps); }

namespace {

VolumeEstimate outer_volume(const Region& K, double eps) {
    VolumeEstimate e;
    if (K.is_convex()) {
        e.value = outer_tube_volume_convex(K, eps);
        e.method = "steiner";
        return e;
    }
    const SegmentField f = SegmentField::boundary_of(K);
    const GridVolume g = grid_tube_volume_refined({&f, eps, Side::Outside, &K}, eps / 20.0);
    e.value = g.value;
    e.error_bar = g.error_bar;
    e.method = "grid";
    return e;
}

}  // namespace

VolumeEstimate outer_decomposition_volume(const Tiling& t, double eps, const CompatReport& report) {
    if (!report.consistent || !report.compatible)
        throw PreconditionFailed("system is not compatible with this open set; the tiling cannot be used directly (" +
                                 report.summary() + ")");
    const VolumeEstimate out = outer_volume(t.base(), eps);
    VolumeEstimate e;
    e.value = scaling_sum_inner_volume(t, eps) + out.value;
    e.error_bar = out.error_bar;
    e.method = "scaling_sum+" + out.method;
    return e;
}

ResidueResult residue_tube_formula(const Tiling& t, double eps, double rel_tol) {
    const IfsSystem& s = t.system();
    if (!s.all_similitudes()) throw Unsupported("residue formula needs a similitude system");
    if (t.generators().size() != 1) throw Unsupported("residue formula needs a single generator");
    const GeneratorProfile prof = GeneratorProfile::build(t.generators()[0].region, t.tolerance());
    if (prof.kind() != GeneratorProfile::Kind::Polynomial)
        throw Unsupported("residue formula needs a generator with polynomial erosion");
    const auto lat = detail::lattice_data(s);
    if (!lat) throw Unsupported("residue formula needs a lattice system");
    const double rho = prof.inradius();
    if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
    if (eps > rho * (1.0 + 1e-12)) throw OutOfRange("eps exceeds the generator inradius; formula not valid");

    const int d = s.dimension();
    std::vector<double> kappa = prof.kappa();
    kappa.push_back(-prof.measure());
    const auto ratios = s.ratios();

    double value = 0.0;
    for (int k = 0; k < d; ++k) {
        double sk = 0.0;
        for (double r : ratios) sk += std::pow(r, k);
        if (std::abs(1.0 - sk) < 1e-12) throw Unsupported("integer pole collides with a complex dimension");
        value += kappa[k] * std::pow(eps, d - k) / (1.0 - sk);
    }

    // Roots z of sum z^{k_j} = 1; each gives the pole line s = (Log z + 2 pi i m) / ln r.
    const double lr = std::log(lat->base_ratio);
    for (int mult : lat->multiplicity)
        if (mult != 1) throw Unsupported("non-simple pole");
    const std::vector<std::complex<double>>& zs = lat->roots;
    auto term = [&](std::complex<double> w) {
        std::complex<double> fp = 0.0;
        for (double r : ratios) fp += std::pow(r, w) * std::log(r);
        const std::complex<double> res = -1.0 / fp;
        std::complex<double> c = 0.0;
        for (int k = 0; k <= d; ++k) c += kappa[k] * std::pow(rho, w - static_cast<double>(k)) / (w - static_cast<double>(k));
        return std::pow(eps, static_cast<double>(d) - w) * res * c;
    };
    auto pole = [&](std::complex<double> z, int m) {
        return (std::log(z) + std::complex<double>(0.0, 2.0 * M_PI * m)) / lr;
    };
    std::complex<double> poles_sum = 0.0;
    for (auto z : zs) poles_sum += term(pole(z, 0));
    ResidueResult out;
    const int min_lines = static_cast<int>(std::ceil(50.0 / std::abs(lr)));
    for (int m = 1; m <= 1'000'000; ++m) {
        std::complex<double> line = 0.0;
        for (auto z : zs) line += term(pole(z, m)) + term(pole(z, -m));
        poles_sum += line;
        // Terms decay at least like m^-2, so the remaining tail is about m |line|.
        const double tail = std::abs(line) * m;
        out.lines = m;
        out.tail_bound = tail;
        if (m >= min_lines && tail <= rel_tol * std::abs(value + poles_sum.real())) break;
    }
    if (out.tail_bound > rel_tol * std::abs(value + poles_sum.real()))
        throw Inconclusive("residue series did not converge to the requested tolerance");
    out.value = value + poles_sum.real();
    return out;
}

namespace {

bool inner_method(const std::string& m) { return m == "scaling_sum" || m == "grid" || m == "residue"; }

}  // namespace

TubeCurve tube_curve(const Tiling& t, std::span<const double> eps, const std::vector<std::string>& methods) {
    TubeCurve c;
    for (const auto& m : methods)
        if (m != "scaling_sum" && m != "grid" && m != "residue" && m != "steiner-outer")
            throw InvalidArgument("unknown tube method '" + m + "'");
    for (size_t i = 0; i + 1 < eps.size(); ++i)
        if (!(eps[i] > 0.0) || eps[i + 1] < eps[i]) throw InvalidArgument("eps grid must be sorted and positive");
    if (eps.empty()) return c;

    std::optional<ScalingSum> sum;
    std::string sum_error;
    std::optional<TilingBoundaryField> field;
    for (double e : eps) {
        const size_t first = c.samples.size();
        for (const auto& m : methods) {
            TubeSample smp;
            smp.eps = e;
            smp.method = m;
            smp.status = "ok";
            try {
                if (m == "scaling_sum") {
                    if (!sum && sum_error.empty()) {
                        try {
                            sum.emplace(t);
                        } catch (const Error& ex) {
                            sum_error = ex.what();
                            throw;
                        }
                    }
                    if (!sum) throw Unsupported(sum_error);
                    smp.volume = (*sum)(e);
                    smp.error_bar = 1e-12 * smp.volume;
                } else if (m == "grid") {
                    if (!field) field.emplace(t);
                    const GridVolume g = grid_tube_volume_refined({&*field, e, Side::Inside, &t.base()}, e / 20.0);
                    smp.volume = g.value;
                    smp.error_bar = g.error_bar;
                } else if (m == "residue") {
                    const double rel = 1e-7;
                    const ResidueResult r = residue_tube_formula(t, e, rel);
                    smp.volume = r.value;
                    smp.error_bar = rel * std::abs(r.value);
                } else {
                    const VolumeEstimate v = outer_volume(t.base(), e);
                    smp.volume = v.value;
                    smp.error_bar = v.error_bar;
                }
            } catch (const Unsupported& ex) {
                smp.status = std::string("unsupported: ") + ex.what();
            } catch (const Error& ex) {
                smp.status = std::string("error: ") + ex.what();
            }
            c.samples.push_back(std::move(smp));
        }
        for (size_t a = first; a < c.samples.size(); ++a)
            for (size_t b = a + 1; b < c.samples.size(); ++b) {
                auto& x = c.samples[a];
                auto& y = c.samples[b];
                if (!inner_method(x.method) || !inner_method(y.method)) continue;
                if (x.status.rfind("ok", 0) != 0 && x.status != "disagree") continue;
                if (y.status.rfind("ok", 0) != 0 && y.status != "disagree") continue;
                const double slack = 1e-12 * std::max(std::abs(x.volume), std::abs(y.volume));
                if (std::abs(x.volume - y.volume) > x.error_bar + y.error_bar + slack) {
                    x.status = y.status = "disagree";
                    c.disagreement = true;
                }
            }
    }
    return c;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + '"';
}

}  // namespace

std::string to_csv(const TubeCurve& c) {
    std::string out = "eps,method,volume,error_bar,status\n";
    for (const auto& s : c.samples)
        out += fmt(s.eps) + ',' + s.method + ',' + fmt(s.volume) + ',' + fmt(s.error_bar) + ',' + csv_field(s.status) +
               '\n';
    return out;
}

std::string to_csv(const ComplexDimensionSet& d) {
    std::string out = "re,im,residual,multiplicity\n";
    for (const auto& p : d.poles)
        out += fmt(p.s.real()) + ',' + fmt(p.s.imag()) + ',' + fmt(p.residual) + ',' + std::to_string(p.multiplicity) +
               '\n';
    return out;
}

}  // namespace fractile
