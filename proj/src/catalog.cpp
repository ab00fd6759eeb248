#include "curv4/catalog.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "curv4/errors.hpp"

namespace curv4 {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix4 standard_j() {
    // J e0 = e1, J e2 = e3 (frame components)
    Matrix4 j = Matrix4::Zero();
    j(1, 0) = 1;
    j(0, 1) = -1;
    j(3, 2) = 1;
    j(2, 3) = -1;
    return j;
}

}  // namespace

double page_quartic(double a) { return ((a + 4) * a - 6) * a * a + 12 * a - 3; }

double page_root() {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (page_quartic(mid) > 0 ? hi : lo) = mid;
    }
    double a = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
        const double d = ((4 * a + 12) * a - 12) * a + 12;  // quartic'
        a -= page_quartic(a) / d;
    }
    return a;
}

double page_V(double a, double r) {
    const double a2 = a * a, c2 = std::cos(r) * std::cos(r);
    return (1 - a2 * c2) / (3 - a2 - a2 * (1 + a2) * c2);
}

double page_f(double a, double r) {
    const double a2 = a * a, c2 = std::cos(r) * std::cos(r);
    return 4.0 / (3 + 6 * a2 - a2 * a2) * (1 - a2 * c2);
}

double page_C(double a) {
    const double t = 2.0 / (3 + a * a);
    return t * t;
}

CoframeField page_metric(const PageParams& p) {
    if (!(p.a > 0 && p.a < 1)) throw ParameterError("page_metric: need 0 < a < 1");
    const double a2 = p.a * p.a;
    const double kf = 4.0 / (3 + 6 * a2 - a2 * a2);
    // e1 coefficient sqrt(C) sin r / (4 sqrt(V)) written as sc * sin r / (2 sqrt(V))
    // with sc = 1/(3+a^2); this value, not the printed sqrt(C) = 2/(3+a^2), is
    // what closes the Einstein equations and the bolt geometry.
    const double sc = 1.0 / (3 + a2);

    auto nfun = [a2](double r) { return 1 - a2 * std::cos(r) * std::cos(r); };
    auto dnfun = [a2](double r) { return a2 * std::sin(2 * r); };
    auto dfun = [a2](double r) {
        return 3 - a2 - a2 * (1 + a2) * std::cos(r) * std::cos(r);
    };
    auto ddfun = [a2](double r) { return a2 * (1 + a2) * std::sin(2 * r); };

    auto coeff = [=](const Vec4& x) {
        const double r = x(0), th = x(1);
        const double n = nfun(r), d = dfun(r);
        const double v = n / d;
        const double sv = std::sqrt(v);
        const double w = sc * std::sin(r) / (2 * sv);
        const double h = std::sqrt(kf * n) / 2;  // sqrt(f)/2
        Matrix4 e = Matrix4::Zero();
        e(0, 0) = sv;
        e(1, 2) = w * std::cos(th);
        e(1, 3) = w;
        e(2, 2) = h * std::sin(th);
        e(3, 1) = h;
        return e;
    };

    auto dcoeff = [=](const Vec4& x) {
        const double r = x(0), th = x(1);
        const double n = nfun(r), d = dfun(r);
        const double v = n / d;
        const double dv = (dnfun(r) * d - n * ddfun(r)) / (d * d);
        const double sv = std::sqrt(v);
        const double dsv = dv / (2 * sv);
        const double w = sc * std::sin(r) / (2 * sv);
        const double dw = sc * (std::cos(r) * sv - std::sin(r) * dsv) / (2 * v);
        const double h = std::sqrt(kf * n) / 2;
        const double dh = kf * dnfun(r) / (8 * h);  // d sqrt(kf n)/2 = kf n' /(4 sqrt(kf n))

        CoframeJet jet{Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero()};
        // d/dr
        jet[0](0, 0) = dsv;
        jet[0](1, 2) = dw * std::cos(th);
        jet[0](1, 3) = dw;
        jet[0](2, 2) = dh * std::sin(th);
        jet[0](3, 1) = dh;
        // d/dtheta
        jet[1](1, 2) = -w * std::sin(th);
        jet[1](2, 2) = h * std::cos(th);
        return jet;
    };

    CoframeField cf;
    cf.chart.names = {"r", "theta", "phi", "psi"};
    cf.chart.domain = {Interval{0, kPi}, Interval{0, kPi}, Interval{0, 2 * kPi},
                       Interval{0, 4 * kPi}};
    cf.chart.margin = {0.05, 0.05, 0.0, 0.0};
    cf.chart.periodic = {false, false, true, true};
    cf.coeff = coeff;
    cf.dcoeff = dcoeff;
    std::ostringstream name;
    name << "page(a=" << p.a << ")";
    cf.name = name.str();
    return cf;
}

CoframeField fubini_study() {
    auto coeff = [](const Vec4& x) {
        const double t = x(0), th = x(1);
        const double w = std::sin(t) * std::cos(t) / 2;
        const double h = std::sin(t) / 2;
        Matrix4 e = Matrix4::Zero();
        e(0, 0) = 1;
        e(1, 2) = w * std::cos(th);
        e(1, 3) = w;
        e(2, 2) = h * std::sin(th);
        e(3, 1) = h;
        return e;
    };
    auto dcoeff = [](const Vec4& x) {
        const double t = x(0), th = x(1);
        const double w = std::sin(t) * std::cos(t) / 2;
        const double dw = std::cos(2 * t) / 2;
        const double h = std::sin(t) / 2;
        const double dh = std::cos(t) / 2;
        CoframeJet jet{Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero()};
        jet[0](1, 2) = dw * std::cos(th);
        jet[0](1, 3) = dw;
        jet[0](2, 2) = dh * std::sin(th);
        jet[0](3, 1) = dh;
        jet[1](1, 2) = -w * std::sin(th);
        jet[1](2, 2) = h * std::cos(th);
        return jet;
    };

    CoframeField cf;
    cf.chart.names = {"t", "theta", "phi", "psi"};
    cf.chart.domain = {Interval{0, kPi / 2}, Interval{0, kPi}, Interval{0, 2 * kPi},
                       Interval{0, 4 * kPi}};
    cf.chart.margin = {0.05, 0.05, 0.0, 0.0};
    cf.chart.periodic = {false, false, true, true};
    cf.coeff = coeff;
    cf.dcoeff = dcoeff;
    cf.name = "fubini-study";
    cf.canonical_j = standard_j();
    return cf;
}

CoframeField round_s4(double radius) {
    if (!(radius > 0)) throw ParameterError("round_s4: radius must be positive");
    auto coeff = [radius](const Vec4& x) {
        const double s1 = std::sin(x(0)), s2 = std::sin(x(1)), s3 = std::sin(x(2));
        Matrix4 e = Matrix4::Zero();
        e(0, 0) = radius;
        e(1, 1) = radius * s1;
        e(2, 2) = radius * s1 * s2;
        e(3, 3) = radius * s1 * s2 * s3;
        return e;
    };
    auto dcoeff = [radius](const Vec4& x) {
        const double s1 = std::sin(x(0)), c1 = std::cos(x(0));
        const double s2 = std::sin(x(1)), c2 = std::cos(x(1));
        const double s3 = std::sin(x(2)), c3 = std::cos(x(2));
        CoframeJet jet{Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero()};
        jet[0](1, 1) = radius * c1;
        jet[0](2, 2) = radius * c1 * s2;
        jet[0](3, 3) = radius * c1 * s2 * s3;
        jet[1](2, 2) = radius * s1 * c2;
        jet[1](3, 3) = radius * s1 * c2 * s3;
        jet[2](3, 3) = radius * s1 * s2 * c3;
        return jet;
    };

    CoframeField cf;
    cf.chart.names = {"chi1", "chi2", "chi3", "chi4"};
    cf.chart.domain = {Interval{0, kPi}, Interval{0, kPi}, Interval{0, kPi},
                       Interval{0, 2 * kPi}};
    cf.chart.margin = {0.05, 0.05, 0.05, 0.0};
    cf.chart.periodic = {false, false, false, true};
    cf.coeff = coeff;
    cf.dcoeff = dcoeff;
    std::ostringstream name;
    name << "s4(" << radius << ")";
    cf.name = name.str();
    return cf;
}

CoframeField flat_t4() {
    CoframeField cf;
    cf.chart.names = {"x0", "x1", "x2", "x3"};
    cf.chart.domain = {Interval{0, 2 * kPi}, Interval{0, 2 * kPi}, Interval{0, 2 * kPi},
                       Interval{0, 2 * kPi}};
    cf.chart.periodic = {true, true, true, true};
    cf.coeff = [](const Vec4&) { return Matrix4::Identity().eval(); };
    cf.dcoeff = [](const Vec4&) {
        return CoframeJet{Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero()};
    };
    cf.name = "t4";
    cf.canonical_j = standard_j();
    return cf;
}

CoframeField round_s2xs2(double r1, double r2) {
    if (!(r1 > 0) || !(r2 > 0)) throw ParameterError("round_s2xs2: radii must be positive");
    auto coeff = [r1, r2](const Vec4& x) {
        Matrix4 e = Matrix4::Zero();
        e(0, 0) = r1;
        e(1, 1) = r1 * std::sin(x(0));
        e(2, 2) = r2;
        e(3, 3) = r2 * std::sin(x(2));
        return e;
    };
    auto dcoeff = [r1, r2](const Vec4& x) {
        CoframeJet jet{Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero()};
        jet[0](1, 1) = r1 * std::cos(x(0));
        jet[2](3, 3) = r2 * std::cos(x(2));
        return jet;
    };

    CoframeField cf;
    cf.chart.names = {"theta1", "phi1", "theta2", "phi2"};
    cf.chart.domain = {Interval{0, kPi}, Interval{0, 2 * kPi}, Interval{0, kPi},
                       Interval{0, 2 * kPi}};
    cf.chart.margin = {0.05, 0.0, 0.05, 0.0};
    cf.chart.periodic = {false, true, false, true};
    cf.coeff = coeff;
    cf.dcoeff = dcoeff;
    std::ostringstream name;
    name << "s2xs2(" << r1 << "," << r2 << ")";
    cf.name = name.str();
    cf.canonical_j = standard_j();
    return cf;
}

SigmaForms sigma_forms() {
    SigmaForms s;
    // coordinates ordered (theta, phi, psi)
    s.comp[0] = [](const Vector3& x) {
        const double th = x(0), psi = x(2);
        return Vector3(std::sin(psi) / 2, -std::sin(th) * std::cos(psi) / 2, 0);
    };
    s.comp[1] = [](const Vector3& x) {
        const double th = x(0), psi = x(2);
        return Vector3(-std::cos(psi) / 2, -std::sin(th) * std::sin(psi) / 2, 0);
    };
    s.comp[2] = [](const Vector3& x) {
        const double th = x(0);
        return Vector3(0, std::cos(th) / 2, 0.5);
    };
    s.d1[0] = [](const Vector3& x) {
        const double th = x(0), psi = x(2);
        Matrix3 d = Matrix3::Zero();
        d(0, 1) = -std::cos(th) * std::cos(psi) / 2;   // d_theta comp_phi
        d(2, 0) = std::cos(psi) / 2;                   // d_psi comp_theta
        d(2, 1) = std::sin(th) * std::sin(psi) / 2;    // d_psi comp_phi
        return d;
    };
    s.d1[1] = [](const Vector3& x) {
        const double th = x(0), psi = x(2);
        Matrix3 d = Matrix3::Zero();
        d(0, 1) = -std::cos(th) * std::sin(psi) / 2;
        d(2, 0) = std::sin(psi) / 2;
        d(2, 1) = -std::sin(th) * std::cos(psi) / 2;
        return d;
    };
    s.d1[2] = [](const Vector3& x) {
        Matrix3 d = Matrix3::Zero();
        d(0, 1) = -std::sin(x(0)) / 2;
        return d;
    };
    return s;
}

Eigen::Vector2d hopf_project(double theta, double psi, double phi) {
    (void)psi;
    return {-phi, theta};
}

Vec4 euler_embedding(double theta, double psi, double phi) {
    const double ct = std::cos(theta / 2), st = std::sin(theta / 2);
    return {ct * std::cos((psi + phi) / 2), ct * std::sin((psi + phi) / 2),
            st * std::cos((psi - phi) / 2), st * std::sin((psi - phi) / 2)};
}

namespace {

std::vector<double> parse_args(const std::string& inner) {
    std::vector<double> out;
    std::string token;
    std::istringstream in(inner);
    while (std::getline(in, token, ',')) {
        const auto eq = token.find('=');
        if (eq != std::string::npos) token = token.substr(eq + 1);
        try {
            size_t pos = 0;
            out.push_back(std::stod(token, &pos));
            while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos])))
                ++pos;
            if (pos != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw ConfigError("bad metric argument: '" + token + "'");
        }
    }
    return out;
}

}  // namespace

CoframeField metric_by_name(const std::string& selector) {
    std::string base = selector;
    std::vector<double> args;
    const auto open = selector.find('(');
    if (open != std::string::npos) {
        if (selector.back() != ')') throw ConfigError("unbalanced metric selector: " + selector);
        base = selector.substr(0, open);
        args = parse_args(selector.substr(open + 1, selector.size() - open - 2));
    }

    if (base == "page") {
        const double a = args.empty() ? page_root() : args.at(0);
        if (!(a > 0 && a < 1)) throw ConfigError("page: parameter a must be in (0,1)");
        return page_metric({a});
    }
    if (base == "fubini-study") return fubini_study();
    if (base == "s4") return round_s4(args.empty() ? 1.0 : args.at(0));
    if (base == "t4") return flat_t4();
    if (base == "s2xs2") {
        if (args.empty()) return round_s2xs2(1.0, 1.0);
        if (args.size() == 2) return round_s2xs2(args[0], args[1]);
        throw ConfigError("s2xs2 takes zero or two radii");
    }
    throw ConfigError("unknown metric: " + selector);
}

}  // namespace curv4
