#include "dogfight/engineering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dogfight {

namespace {

const double kPi = std::acos(-1.0);

VectorXd vec(std::initializer_list<double> v) {
    VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

ConstrainedProblem base(const std::string& id, const std::string& title, VectorXd lo, VectorXd hi, int g, int h) {
    ConstrainedProblem p;
    p.id = id;
    p.title = title;
    p.bounds = Bounds(std::move(lo), std::move(hi));
    p.inequality_count = g;
    p.equality_count = h;
    p.discrete.assign(p.bounds.dimension(), DiscreteSpec::continuous());
    p.inequality_scale = VectorXd::Ones(g);
    return p;
}

// R1: alkylation unit
RawEvaluation alkylation(const VectorXd& x) {
    const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], x5 = x[4], x6 = x[5], x7 = x[6];
    RawEvaluation r;
    r.f = -(0.035 * x1 * x6 + 1.715 * x1 + 10.0 * x2 + 4.0565 * x3) + 0.063 * x3 * x5;
    r.g = vec({0.0059553571 * x6 * x6 * x1 + 0.88392857 * x3 - 0.1175625 * x6 * x1 - x1,
               1.1088 * x1 + 0.1303533 * x1 * x6 - 0.0066033 * x1 * x6 * x6 - x3,
               6.66173269 * x6 * x6 - 56.596669 * x4 + 172.39878 * x5 - 191.20592 * x6 - 10000.0,
               1.08702 * x6 - 0.03762 * x6 * x6 + 0.32175 * x4 + 56.85075 - x5,
               0.006198 * x7 * x4 * x3 + 2462.3121 * x2 - 25.125634 * x2 * x4 - x3 * x4,
               161.18996 * x3 * x4 + 5000.0 * x2 * x4 - 489510.0 * x2 - x3 * x4 * x7,
               0.33 * x7 + 44.333333 - x5,
               0.022556 * x5 - 1.0 - 0.007595 * x7,
               0.00061 * x3 - 1.0 - 0.0005 * x1,
               0.819672 * x1 - x3 + 0.819672,
               24500.0 * x2 - 250.0 * x2 * x4 - x3 * x4,
               1020.4082 * x4 * x2 + 1.2244898 * x3 * x4 - 100000.0 * x2,
               6.25 * x1 * x6 + 6.25 * x1 - 7.625 * x3 - 100000.0,
               1.22 * x3 - x6 * x1 - x1 + 1.0});
    r.h = VectorXd(0);
    return r;
}

// R2: process flow sheeting
RawEvaluation flow_sheeting(const VectorXd& x) {
    const double x1 = x[0], x2 = x[1], x3 = x[2];
    RawEvaluation r;
    r.f = -0.7 * x3 + 0.8 + 5.0 * (0.5 - x1) * (0.5 - x1);
    r.g = vec({-std::exp(x1 - 0.2) - x2, x2 + 1.1 * x3 + 1.0, x1 - x3 - 0.2});
    r.h = VectorXd(0);
    return r;
}

// R3: welded beam
RawEvaluation welded_beam(const VectorXd& x) {
    const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
    const double P = 6000.0, L = 14.0, E = 30e6;
    const double tau_p = P / (std::sqrt(2.0) * x1 * x2);
    const double R = std::sqrt(0.25 * (x2 * x2 + (x1 + x3) * (x1 + x3)));
    const double J = 2.0 * std::sqrt(2.0) * x1 * x2 * (x2 * x2 / 4.0 + 0.25 * (x1 + x3) * (x1 + x3));
    const double tau_pp = P * (L + 0.5 * x2) * R / J;
    const double tau = std::sqrt(tau_p * tau_p + tau_pp * tau_pp + x2 * tau_p * tau_pp / R);
    const double sigma = 504000.0 / (x3 * x3 * x4);
    const double delta = 65856000.0 / (E * x4 * x3 * x3 * x3);
    const double pc = 4.013 * E / (196.0 * 6.0) * (1.0 - 0.0282346 * x3) * x3 * x4 * x4 * x4;
    RawEvaluation r;
    r.f = 1.1047 * x1 * x1 * x2 + 0.04811 * x3 * x4 * (14.0 + x2);
    r.g = vec({tau - 13600.0, sigma - 30000.0, delta - 0.25, x1 - x4, P - pc, 0.125 - x1,
               1.1047 * x1 + 0.04811 * x3 * x4 * (14.0 + x2) - 5.0});
    r.h = VectorXd(0);
    return r;
}

// R4: pressure vessel; shell and head thickness are integer multiples of 0.0625
RawEvaluation pressure_vessel(const VectorXd& x) {
    const double z1 = 0.0625 * x[0], z2 = 0.0625 * x[1], x3 = x[2], x4 = x[3];
    RawEvaluation r;
    r.f = 1.7781 * z2 * x3 * x3 + 0.6224 * z1 * x3 * x4 + 3.1661 * z1 * z1 * x4 + 19.84 * z1 * z1 * x3;
    r.g = vec({0.00954 * x3 - z2, 0.0193 * x3 - z1, x4 - 240.0,
               -kPi * x3 * x3 * x4 - 4.0 / 3.0 * kPi * x3 * x3 * x3 + 1296000.0});
    r.h = VectorXd(0);
    return r;
}

// R5: car side impact
RawEvaluation side_impact(const VectorXd& x) {
    const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], x5 = x[4], x6 = x[5], x7 = x[6], x8 = x[7], x9 = x[8],
                 x10 = x[9], x11 = x[10];
    RawEvaluation r;
    r.f = 1.98 + 4.9 * x1 + 6.67 * x2 + 6.98 * x3 + 4.01 * x4 + 1.78 * x5 + 2.73 * x7;
    r.g = vec({1.16 - 0.3717 * x2 * x4 - 0.00931 * x2 * x10 - 0.484 * x3 * x9 + 0.01343 * x6 * x10 - 1.0,
               46.36 - 9.9 * x2 - 12.9 * x1 * x2 + 0.1107 * x3 * x10 - 32.0,
               33.86 + 2.95 * x3 + 0.1792 * x3 - 5.057 * x1 * x2 - 11.0 * x2 * x8 - 0.0215 * x5 * x10 -
                   9.98 * x7 * x8 + 22.0 * x8 * x9 - 32.0,
               28.98 + 3.818 * x3 - 4.2 * x1 * x2 + 0.0207 * x5 * x10 + 6.63 * x6 * x9 - 7.7 * x7 * x8 +
                   0.32 * x9 * x10 - 32.0,
               0.261 - 0.0159 * x1 * x2 - 0.188 * x1 * x8 - 0.019 * x2 * x7 + 0.0144 * x3 * x5 +
                   0.0008757 * x5 * x10 + 0.08045 * x6 * x9 + 0.00139 * x8 * x11 + 0.00001575 * x10 * x11 - 0.32,
               0.214 + 0.00817 * x5 - 0.131 * x1 * x8 - 0.0704 * x1 * x9 + 0.03099 * x2 * x6 - 0.018 * x2 * x7 +
                   0.0208 * x3 * x8 + 0.121 * x3 * x9 - 0.00364 * x5 * x6 + 0.0007715 * x5 * x10 -
                   0.0005354 * x6 * x10 + 0.00121 * x8 * x11 + 0.00184 * x9 * x10 - 0.02 * x2 * x2 - 0.32,
               0.74 - 0.61 * x2 - 0.163 * x3 * x8 + 0.001232 * x3 * x10 - 0.166 * x7 * x9 + 0.227 * x2 * x2 - 0.32,
               4.72 - 0.5 * x4 - 0.19 * x2 * x3 - 0.0122 * x4 * x10 + 0.009325 * x6 * x10 + 0.000191 * x11 * x11 -
                   4.0,
               10.58 - 0.674 * x1 * x2 - 1.95 * x2 * x8 + 0.02054 * x3 * x10 - 0.0198 * x4 * x10 +
                   0.028 * x6 * x10 - 9.9,
               16.45 - 0.489 * x3 * x7 - 0.843 * x5 * x6 + 0.0432 * x9 * x10 - 0.0556 * x9 * x11 -
                   0.000786 * x11 * x11 - 15.7});
    r.h = VectorXd(0);
    return r;
}

// R6: industrial refrigeration system
RawEvaluation refrigeration(const VectorXd& x) {
    const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], x5 = x[4], x6 = x[5], x7 = x[6], x8 = x[7], x9 = x[8],
                 x10 = x[9], x11 = x[10], x12 = x[11], x13 = x[12], x14 = x[13];
    RawEvaluation r;
    r.f = 63098.88 * x2 * x4 * x12 + 5441.5 * x2 * x2 * x12 + 115055.5 * std::pow(x2, 1.664) * x6 +
          6172.27 * x2 * x2 * x6 + 63098.88 * x1 * x3 * x11 + 5441.5 * x1 * x1 * x11 +
          115055.5 * std::pow(x1, 1.664) * x5 + 6172.27 * x1 * x1 * x5 + 140.53 * x1 * x11 + 281.29 * x3 * x11 +
          70.26 * x1 * x1 + 281.29 * x1 * x3 + 281.29 * x3 * x3 +
          14437.0 * std::pow(x8, 1.8812) * std::pow(x12, 0.3424) * x10 / x14 * x1 * x1 * x7 / x9 +
          20470.2 * std::pow(x7, 2.893) * std::pow(x11, 0.316) * x1 * x1;
    const double t13 = std::pow(x13, 2.1195);
    r.g = vec({1.524 / x7 - 1.0,
               1.524 / x8 - 1.0,
               0.07789 * x1 - 2.0 / x7 * x9 - 1.0,
               7.05305 / x9 * x1 * x1 * x10 / x8 / x2 / x14 - 1.0,
               0.0833 / x13 * x14 - 1.0,
               47.136 * std::pow(x2, 0.333) / x10 * x12 - 1.333 * x8 * t13 +
                   62.08 * t13 / x12 * std::pow(x8, 0.2) / x10 - 1.0,
               0.04771 * x10 * std::pow(x8, 1.8812) * std::pow(x12, 0.3424) - 1.0,
               0.0488 * x9 * std::pow(x7, 1.893) * std::pow(x11, 0.316) - 1.0,
               0.0099 * x1 / x3 - 1.0,
               0.0193 * x2 / x4 - 1.0,
               0.0298 * x1 / x5 - 1.0,
               0.056 * x2 / x6 - 1.0,
               2.0 / x9 - 1.0,
               2.0 / x10 - 1.0,
               x12 / x11 - 1.0});
    r.h = VectorXd(0);
    return r;
}

// R7: step-cone pulley; diameters and speed given in millimetres and rpm/1000
RawEvaluation step_cone_pulley(const VectorXd& x) {
    const double N = 350.0, rho = 7200.0, a = 3.0, mu = 0.35, s = 1.75e6, t = 8e-3;
    const double Ns[4] = {750.0, 450.0, 250.0, 150.0};
    const double w = x[4] * 1e-3;
    double C[4], Rr[4], Pw[4];
    double f = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double d = x[i] * 1e-3;
        const double ratio = Ns[i] / N;
        f += d * d * (1.0 + ratio * ratio);
        C[i] = kPi * d / 2.0 * (1.0 + ratio) + (ratio - 1.0) * (ratio - 1.0) * d * d / (4.0 * a) + 2.0 * a;
        Rr[i] = std::exp(mu * (kPi - 2.0 * std::asin((ratio - 1.0) * d / (2.0 * a))));
        Pw[i] = s * t * w * (1.0 - 1.0 / Rr[i]) * kPi * d * Ns[i] / 60.0;
    }
    RawEvaluation r;
    r.f = rho * w * kPi / 4.0 * f;
    r.g = vec({2.0 - Rr[0], 2.0 - Rr[1], 2.0 - Rr[2], 2.0 - Rr[3], 0.75 * 745.6998 - Pw[0],
               0.75 * 745.6998 - Pw[1], 0.75 * 745.6998 - Pw[2], 0.75 * 745.6998 - Pw[3]});
    r.h = vec({C[0] - C[1], C[0] - C[2], C[0] - C[3]});
    return r;
}

// R8: hydrostatic thrust bearing
RawEvaluation thrust_bearing(const VectorXd& x) {
    const double R = x[0], R0 = x[1], mu = x[2], Q = x[3];
    const double P = (std::log10(std::log10(8.122e6 * mu + 0.8)) - 10.04) / -3.55;
    const double dT = 2.0 * (std::pow(10.0, P) - 560.0);
    const double Ef = 9336.0 * Q * 0.0307 * 0.5 * dT;
    const double omega = 2.0 * kPi * 750.0 / 60.0;
    const double h = omega * omega * 2.0 * kPi * mu / Ef * (std::pow(R, 4) / 4.0 - std::pow(R0, 4) / 4.0) - 1e-5;
    const double lr = std::log(R / R0);
    const double P0 = 6.0 * mu * Q / (kPi * h * h * h) * lr;
    const double W = kPi * P0 / 2.0 * (R * R - R0 * R0) / (lr - 1e-5);
    RawEvaluation r;
    r.f = (Q * P0 / 0.7 + Ef) / 12.0;
    r.g = vec({P0 - 1000.0, 101000.0 - W, W / (kPi * (R * R - R0 * R0)) - 5000.0, dT - 50.0,
               0.0307 / (386.4 * P0) * (Q / (2.0 * kPi * R * h)) - 0.001, R0 - R, 0.001 - h});
    r.h = VectorXd(0);
    return r;
}

// R9: four-stage gearbox. Layout: Np1 Ng1 .. Np4 Ng4, b1..b4, xp1 xg1..xg4, yp1 yg1..yg4.
RawEvaluation gearbox(const VectorXd& v) {
    double Np[4], Ng[4], b[4], xg[4], yg[4], xp[4], yp[4], c[4];
    for (int i = 0; i < 4; ++i) {
        Np[i] = v[2 * i];
        Ng[i] = v[2 * i + 1];
        b[i] = v[8 + i];
        xg[i] = v[13 + i];
        yg[i] = v[18 + i];
    }
    xp[0] = v[12];
    yp[0] = v[17];
    for (int i = 1; i < 4; ++i) {
        xp[i] = xg[i - 1];
        yp[i] = yg[i - 1];
    }
    for (int i = 0; i < 4; ++i) c[i] = std::hypot(yg[i] - yp[i], xg[i] - xp[i]);

    const double Ko = 1.5, dmin = 25.0, JR = 0.2, phi = 20.0 * kPi / 180.0, W = 55.9, KM = 1.6, CRmin = 1.4,
                 Lmax = 127.0, Cp = 464.0, sH = 3290.0, wmax = 255.0, w1 = 5000.0, sN = 2090.0, wmin = 245.0;

    RawEvaluation r;
    double f = 0.0;
    for (int i = 0; i < 4; ++i)
        f += b[i] * c[i] * c[i] * (Np[i] * Np[i] + Ng[i] * Ng[i]) / ((Np[i] + Ng[i]) * (Np[i] + Ng[i]));
    r.f = kPi / 1000.0 * f;

    r.g = VectorXd(86);
    double A[4];
    double prefix = 366000.0 / (kPi * w1);
    for (int i = 0; i < 4; ++i) {
        A[i] = prefix;
        prefix *= Ng[i] / Np[i];
    }
    const double bending = sN * JR / (0.0167 * W * Ko * KM);
    const double contact = (sH / Cp) * (sH / Cp) * std::sin(phi) * std::cos(phi) / (0.0334 * W * Ko * KM);
    const double s2 = std::sin(phi) * std::sin(phi) / 4.0;
    for (int i = 0; i < 4; ++i) {
        const double sum = Np[i] + Ng[i];
        const double B = 2.0 * c[i] * Np[i] / sum;
        r.g[i] = (A[i] + B) * sum * sum / (4.0 * b[i] * c[i] * c[i] * Np[i]) - bending;
        r.g[4 + i] = (A[i] + B) * sum * sum * sum / (4.0 * b[i] * c[i] * c[i] * Ng[i] * Np[i] * Np[i]) - contact;
        r.g[8 + i] = CRmin * kPi * std::cos(phi) - Ng[i] * std::sqrt(s2 + 1.0 / Ng[i] + 1.0 / (Ng[i] * Ng[i])) -
                     Np[i] * std::sqrt(s2 + 1.0 / Np[i] + 1.0 / (Np[i] * Np[i])) + sum * std::sin(phi) / 2.0;
        r.g[12 + i] = dmin - 2.0 * c[i] * Np[i] / sum;
        r.g[16 + i] = dmin - 2.0 * c[i] * Ng[i] / sum;
        const double pin = (Np[i] + 2.0) * c[i] / sum;
        const double gear = (Ng[i] + 2.0) * c[i] / sum;
        r.g[20 + i] = pin - Lmax + xp[i];
        r.g[24 + i] = pin - xp[i];
        r.g[28 + i] = pin - Lmax + yp[i];
        r.g[32 + i] = pin - yp[i];
        r.g[36 + i] = gear - Lmax + xg[i];
        r.g[40 + i] = gear - xg[i];
        r.g[44 + i] = gear - Lmax + yg[i];
        r.g[48 + i] = gear - yg[i];
        const double bi = b[i];
        const double p8 = bi - 8.255, p5 = bi - 5.715, p12 = bi - 12.7, p3 = bi - 3.175;
        r.g[52 + i] = sum * p8 * p5 * p12 - 0.945 * c[i] * p8 * p5 * p12;
        r.g[56 + i] = -sum * p8 * p3 * p12 + 0.646 * c[i] * p8 * p3 * p12;
        r.g[60 + i] = -sum * p5 * p3 * p12 + 0.504 * c[i] * p5 * p3 * p12;
        r.g[64 + i] = -sum * p5 * p3 * p8;
        r.g[68 + i] = -sum * p8 * p5 * p12 + 1.812 * c[i] * p8 * p5 * p12;
        r.g[72 + i] = sum * p8 * p3 * p12 - 0.945 * c[i] * p8 * p3 * p12;
        r.g[76 + i] = -sum * p5 * p3 * p12 + 0.646 * c[i] * p5 * p3 * p12;
        r.g[80 + i] = sum * p5 * p3 * p8 - 0.504 * c[i] * p5 * p3 * p8;
    }
    const double ratio = w1 * Np[0] * Np[1] * Np[2] * Np[3] / (Ng[0] * Ng[1] * Ng[2] * Ng[3]);
    r.g[84] = wmin - ratio;
    r.g[85] = ratio - wmax;
    r.h = VectorXd(0);
    return r;
}

ConstrainedProblem make_gearbox() {
    VectorXd lo(22), hi(22);
    lo.head(8).setConstant(7.0);
    hi.head(8).setConstant(76.0);
    lo.segment(8, 4).setConstant(3.175);
    hi.segment(8, 4).setConstant(12.7);
    lo.tail(10).setConstant(12.7);
    hi.tail(10).setConstant(114.3);
    ConstrainedProblem p = base("R9", "four-stage gearbox", lo, hi, 86, 0);
    const auto widths = DiscreteSpec::value_set({3.175, 5.715, 8.255, 12.7});
    std::vector<double> positions;
    for (int k = 1; k <= 9; ++k) positions.push_back(12.7 * k);
    const auto grid = DiscreteSpec::value_set(positions);
    for (int j = 0; j < 22; ++j) p.discrete[j] = j < 8 ? DiscreteSpec::integer() : j < 12 ? widths : grid;
    p.model = gearbox;
    return p;
}

}  // namespace

DiscreteSpec DiscreteSpec::value_set(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return {kValueSet, std::move(v)};
}

std::vector<std::string> engineering_ids() { return {"R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9", "R10"}; }

ConstrainedProblem make_engineering(const std::string& id) {
    if (id == "R1") {
        auto p = base(id, "alkylation unit", vec({1000, 0, 2000, 0, 0, 0, 0}), vec({2000, 100, 4000, 100, 100, 20, 200}),
                      14, 0);
        p.model = alkylation;
        return p;
    }
    if (id == "R2") {
        auto p = base(id, "process flow sheeting", vec({0.2, -2.22554, 0}), vec({1, -1, 1}), 3, 0);
        p.discrete[2] = DiscreteSpec::value_set({0.0, 1.0});
        p.model = flow_sheeting;
        return p;
    }
    if (id == "R3") {
        auto p = base(id, "welded beam", vec({0.1, 0.1, 0.1, 0.1}), vec({2, 10, 10, 2}), 7, 0);
        p.model = welded_beam;
        return p;
    }
    if (id == "R4") {
        auto p = base(id, "pressure vessel", vec({1, 1, 10, 10}), vec({99, 99, 200, 200}), 4, 0);
        p.discrete[0] = DiscreteSpec::integer();
        p.discrete[1] = DiscreteSpec::integer();
        p.model = pressure_vessel;
        return p;
    }
    if (id == "R5") {
        VectorXd lo(11), hi(11);
        lo << 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.192, 0.192, -30, -30;
        hi << 1.5, 1.5, 1.5, 1.5, 1.5, 1.5, 1.5, 0.345, 0.345, 30, 30;
        auto p = base(id, "car side impact", lo, hi, 10, 0);
        p.discrete[7] = DiscreteSpec::value_set({0.192, 0.345});
        p.discrete[8] = DiscreteSpec::value_set({0.192, 0.345});
        p.model = side_impact;
        return p;
    }
    if (id == "R6") {
        auto p = base(id, "industrial refrigeration system", VectorXd::Constant(14, 0.001), VectorXd::Constant(14, 5.0),
                      15, 0);
        p.model = refrigeration;
        return p;
    }
    if (id == "R7") {
        auto p = base(id, "step-cone pulley", vec({0, 0, 0, 0, 0}), vec({60, 60, 90, 90, 90}), 8, 3);
        p.model = step_cone_pulley;
        return p;
    }
    if (id == "R8") {
        auto p = base(id, "hydrostatic thrust bearing", vec({1, 1, 1e-6, 1}), vec({16, 16, 1.6e-5, 16}), 7, 0);
        p.inequality_scale = vec({1000, 101000, 5000, 50, 0.001, 1, 0.001});
        p.model = thrust_bearing;
        return p;
    }
    if (id == "R9") return make_gearbox();
    if (id == "R10") return make_wind_farm(weibull_jensen_model());
    throw std::invalid_argument("unknown engineering problem '" + id + "'; valid ids: R1..R10");
}

VectorXd snap_discrete(const ConstrainedProblem& problem, const VectorXd& x) {
    VectorXd y = x;
    for (int j = 0; j < problem.dimension(); ++j) {
        const DiscreteSpec& s = problem.discrete[j];
        if (s.kind == DiscreteSpec::kInteger) {
            // ties go to the smaller integer
            y[j] = std::ceil(x[j] - 0.5);
        } else if (s.kind == DiscreteSpec::kValueSet) {
            double best = s.values.front();
            for (double v : s.values)
                if (std::abs(v - x[j]) < std::abs(best - x[j])) best = v;
            y[j] = best;
        }
    }
    return y;
}

RawEvaluation evaluate_raw(const ConstrainedProblem& problem, const VectorXd& x) {
    if (x.size() != problem.dimension()) throw std::invalid_argument(problem.id + ": dimension mismatch");
    if (!problem.bounds.contains(x)) throw std::out_of_range(problem.id + ": point outside bounds");
    RawEvaluation r = problem.model(snap_discrete(problem, x));
    bool finite = std::isfinite(r.f) && r.g.allFinite() && r.h.allFinite();
    if (!finite) {
        r.f = kInf;
        r.g = VectorXd::Constant(problem.inequality_count, kInf);
        r.h = VectorXd::Constant(problem.equality_count, kInf);
    }
    return r;
}

RawEvaluation evaluate_raw(const std::string& id, const VectorXd& x) { return evaluate_raw(make_engineering(id), x); }

double penalty_of(const ConstrainedProblem& problem, const PenaltyConfig& config, const RawEvaluation& r) {
    double pen = 0.0;
    for (Eigen::Index i = 0; i < r.g.size(); ++i)
        if (r.g[i] > 0.0) pen += config.offset + config.weight * r.g[i];
    for (Eigen::Index j = 0; j < r.h.size(); ++j) {
        const double excess = std::abs(r.h[j]) - problem.equality_tolerance;
        if (excess > 0.0) pen += config.offset + config.weight * excess;
    }
    return pen;
}

double penalized_objective(const ConstrainedProblem& problem, const PenaltyConfig& config, const VectorXd& x) {
    const RawEvaluation r = evaluate_raw(problem, x);
    if (!std::isfinite(r.f)) return kInf;
    return r.f + penalty_of(problem, config, r);
}

bool is_feasible(const ConstrainedProblem& problem, const RawEvaluation& r, double inequality_tolerance) {
    if (!std::isfinite(r.f)) return false;
    for (Eigen::Index i = 0; i < r.g.size(); ++i)
        if (!(r.g[i] <= inequality_tolerance * problem.inequality_scale[i])) return false;
    for (Eigen::Index j = 0; j < r.h.size(); ++j)
        if (!(std::abs(r.h[j]) <= problem.equality_tolerance)) return false;
    return true;
}

Problem as_problem(const ConstrainedProblem& problem, const PenaltyConfig& config) {
    Problem p;
    p.name = problem.id;
    p.bounds = problem.bounds;
    p.inequality_count = problem.inequality_count;
    p.equality_count = problem.equality_count;
    p.objective = [problem, config](const VectorXd& x) { return penalized_objective(problem, config, x); };
    p.constraint_evaluator = [problem](const VectorXd& x) {
        const RawEvaluation r = evaluate_raw(problem, x);
        return ConstraintValues{r.g, r.h};
    };
    p.feasible = [problem](const VectorXd& x) { return is_feasible(problem, evaluate_raw(problem, x)); };
    return p;
}

double feasibility_report(const std::vector<RunRecord>& runs, const ConstrainedProblem& problem) {
    if (runs.empty()) throw std::invalid_argument("feasibility_report: no runs");
    int ok = 0;
    for (const auto& r : runs)
        if (r.best_point.size() == problem.dimension() && is_feasible(problem, evaluate_raw(problem, r.best_point)))
            ++ok;
    return static_cast<double>(ok) / runs.size();
}

std::vector<OracleCase> oracle_cases() {
    return {
        {"R1", vec({2000, 0, 2576.38006, 0, 58.1606111, 1.25994095, 41.5998808}), -4529.12},
        {"R2", vec({0.94193734, -2.1, 0.75209273}), 1.0765431},
        {"R3", vec({0.20572964, 3.25312004, 9.03662391, 0.20572964}), 1.6952472},
        {"R4", vec({12.7927137, 7.31679176, 42.0984456, 176.636596}), 6059.7143},
        {"R6", vec({0.001, 0.001, 0.001, 0.001, 0.001, 0.001, 1.524, 1.524, 5, 2, 0.001, 0.001, 0.0072934, 0.08755583}),
         0.0322130},
        {"R7", vec({38.4139618, 52.8586378, 70.4726957, 84.4957161, 90}), 16.090273},
        {"R8", vec({5.95551185, 5.38871638, 5.3587e-06, 2.25664104}), 1616.1204},
    };
}

PowerModel weibull_jensen_model(const WindModelConstants& c) {
    return [c](const VectorXd& xs, const VectorXd& ys) {
        const Eigen::Index n = xs.size();
        VectorXd power = VectorXd::Zero(n);
        const double induction = 1.0 - std::sqrt(1.0 - c.thrust_coefficient);
        auto survival = [&](double v, double scale) { return std::exp(-std::pow(v / scale, c.weibull_shape)); };
        for (int s = 0; s < c.sectors; ++s) {
            const double theta = (s + 0.5) * 2.0 * kPi / c.sectors;
            const double ux = std::cos(theta), uy = std::sin(theta);
            const double weight = 1.0 / c.sectors;
            for (Eigen::Index i = 0; i < n; ++i) {
                double deficit2 = 0.0;
                for (Eigen::Index j = 0; j < n; ++j) {
                    if (j == i) continue;
                    const double dx = xs[i] - xs[j], dy = ys[i] - ys[j];
                    const double down = dx * ux + dy * uy;
                    if (down <= 0.0) continue;
                    const double lateral = std::abs(-dx * uy + dy * ux);
                    const double wake_radius = c.rotor_radius + c.wake_decay * down;
                    if (lateral > wake_radius) continue;
                    const double d = induction / std::pow(1.0 + c.wake_decay * down / c.rotor_radius, 2.0);
                    deficit2 += d * d;
                }
                const double scale = c.weibull_scale * (1.0 - std::sqrt(deficit2));
                double e = c.rated_power * (survival(c.rated, scale) - survival(c.cut_out, scale));
                const double step = (c.rated - c.cut_in) / c.power_bins;
                for (int k = 1; k <= c.power_bins; ++k) {
                    const double v0 = c.cut_in + (k - 1) * step, v1 = c.cut_in + k * step;
                    const double mid = std::exp(0.5 * (v0 + v1));
                    e += (survival(v0, scale) - survival(v1, scale)) * mid / (c.alpha + c.beta * mid);
                }
                power[i] += weight * e;
            }
        }
        return power;
    };
}

ConstrainedProblem make_wind_farm(const PowerModel& model, double rotor_radius) {
    static constexpr int kTurbines = 15;
    // Spacing pairs i < j <= 14, which gives the 91 constraints listed for this problem.
    static constexpr int kPairs = 13 * 14 / 2;
    auto p = base("R10", "wind farm layout", VectorXd::Constant(2 * kTurbines, 40.0),
                  VectorXd::Constant(2 * kTurbines, 1960.0), kPairs, 0);
    p.inequality_scale = VectorXd::Constant(kPairs, 5.0 * rotor_radius);
    p.model = [model, rotor_radius](const VectorXd& v) {
        const VectorXd xs = v.head(kTurbines), ys = v.tail(kTurbines);
        RawEvaluation r;
        r.f = -model(xs, ys).sum();
        r.g = VectorXd(kPairs);
        int k = 0;
        for (int i = 0; i < 14; ++i)
            for (int j = i + 1; j < 14; ++j)
                r.g[k++] = 5.0 * rotor_radius - std::hypot(xs[i] - xs[j], ys[i] - ys[j]);
        r.h = VectorXd(0);
        return r;
    };
    return p;
}

}  // namespace dogfight
