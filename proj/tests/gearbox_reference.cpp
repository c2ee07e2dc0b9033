#include "gearbox_reference.hpp"

#include <cmath>

GearboxReference gearbox_reference(const std::vector<double>& x) {
    const double pi = 3.14159265358979323846;
    auto Np = [&](int i) { return x[2 * (i - 1)]; };
    auto Ng = [&](int i) { return x[2 * (i - 1) + 1]; };
    auto b = [&](int i) { return x[7 + i]; };
    auto xg = [&](int i) { return x[12 + i]; };
    auto yg = [&](int i) { return x[17 + i]; };
    auto xp = [&](int i) { return i == 1 ? x[12] : xg(i - 1); };
    auto yp = [&](int i) { return i == 1 ? x[17] : yg(i - 1); };
    auto c = [&](int i) {
        const double dy = yg(i) - yp(i), dx = xg(i) - xp(i);
        return std::sqrt(dy * dy + dx * dx);
    };

    const double K0 = 1.5, dmin = 25, JR = 0.2, W = 55.9, KM = 1.6, CRmin = 1.4, Lmax = 127, Cp = 464, sH = 3290,
                 wmax = 255, w1 = 5000, sN = 2090, wmin = 245;
    const double phi = 20.0 * pi / 180.0;

    GearboxReference r{};
    double sum = 0;
    for (int i = 1; i <= 4; ++i) {
        const double s = Np(i) + Ng(i);
        sum += b(i) * c(i) * c(i) * (Np(i) * Np(i) + Ng(i) * Ng(i)) / (s * s);
    }
    r.f = pi / 1000 * sum;

    // Speed factor in front of stage i: 366000 / (pi w1) times the gear ratios of the earlier stages.
    auto lead = [&](int i) {
        double v = 366000 / (pi * w1);
        for (int k = 1; k < i; ++k) v = v * Ng(k) / Np(k);
        return v;
    };
    auto g = [&](int k) -> double& { return r.g[k - 1]; };

    for (int i = 1; i <= 4; ++i) {
        const double s = Np(i) + Ng(i);
        const double pitch = 2 * c(i) * Np(i) / s;
        const double bend = s * s / (4 * b(i) * c(i) * c(i) * Np(i));
        g(i) = lead(i) * bend + pitch * bend - sN * JR / (0.0167 * W * K0 * KM);
        const double wear = s * s * s / (4 * b(i) * c(i) * c(i) * Ng(i) * Np(i) * Np(i));
        g(4 + i) = (lead(i) + pitch) * wear - (sH / Cp) * (sH / Cp) * (std::sin(phi) * std::cos(phi)) /
                                                   (0.0334 * W * K0 * KM);
        const double q = std::pow(std::sin(phi), 2) / 4;
        g(8 + i) = -Ng(i) * std::sqrt(q + 1 / Ng(i) + std::pow(1 / Ng(i), 2)) -
                   Np(i) * std::sqrt(q + 1 / Np(i) + std::pow(1 / Np(i), 2)) + s * std::sin(phi) / 2 +
                   CRmin * pi * std::cos(phi);
        g(12 + i) = dmin - 2 * c(i) * Np(i) / s;
        g(16 + i) = dmin - 2 * c(i) * Ng(i) / s;
        const double rp = (Np(i) + 2) * c(i) / s;
        const double rg = (Ng(i) + 2) * c(i) / s;
        g(20 + i) = xp(i) + rp - Lmax;
        g(24 + i) = rp - xp(i);
        g(28 + i) = yp(i) + rp - Lmax;
        g(32 + i) = rp - yp(i);
        g(36 + i) = rg - Lmax + xg(i);
        g(40 + i) = rg - xg(i);
        g(44 + i) = rg - Lmax + yg(i);
        g(48 + i) = rg - yg(i);
        const double B = b(i), C = c(i);
        g(52 + i) = s * (B - 8.255) * (B - 5.715) * (B - 12.7) - 0.945 * C * (B - 8.255) * (B - 5.715) * (B - 12.7);
        g(56 + i) = -s * (B - 8.255) * (B - 3.175) * (B - 12.7) + 0.646 * C * (B - 8.255) * (B - 3.175) * (B - 12.7);
        g(60 + i) = -s * (B - 5.715) * (B - 3.175) * (B - 12.7) + 0.504 * C * (B - 5.715) * (B - 3.175) * (B - 12.7);
        g(64 + i) = -s * (B - 5.715) * (B - 3.175) * (B - 8.255);
        g(68 + i) = -s * (B - 8.255) * (B - 5.715) * (B - 12.7) + 1.812 * C * (B - 8.255) * (B - 5.715) * (B - 12.7);
        g(72 + i) = s * (B - 8.255) * (B - 3.175) * (B - 12.7) - 0.945 * C * (B - 8.255) * (B - 3.175) * (B - 12.7);
        g(76 + i) = -s * (B - 5.715) * (B - 3.175) * (B - 12.7) + 0.646 * C * (B - 5.715) * (B - 3.175) * (B - 12.7);
        g(80 + i) = s * (B - 5.715) * (B - 3.175) * (B - 8.255) - 0.504 * C * (B - 5.715) * (B - 3.175) * (B - 8.255);
    }
    const double out = w1 * Np(1) * Np(2) * Np(3) * Np(4) / (Ng(1) * Ng(2) * Ng(3) * Ng(4));
    g(85) = wmin - out;
    g(86) = out - wmax;
    return r;
}
