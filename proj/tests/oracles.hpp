#pragma once
// Brute-force reference implementations used to cross-check the library.
// Deliberately self-contained: no library helpers are called here.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

struct P {
    double x;
    double y;
};

struct Edge {
    std::size_t i;
    std::size_t j;
    double dx;
    double dy;
};

inline std::vector<Edge> edges(const std::vector<P>& pts, double rmin, double rmax) {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i == j) {
                continue;
            }
            const double dx = pts[i].x - pts[j].x;
            const double dy = pts[i].y - pts[j].y;
            const double d = std::hypot(dx, dy);
            if (d >= rmin && d <= rmax) {
                out.push_back({i, j, dx, dy});
            }
        }
    }
    return out;
}

inline double regularity(const std::vector<P>& pts, int L, double rmin, double rmax) {
    const auto e = edges(pts, rmin, rmax);
    const double n = static_cast<double>(e.size());
    if (e.size() <= 2) {
        return 1.0;
    }
    const double period = 2.0 * std::numbers::pi / L;
    double sum = 0.0;
    for (std::size_t a = 0; a < e.size(); ++a) {
        for (std::size_t b = 0; b < e.size(); ++b) {
            if (a == b || (e[a].i == e[b].j && e[a].j == e[b].i)) {
                continue;
            }
            const double cross = e[a].dx * e[b].dy - e[a].dy * e[b].dx;
            const double dot = e[a].dx * e[b].dx + e[a].dy * e[b].dy;
            const double ang = std::atan2(std::fabs(cross), dot);
            double best = ang;
            for (int q = -L; q <= L; ++q) {
                best = std::min(best, std::fabs(ang - q * period));
            }
            sum += best;
        }
    }
    return (L / std::numbers::pi) * sum / (n * n - 2.0 * n);
}

inline double compactness(const std::vector<P>& pts, int L, double rmin, double rmax) {
    double sum = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        int deg = 0;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i != j) {
                const double d = std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y);
                deg += (d >= rmin && d <= rmax) ? 1 : 0;
            }
        }
        sum += std::fabs(static_cast<double>(deg - L)) / L;
    }
    return sum / static_cast<double>(pts.size());
}

/// Random swarm with a spacing scale that yields plenty of links.
inline std::vector<P> random_swarm(std::mt19937& gen, std::size_t n, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<P> pts(n);
    for (auto& p : pts) {
        p = {u(gen), u(gen)};
    }
    return pts;
}

inline std::vector<P> square_grid(int rows, int cols, double spacing = 1.0) {
    std::vector<P> pts;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            pts.push_back({c * spacing, r * spacing});
        }
    }
    return pts;
}

inline std::vector<P> triangular_grid(int rows, int cols, double spacing = 1.0) {
    std::vector<P> pts;
    const double h = spacing * std::sqrt(3.0) / 2.0;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            pts.push_back({c * spacing + (r % 2) * spacing / 2.0, r * h});
        }
    }
    return pts;
}

}  // namespace oracle
