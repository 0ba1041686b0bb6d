#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavelab {

enum class ErrorKind { invalid_argument, grid_mismatch, window_violation, coverage, numerical };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

struct ModelParams {
    double m = 3.0;
    int iota = 1;

    ModelParams() = default;
    ModelParams(double m_, int iota_);

    double s_c() const { return 1.5 - 1.0 / m; }
    // Energy-critical exponent: the dichotomy experiments flag it.
    bool is_critical() const { return m == 2.0; }
};

struct RadialGrid {
    double h = 0.0;
    std::size_t n = 0;

    RadialGrid() = default;
    RadialGrid(double h_, std::size_t n_);

    double r(std::size_t j) const { return static_cast<double>(j) * h; }
    double extent() const { return static_cast<double>(n - 1) * h; }
    bool same_as(const RadialGrid& o) const { return h == o.h && n == o.n; }
    // Grid of spacing h whose last node is at or just beyond radius.
    static RadialGrid covering(double h, double radius);
};

struct RadialPair {
    RadialGrid grid;
    std::vector<double> u0;
    std::vector<double> u1;
    std::optional<std::vector<double>> du0;
    // Data are constant (u0) and static (u1 = 0) for r < flat_below; set by truncation.
    double flat_below = 0.0;

    RadialPair() = default;
    RadialPair(RadialGrid g, std::vector<double> a, std::vector<double> b,
               std::optional<std::vector<double>> da = std::nullopt);

    void validate() const;
    // d/dr u0: the stored samples when present, finite differences otherwise.
    std::vector<double> derivative() const;
};

struct DecayReport {
    double boundary_value = 0.0;
    double interior_max = 0.0;
    double ratio = 0.0;
    bool ok = true;
};

DecayReport decay_check(const RadialPair& pair, double m, double decay_tol = 1e-3);

struct CharProfile {
    double h = 0.0;
    long kmax = 0;
    std::vector<double> fdot;  // index k + kmax holds the sample at sigma = k h

    CharProfile() = default;
    CharProfile(double h_, long kmax_);
    CharProfile(double h_, long kmax_, std::vector<double> samples);

    double window() const { return static_cast<double>(kmax) * h; }
    std::size_t size() const { return fdot.size(); }
    double sigma(long k) const { return static_cast<double>(k) * h; }
    double at(long k) const {
        return (k < -kmax || k > kmax) ? 0.0 : fdot[static_cast<std::size_t>(k + kmax)];
    }
    double& ref(long k) { return fdot[static_cast<std::size_t>(k + kmax)]; }
    // Off-grid value by local cubic interpolation; zero outside the window.
    double eval(double s) const;
    // F with F(0) = 0, same indexing as fdot.
    std::vector<double> cumulative() const;
    void validate() const;
};

// Radial space-time samples of U = r u and its time derivative on a characteristic
// lattice (dt = h * stride).  Frame i sits at t0 + direction * i * stride * h.
struct SpaceTimeField {
    RadialGrid grid;
    double t0 = 0.0;
    int direction = 1;
    std::size_t stride = 1;
    std::vector<std::vector<double>> U;
    std::vector<std::vector<double>> Ut;
    std::optional<double> cone_A;
    // Per-frame outer radius beyond which samples are not trusted.
    std::vector<double> valid_radius;

    std::size_t frames() const { return U.size(); }
    double dt() const { return grid.h * static_cast<double>(stride); }
    double t(std::size_t i) const { return t0 + direction * static_cast<double>(i) * dt(); }
    double radius_limit(std::size_t i) const {
        return valid_radius.empty() ? grid.extent() : valid_radius[i];
    }
    // u = U / r, with the odd-extension limit at r = 0.
    double u(std::size_t i, std::size_t j) const;
    std::vector<double> u_frame(std::size_t i) const;
    void push(std::vector<double> frame, std::vector<double> frame_t, double valid);
};

// Source term f(t_i, r_j) on a lattice with dt = h, t_i = t0 + i h.
struct SourceField {
    RadialGrid grid;
    double t0 = 0.0;
    std::vector<std::vector<double>> f;

    std::size_t frames() const { return f.size(); }
    double t(std::size_t i) const { return t0 + static_cast<double>(i) * grid.h; }
};

}  // namespace wavelab
