#include "qpot/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>

#include "qpot/errors.hpp"

namespace qpot {

namespace {
constexpr char grid_magic[8] = {'Q', 'P', 'G', 'R', 'I', 'D', '0', '1'};
}

Grid4::Grid4(int n_axis, DomainKind dk, double radius)
    : n_(n_axis),
      domain_(dk),
      radius_(radius),
      extent_(dk == DomainKind::Box ? 1.0 : radius),
      h_(2.0 * extent_ / (n_axis - 1)),
      count_(static_cast<int64_t>(n_axis) * n_axis * n_axis * n_axis),
      strides_{1, n_axis, static_cast<int64_t>(n_axis) * n_axis,
               static_cast<int64_t>(n_axis) * n_axis * n_axis} {
    if (n_axis < 5 || n_axis % 2 == 0)
        throw InvalidInput("Grid4: node count per axis must be odd and >= 5");
    if (dk == DomainKind::Ball && !(radius > 0.0))
        throw InvalidInput("Grid4: ball radius must be positive");
    classify();
}

std::shared_ptr<const Grid4> Grid4::make_box(int n_axis) {
    return std::shared_ptr<const Grid4>(new Grid4(n_axis, DomainKind::Box, 1.0));
}

std::shared_ptr<const Grid4> Grid4::make_ball(int n_axis, double radius) {
    return std::shared_ptr<const Grid4>(new Grid4(n_axis, DomainKind::Ball, radius));
}

std::array<int, 4> Grid4::multi_index(int64_t idx) const {
    std::array<int, 4> mi;
    for (int m = 0; m < 4; ++m) {
        mi[m] = static_cast<int>(idx % n_);
        idx /= n_;
    }
    return mi;
}

std::array<double, 4> Grid4::coords(int64_t idx) const {
    const std::array<int, 4> mi = multi_index(idx);
    return {axis_coord(mi[0]), axis_coord(mi[1]), axis_coord(mi[2]), axis_coord(mi[3])};
}

void Grid4::classify() {
    kind_.assign(static_cast<size_t>(count_), NodeKind::Outside);
    if (domain_ == DomainKind::Box) {
        for (int64_t idx = 0; idx < count_; ++idx) {
            const std::array<int, 4> mi = multi_index(idx);
            const bool inner = mi[0] > 0 && mi[0] < n_ - 1 && mi[1] > 0 && mi[1] < n_ - 1 &&
                               mi[2] > 0 && mi[2] < n_ - 1 && mi[3] > 0 && mi[3] < n_ - 1;
            kind_[static_cast<size_t>(idx)] = inner ? NodeKind::Interior : NodeKind::Boundary;
        }
    } else {
        const double r2 = radius_ * radius_;
        const double inside_bound = r2 * (1.0 - 1e-12);
        for (int64_t idx = 0; idx < count_; ++idx) {
            const std::array<double, 4> x = coords(idx);
            const double q = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
            if (q < inside_bound) kind_[static_cast<size_t>(idx)] = NodeKind::Interior;
        }
        // Ghost ring: outside nodes adjacent to an interior node carry data.
        for (int64_t idx = 0; idx < count_; ++idx) {
            if (kind_[static_cast<size_t>(idx)] != NodeKind::Interior) continue;
            const std::array<int, 4> mi = multi_index(idx);
            for (int m = 0; m < 4; ++m)
                for (int dir = -1; dir <= 1; dir += 2) {
                    const int j = mi[m] + dir;
                    if (j < 0 || j >= n_)
                        throw InvalidInput("Grid4: interior node touches the lattice edge; increase N");
                    const int64_t nb = idx + dir * strides_[m];
                    if (kind_[static_cast<size_t>(nb)] == NodeKind::Outside)
                        kind_[static_cast<size_t>(nb)] = NodeKind::Boundary;
                }
        }
    }
    for (int64_t idx = 0; idx < count_; ++idx) {
        if (kind_[static_cast<size_t>(idx)] == NodeKind::Interior) interior_.push_back(idx);
        else if (kind_[static_cast<size_t>(idx)] == NodeKind::Boundary) boundary_.push_back(idx);
    }
    if (interior_.empty()) throw InvalidInput("Grid4: no interior nodes; domain too small for N");
}

GridFunction::GridFunction(std::shared_ptr<const Grid4> grid, double init)
    : grid_(std::move(grid)), v_(static_cast<size_t>(grid_->node_count()), init) {}

GridFunction GridFunction::sample(std::shared_ptr<const Grid4> grid, const ScalarField& u) {
    if (u.n != 1) throw InvalidInput("GridFunction::sample: grid fields require n = 1");
    GridFunction f(grid, 0.0);
    auto eval_at = [&](int64_t idx) {
        const std::array<double, 4> x = grid->coords(idx);
        f[idx] = u(std::span<const double>(x.data(), 4));
    };
    for (int64_t idx : grid->interior()) eval_at(idx);
    for (int64_t idx : grid->boundary()) eval_at(idx);
    return f;
}

double GridFunction::norm_inf() const {
    double m = 0.0;
    for (int64_t idx : grid_->interior()) m = std::max(m, std::abs(v_[static_cast<size_t>(idx)]));
    for (int64_t idx : grid_->boundary()) m = std::max(m, std::abs(v_[static_cast<size_t>(idx)]));
    return m;
}

double GridFunction::min_interior() const {
    double m = std::numeric_limits<double>::infinity();
    for (int64_t idx : grid_->interior()) m = std::min(m, v_[static_cast<size_t>(idx)]);
    return m;
}

void GridFunction::set_boundary(double c) {
    for (int64_t idx : grid_->boundary()) v_[static_cast<size_t>(idx)] = c;
}

void GridFunction::set_boundary(const ScalarField& g) {
    if (g.n != 1) throw InvalidInput("GridFunction::set_boundary: grid fields require n = 1");
    for (int64_t idx : grid_->boundary()) {
        const std::array<double, 4> x = grid_->coords(idx);
        v_[static_cast<size_t>(idx)] = g(std::span<const double>(x.data(), 4));
    }
}

void GridFunction::save(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InvalidInput("GridFunction::save: cannot open " + path);
    os.write(grid_magic, sizeof(grid_magic));
    const uint32_t n = static_cast<uint32_t>(grid_->n_axis());
    const uint32_t dk = static_cast<uint32_t>(grid_->domain());
    const double h = grid_->spacing();
    const double r = grid_->radius();
    os.write(reinterpret_cast<const char*>(&n), sizeof(n));
    os.write(reinterpret_cast<const char*>(&dk), sizeof(dk));
    os.write(reinterpret_cast<const char*>(&h), sizeof(h));
    os.write(reinterpret_cast<const char*>(&r), sizeof(r));
    os.write(reinterpret_cast<const char*>(v_.data()),
             static_cast<std::streamsize>(v_.size() * sizeof(double)));
    if (!os) throw InvalidInput("GridFunction::save: write failure on " + path);
}

GridFunction GridFunction::load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InvalidInput("GridFunction::load: cannot open " + path);
    char magic[8];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, grid_magic, sizeof(magic)) != 0)
        throw InvalidInput("GridFunction::load: bad magic in " + path);
    uint32_t n = 0, dk = 0;
    double h = 0.0, r = 0.0;
    is.read(reinterpret_cast<char*>(&n), sizeof(n));
    is.read(reinterpret_cast<char*>(&dk), sizeof(dk));
    is.read(reinterpret_cast<char*>(&h), sizeof(h));
    is.read(reinterpret_cast<char*>(&r), sizeof(r));
    if (!is || (dk != 0 && dk != 1)) throw InvalidInput("GridFunction::load: bad header in " + path);
    auto grid = dk == 0 ? Grid4::make_box(static_cast<int>(n))
                        : Grid4::make_ball(static_cast<int>(n), r);
    if (std::abs(grid->spacing() - h) > 1e-12 * grid->spacing())
        throw InvalidInput("GridFunction::load: header spacing mismatch in " + path);
    GridFunction f(grid, 0.0);
    is.read(reinterpret_cast<char*>(f.v_.data()),
            static_cast<std::streamsize>(f.v_.size() * sizeof(double)));
    if (!is) throw InvalidInput("GridFunction::load: truncated values in " + path);
    return f;
}

void GridFunction::export_csv(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw InvalidInput("GridFunction::export_csv: cannot open " + path);
    os << "index,x0,x1,x2,x3,value\n";
    char line[256];
    for (int64_t idx = 0; idx < grid_->node_count(); ++idx) {
        if (grid_->kind(idx) == NodeKind::Outside) continue;
        const std::array<double, 4> x = grid_->coords(idx);
        std::snprintf(line, sizeof(line), "%lld,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      static_cast<long long>(idx), x[0], x[1], x[2], x[3],
                      v_[static_cast<size_t>(idx)]);
        os << line;
    }
    if (!os) throw InvalidInput("GridFunction::export_csv: write failure on " + path);
}

GridFunction gf_max(const GridFunction& a, const GridFunction& b) {
    if (!a.grid()->same(*b.grid())) throw InvalidInput("gf_max: grid mismatch");
    GridFunction out = a;
    for (size_t i = 0; i < out.values().size(); ++i)
        out.values()[i] = std::max(a.values()[i], b.values()[i]);
    return out;
}

GridFunction gf_max(const GridFunction& a, double c) {
    GridFunction out = a;
    for (double& v : out.values()) v = std::max(v, c);
    return out;
}

double MeasureGrid::total_mass() const {
    double s = 0.0;
    for (int64_t idx : grid->interior()) s += density[static_cast<size_t>(idx)];
    return s * grid->cell_volume();
}

double MeasureGrid::max_density() const {
    double m = 0.0;
    for (int64_t idx : grid->interior()) m = std::max(m, density[static_cast<size_t>(idx)]);
    return m;
}

double MeasureGrid::mass_on(const std::vector<int64_t>& nodes) const {
    double s = 0.0;
    for (int64_t idx : nodes) s += density[static_cast<size_t>(idx)];
    return s * grid->cell_volume();
}

MeasureGrid make_constant_measure(std::shared_ptr<const Grid4> grid, double density) {
    if (density < 0.0) throw InvalidInput("make_constant_measure: negative density");
    MeasureGrid m{grid, std::vector<double>(static_cast<size_t>(grid->node_count()), 0.0)};
    for (int64_t idx : grid->interior()) m.density[static_cast<size_t>(idx)] = density;
    return m;
}

MeasureGrid make_point_mass(std::shared_ptr<const Grid4> grid, int64_t node, double mass) {
    if (grid->kind(node) != NodeKind::Interior)
        throw InvalidInput("make_point_mass: node must be interior");
    if (mass < 0.0) throw InvalidInput("make_point_mass: negative mass");
    MeasureGrid m{grid, std::vector<double>(static_cast<size_t>(grid->node_count()), 0.0)};
    m.density[static_cast<size_t>(node)] = mass / grid->cell_volume();
    return m;
}

} // namespace qpot
