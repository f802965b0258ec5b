#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qpot/field.hpp"

namespace qpot {

enum class DomainKind : uint32_t { Box = 0, Ball = 1 };
enum class NodeKind : uint8_t { Outside = 0, Boundary = 1, Interior = 2 };

// Uniform lattice over [-L, L]^4 (L = 1 for the box domain, L = R for the
// ball) with N odd nodes per axis, so the origin is a node. Interior nodes
// have complete 8-neighbor stencils whose neighbors are interior or boundary.
// For the box, boundary nodes are the lattice faces; for the ball, interior
// nodes are those strictly inside |x| < R and boundary nodes are the outside
// ghost ring adjacent to them (Dirichlet data carriers).
class Grid4 {
  public:
    static std::shared_ptr<const Grid4> make_box(int n_axis);
    static std::shared_ptr<const Grid4> make_ball(int n_axis, double radius);

    [[nodiscard]] int n_axis() const { return n_; }
    [[nodiscard]] double spacing() const { return h_; }
    [[nodiscard]] DomainKind domain() const { return domain_; }
    [[nodiscard]] double radius() const { return radius_; }
    [[nodiscard]] double half_extent() const { return extent_; }
    [[nodiscard]] int64_t node_count() const { return count_; }
    [[nodiscard]] double cell_volume() const { return h_ * h_ * h_ * h_; }

    [[nodiscard]] int64_t index(int i0, int i1, int i2, int i3) const {
        return i0 + static_cast<int64_t>(n_) * (i1 + static_cast<int64_t>(n_) * (i2 + static_cast<int64_t>(n_) * i3));
    }
    [[nodiscard]] std::array<int, 4> multi_index(int64_t idx) const;
    [[nodiscard]] std::array<double, 4> coords(int64_t idx) const;
    [[nodiscard]] double axis_coord(int i) const { return -extent_ + h_ * i; }

    [[nodiscard]] NodeKind kind(int64_t idx) const { return kind_[static_cast<size_t>(idx)]; }
    [[nodiscard]] const std::vector<int64_t>& interior() const { return interior_; }
    [[nodiscard]] const std::vector<int64_t>& boundary() const { return boundary_; }
    [[nodiscard]] const std::array<int64_t, 4>& strides() const { return strides_; }

    [[nodiscard]] bool same(const Grid4& o) const {
        return n_ == o.n_ && domain_ == o.domain_ && radius_ == o.radius_;
    }

  private:
    Grid4(int n_axis, DomainKind dk, double radius);
    void classify();

    int n_;
    DomainKind domain_;
    double radius_; // ball radius; 1.0 for box
    double extent_; // lattice half-width L
    double h_;
    int64_t count_;
    std::array<int64_t, 4> strides_;
    std::vector<NodeKind> kind_;
    std::vector<int64_t> interior_; // ascending flat indices; fixed sweep order
    std::vector<int64_t> boundary_;
};

// Node values over a grid. One flat array covers all nodes; boundary nodes
// hold Dirichlet data, outside nodes hold 0 and are never read by kernels.
class GridFunction {
  public:
    explicit GridFunction(std::shared_ptr<const Grid4> grid, double init = 0.0);

    // Evaluates the field at interior and boundary node coordinates.
    static GridFunction sample(std::shared_ptr<const Grid4> grid, const ScalarField& u);

    [[nodiscard]] const std::shared_ptr<const Grid4>& grid() const { return grid_; }
    [[nodiscard]] double operator[](int64_t idx) const { return v_[static_cast<size_t>(idx)]; }
    double& operator[](int64_t idx) { return v_[static_cast<size_t>(idx)]; }
    [[nodiscard]] const std::vector<double>& values() const { return v_; }
    [[nodiscard]] std::vector<double>& values() { return v_; }

    // Max |value| over interior plus boundary nodes.
    [[nodiscard]] double norm_inf() const;
    [[nodiscard]] double min_interior() const;

    void set_boundary(double c);
    void set_boundary(const ScalarField& g);

    // Binary grid file: magic "QPGRID01", u32 N, u32 domain kind, f64 h,
    // f64 radius, then N^4 node values as little-endian f64 in flat index
    // order (x0 fastest).
    void save(const std::string& path) const;
    static GridFunction load(const std::string& path);

    // CSV rows "index,x0,x1,x2,x3,value" for interior and boundary nodes.
    void export_csv(const std::string& path) const;

  private:
    std::shared_ptr<const Grid4> grid_;
    std::vector<double> v_;
};

[[nodiscard]] GridFunction gf_max(const GridFunction& a, const GridFunction& b);
[[nodiscard]] GridFunction gf_max(const GridFunction& a, double c);

// Nonnegative density per interior node; mass element is density * h^4.
struct MeasureGrid {
    std::shared_ptr<const Grid4> grid;
    std::vector<double> density;

    [[nodiscard]] double total_mass() const;
    [[nodiscard]] double max_density() const;
    [[nodiscard]] double mass_on(const std::vector<int64_t>& nodes) const;
};

MeasureGrid make_constant_measure(std::shared_ptr<const Grid4> grid, double density);
MeasureGrid make_point_mass(std::shared_ptr<const Grid4> grid, int64_t node, double mass);

} // namespace qpot
