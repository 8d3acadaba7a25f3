#include "flowshift/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flowshift {

bool Domain::contains(const Vec& x, double slack) const {
  if (x.size() != lo.size()) return false;
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (x[i] < lo[i] - slack || x[i] > hi[i] + slack) return false;
  return true;
}

Vec Domain::center() const {
  Vec c(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
  return c;
}

void Domain::validate() const {
  if (lo.empty() || lo.size() != hi.size())
    throw std::invalid_argument("Domain: dimension mismatch");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!std::isfinite(lo[i]) || !std::isfinite(hi[i]) || !(lo[i] < hi[i]))
      throw std::invalid_argument("Domain: requires lo < hi with finite bounds");
  }
}

void Grid::validate() const {
  domain.validate();
  if (res.size() != domain.dim())
    throw std::invalid_argument("Grid: resolution rank mismatch");
  for (std::size_t r : res)
    if (r < 2) throw std::invalid_argument("Grid: resolution >= 2 per axis");
}

std::size_t Grid::size() const {
  std::size_t n = 1;
  for (std::size_t r : res) n *= r;
  return n;
}

double Grid::step(std::size_t axis) const {
  return (domain.hi[axis] - domain.lo[axis]) / static_cast<double>(res[axis] - 1);
}

std::vector<std::size_t> Grid::coords(std::size_t flat) const {
  std::vector<std::size_t> c(res.size());
  for (std::size_t a = res.size(); a-- > 0;) {
    c[a] = flat % res[a];
    flat /= res[a];
  }
  return c;
}

std::size_t Grid::flat(const std::vector<std::size_t>& c) const {
  std::size_t f = 0;
  for (std::size_t a = 0; a < res.size(); ++a) f = f * res[a] + c[a];
  return f;
}

Vec Grid::point(std::size_t flatindex) const {
  const auto c = coords(flatindex);
  Vec p(res.size());
  for (std::size_t a = 0; a < res.size(); ++a)
    p[a] = domain.lo[a] + step(a) * static_cast<double>(c[a]);
  return p;
}

bool Grid::is_interior(std::size_t flatindex) const {
  const auto c = coords(flatindex);
  for (std::size_t a = 0; a < res.size(); ++a)
    if (c[a] == 0 || c[a] + 1 == res[a]) return false;
  return true;
}

double Grid::cell_diagonal() const {
  double s = 0.0;
  for (std::size_t a = 0; a < res.size(); ++a) s += step(a) * step(a);
  return std::sqrt(s);
}

std::size_t Grid::nearest(const Vec& x) const {
  std::vector<std::size_t> c(res.size());
  for (std::size_t a = 0; a < res.size(); ++a) {
    const double u = (x[a] - domain.lo[a]) / step(a);
    const double r = std::clamp(std::round(u), 0.0, static_cast<double>(res[a] - 1));
    c[a] = static_cast<std::size_t>(r);
  }
  return flat(c);
}

std::vector<std::size_t> Grid::neighbors(std::size_t flatindex) const {
  const auto c = coords(flatindex);
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < res.size(); ++a) {
    auto cc = c;
    if (c[a] > 0) {
      cc[a] = c[a] - 1;
      out.push_back(flat(cc));
    }
    if (c[a] + 1 < res[a]) {
      cc[a] = c[a] + 1;
      out.push_back(flat(cc));
    }
  }
  return out;
}

namespace {

void serpentine_rec(const Grid& g, std::size_t axis, std::vector<std::size_t>& prefix,
                    bool reverse, std::vector<std::size_t>& out) {
  const std::size_t n = g.res[axis];
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t idx = reverse ? n - 1 - k : k;
    prefix[axis] = idx;
    if (axis + 1 == g.res.size()) {
      out.push_back(g.flat(prefix));
    } else {
      // Alternate direction of the inner sweep so consecutive points stay
      // adjacent across row boundaries.
      serpentine_rec(g, axis + 1, prefix, (k % 2) == 1 ? !reverse : reverse, out);
    }
  }
}

}  // namespace

std::vector<std::size_t> serpentine_order(const Grid& g) {
  std::vector<std::size_t> out;
  out.reserve(g.size());
  std::vector<std::size_t> prefix(g.res.size(), 0);
  serpentine_rec(g, 0, prefix, false, out);
  return out;
}

Grid make_grid_1d(double lo, double hi, std::size_t n) {
  Grid g{{{lo}, {hi}}, {n}};
  g.validate();
  return g;
}

Grid make_grid_2d(double xlo, double xhi, double ylo, double yhi, std::size_t nx,
                  std::size_t ny) {
  Grid g{{{xlo, ylo}, {xhi, yhi}}, {nx, ny}};
  g.validate();
  return g;
}

}  // namespace flowshift
