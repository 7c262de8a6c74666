#pragma once

#include "gammamod/field.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace gammamod {

// Finite poset diagram of F_p spaces. Arrows run from the smaller node to
// the larger one and are given on cover pairs only; composites along
// different paths must agree.
class Diagram {
 public:
  struct Arrow {
    std::size_t src, dst;
    FieldMat map;  // dim(dst) x dim(src)
  };

  Diagram(std::uint32_t p, std::vector<std::size_t> dims, std::vector<Arrow> arrows);

  std::uint32_t prime() const { return p_; }
  std::size_t size() const { return dims_.size(); }
  std::size_t dim(std::size_t node) const { return dims_[node]; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  // Composite map a -> b if a <= b, computed along any path.
  std::optional<FieldMat> composite(std::size_t a, std::size_t b) const;

 private:
  std::uint32_t p_;
  std::vector<std::size_t> dims_;
  std::vector<Arrow> arrows_;
  // composites_[a][b], empty when b is not above a
  std::vector<std::vector<std::optional<FieldMat>>> composites_;
};

struct LimitResult {
  std::size_t dim = 0;
  std::vector<FieldMat> projections;  // dim(node) x dim
};

struct ColimitResult {
  std::size_t dim = 0;
  std::vector<FieldMat> injections;  // dim x dim(node)
};

LimitResult limit(const Diagram& d);
ColimitResult colimit(const Diagram& d);

// Linear system whose unknowns are matrices X_k, with equations
// sum_t L_t X_{k_t} R_t = C. Unknowns are vectorized row-major.
class LinearSystem {
 public:
  struct Term {
    std::size_t unknown;
    FieldMat left, right;
  };

  explicit LinearSystem(std::uint32_t p) : p_(p) {}
  std::size_t add_unknown(std::size_t rows, std::size_t cols);
  void add_equation(std::vector<Term> terms, FieldMat rhs);

  std::uint32_t prime() const { return p_; }
  std::size_t num_unknowns() const { return shapes_.size(); }
  std::size_t num_variables() const { return offset_.empty() ? 0 : offset_.back() + size_of(shapes_.size() - 1); }
  std::size_t offset(std::size_t k) const { return offset_[k]; }
  std::pair<std::size_t, std::size_t> shape(std::size_t k) const { return shapes_[k]; }
  // Dense coefficient matrix and right-hand side column.
  std::pair<FieldMat, FieldVec> assemble() const;
  // Cuts a variable vector into the unknown matrices.
  std::vector<FieldMat> unpack(const FieldVec& x) const;
  FieldVec pack(const std::vector<FieldMat>& xs) const;

 private:
  std::size_t size_of(std::size_t k) const { return shapes_[k].first * shapes_[k].second; }
  std::uint32_t p_;
  std::vector<std::pair<std::size_t, std::size_t>> shapes_;
  std::vector<std::size_t> offset_;
  struct Equation {
    std::vector<Term> terms;
    FieldMat rhs;
  };
  std::vector<Equation> equations_;
};

struct AffineSpace {
  std::optional<FieldVec> particular;  // absent when the system is inconsistent
  FieldMat basis;                      // columns span the homogeneous solutions
};

AffineSpace affine_solution_space(const LinearSystem& sys);

}  // namespace gammamod
