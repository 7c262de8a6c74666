#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gammamod {

using Residue = std::uint32_t;
using FieldVec = std::vector<Residue>;

bool is_prime(std::uint32_t p);

// Dense matrix over F_p, row-major. p must be a prime below 2^16.
class FieldMat {
 public:
  FieldMat() = default;
  FieldMat(std::uint32_t p, std::size_t rows, std::size_t cols);
  static FieldMat identity(std::uint32_t p, std::size_t n);
  // Entries are reduced mod p (negative values allowed).
  static FieldMat from_rows(std::uint32_t p, const std::vector<std::vector<long long>>& rows,
                            std::size_t cols = 0);
  static FieldMat column(std::uint32_t p, const FieldVec& v);

  std::uint32_t prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Residue operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, long long v);
  Residue* row_ptr(std::size_t r) { return a_.data() + r * cols_; }
  const Residue* row_ptr(std::size_t r) const { return a_.data() + r * cols_; }
  const std::vector<Residue>& data() const { return a_; }

  bool is_zero() const;
  bool is_identity() const;
  FieldMat transpose() const;
  FieldMat operator*(const FieldMat& o) const;
  FieldMat operator+(const FieldMat& o) const;
  FieldMat operator-(const FieldMat& o) const;
  FieldMat scaled(Residue s) const;
  FieldVec apply(const FieldVec& x) const;
  FieldMat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const FieldMat& b);
  std::string key() const;
  std::string str() const;

  friend bool operator==(const FieldMat& a, const FieldMat& b) {
    return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::uint32_t p_ = 2;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Residue> a_;
};

FieldMat hstack(const FieldMat& a, const FieldMat& b);
FieldMat vstack(const FieldMat& a, const FieldMat& b);
FieldMat block_diag(const FieldMat& a, const FieldMat& b);
// Kronecker product.
FieldMat kron(const FieldMat& a, const FieldMat& b);

Residue field_inv(Residue a, std::uint32_t p);

struct RrefResult {
  FieldMat reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

RrefResult rref(const FieldMat& m);
std::size_t rank(const FieldMat& m);
// Columns form a basis of ker m; shape cols(m) x (cols(m) - rank).
FieldMat kernel_basis(const FieldMat& m);
std::optional<FieldVec> solve(const FieldMat& m, const FieldVec& b);
// X with m X = b (b has several columns), if one exists.
std::optional<FieldMat> solve_matrix(const FieldMat& m, const FieldMat& b);
// Columns form a basis of the column space.
FieldMat image_basis(const FieldMat& m);
// Q with ker Q = im m; shape (rows - rank) x rows.
FieldMat cokernel_projection(const FieldMat& m);

}  // namespace gammamod
