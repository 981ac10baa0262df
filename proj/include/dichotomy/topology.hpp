#pragma once

// Homotopy-invariant computations: components, integral homology, Euler
// characteristic, elementary collapses.

#include "dichotomy/complex.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace dichotomy {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    mpz_class& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const mpz_class& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    bool is_zero() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<mpz_class> data_;
};

/// Determinant by fraction-free elimination (square matrices only).
mpz_class determinant(const IntMatrix& m);

struct SmithForm {
    std::vector<mpz_class> diagonal;  // min(rows, cols) entries, d1 | d2 | ..., nonnegative
    IntMatrix u;                      // rows x rows, unimodular
    IntMatrix v;                      // cols x cols, unimodular
    int rank() const;
};

/// U * m * V = diag(diagonal).
SmithForm smith_normal_form(const IntMatrix& m);

struct ChainComplexData {
    /// bases[k] = k-faces (k+1 vertices), sorted.
    std::vector<std::vector<Face>> bases;
    /// boundaries[k] for k >= 1 maps k-chains to (k-1)-chains: rows = bases[k-1], cols = bases[k].
    /// boundaries[0] is the empty 0 x |bases[0]| matrix.
    std::vector<IntMatrix> boundaries;
};

ChainComplexData boundary_matrices(const Complex& c);

/// Vertex classes of "shares a face", each sorted, ordered by smallest member.
std::vector<std::vector<int>> connected_components(const Complex& c);

struct HomologyResult {
    std::vector<std::int64_t> betti;                 // per dimension 0..dim
    std::vector<std::vector<std::int64_t>> torsion;  // per dimension, entries >= 2

    bool trivial() const;
    friend bool operator==(const HomologyResult&, const HomologyResult&) = default;
};

HomologyResult integral_homology(const Complex& c);
/// Same with betti_0 decremented for nonempty complexes.
HomologyResult reduced_homology(const Complex& c);

std::int64_t euler_characteristic(const Complex& c);

struct CollapseResult {
    Complex reduced;
    bool fully_collapsed = false;
};

/// Greedy elementary collapses until no free face remains.
CollapseResult collapse(const Complex& c);

enum class Contractibility { Contractible, NotContractible, Inconclusive };

struct ComponentReport {
    std::vector<int> vertices;
    Contractibility verdict = Contractibility::Inconclusive;
    /// First nonzero reduced homology group, e.g. dimension 1, group "Z" or "Z/2".
    int obstruction_dimension = -1;
    std::string obstruction_group;
};

/// Collapsible components are contractible; nonzero reduced homology refutes.
std::vector<ComponentReport> component_contractibility(const Complex& c);

std::string to_string(Contractibility c);

}  // namespace dichotomy
