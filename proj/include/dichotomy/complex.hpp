#pragma once

// Finite abstract simplicial complexes stored by their maximal faces.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dichotomy {

/// Sorted list of vertex indices.
using Face = std::vector<int>;

/// Error raised on malformed input (bad parameters, invalid complexes, parse errors).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Error raised when a computed object contradicts a proven invariant.
class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Vertex label order: shorter labels first, then lexicographic.
bool label_less(std::string_view a, std::string_view b);

/// Unvalidated complex description, as read from JSON.
struct ComplexData {
    std::vector<std::string> vertices;
    std::vector<std::vector<std::string>> maximal_faces;
};

/// Lists every violated invariant of `data`; empty when it describes a valid complex.
std::vector<std::string> validate(const ComplexData& data);

class Complex {
public:
    /// The empty complex (no vertices, face family {∅}).
    Complex() = default;

    /// Builds the downward closure of `faces`. Vertices not covered by any face become
    /// singleton faces; subsumed faces are dropped.
    static Complex from_faces(std::vector<std::string> vertices,
                              const std::vector<std::vector<std::string>>& faces);

    /// Same as from_faces, with faces given as indices into `vertices` (any order).
    static Complex from_index_faces(std::vector<std::string> vertices, std::vector<Face> faces);

    /// Strict construction: throws InputError listing the violations from validate().
    static Complex from_data(const ComplexData& data);

    int size() const { return static_cast<int>(labels_.size()); }
    bool empty() const { return labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int v) const { return labels_.at(static_cast<std::size_t>(v)); }
    const std::vector<Face>& maximal_faces() const { return maximal_; }

    /// Max face size minus one; -1 for the empty complex.
    int dimension() const;

    std::optional<int> find(std::string_view label) const;
    /// Index of `label`; throws InputError when absent.
    int index(std::string_view label) const;

    /// `face` must be sorted and duplicate free.
    bool is_face(std::span<const int> face) const;
    /// Accepts any vertex list (duplicates allowed).
    bool contains_face(std::vector<int> vertices) const;

    /// All nonempty faces ordered by size, then lexicographically.
    std::vector<Face> all_faces() const;
    /// Number of faces per dimension (index k = faces with k+1 vertices).
    std::vector<std::size_t> face_counts() const;

    ComplexData data() const;

    friend bool operator==(const Complex& a, const Complex& b)
    {
        return a.labels_ == b.labels_ && a.maximal_ == b.maximal_;
    }

private:
    std::vector<std::string> labels_;
    std::vector<Face> maximal_;
    std::unordered_map<std::string, int> index_;
};

/// Total map between the vertex sets of two complexes.
struct SimplicialMap {
    Complex source;
    Complex target;
    std::vector<int> assignment;  // target index per source vertex

    /// Throws InputError if some source vertex is missing from `labels`.
    static SimplicialMap from_labels(Complex source, Complex target,
                                     const std::map<std::string, std::string>& labels);
};

/// Partial map ρ: α′ → B, keyed by source vertex index.
using PartialVertexMap = std::map<int, int>;

// Constructors.
Complex path(int n);
Complex cycle(int n);
Complex full_simplex(int k);
Complex product(const Complex& a, const Complex& b);
Complex skeleton(const Complex& c, int n);
Complex subdivision(const Complex& c);
/// Full subcomplex on the given vertices.
Complex induced_subcomplex(const Complex& c, const std::vector<int>& vertices);
/// Disjoint union; vertices relabeled "0:x" and "1:x".
Complex disjoint_union(const Complex& a, const Complex& b);
/// Identifies the vertices in each class. Default class labels: the member label for
/// singletons, "[a,b,...]" otherwise.
Complex quotient(const Complex& c, const std::vector<std::vector<int>>& classes,
                 const std::vector<std::string>& class_labels = {});

/// Image of every face is a face (checked on maximal faces).
bool is_simplicial_map(const SimplicialMap& m);
/// Checks only faces with at most dim(target)+2 vertices.
bool is_simplicial_map_truncated(const SimplicialMap& m);

/// Brute-force isomorphism test for small complexes.
bool isomorphic(const Complex& a, const Complex& b);

}  // namespace dichotomy
