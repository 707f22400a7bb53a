#ifndef PLCERF_TYPES_HPP
#define PLCERF_TYPES_HPP

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace plcerf {

// Dense vertex index in [0, vertex_count).
using VertexId = std::uint32_t;
inline constexpr VertexId kInvalidVertex = static_cast<VertexId>(-1);

// Highest ambient dimension the library accepts. Manifold validation is
// exact only up to dimension 3; higher dimensions are rejected on input.
inline constexpr int kMaxDim = 7;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a sweep in strict mode meets input that violates the
// one-parameter Morse-family assumptions.
struct NonGenericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A simplex as a strictly increasing vertex list.
struct Simplex {
    std::vector<VertexId> vertices;

    Simplex() = default;
    explicit Simplex(std::vector<VertexId> verts) : vertices(std::move(verts)) {}

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
    bool operator==(const Simplex&) const = default;
    auto operator<=>(const Simplex&) const = default;
};

// Vector of homological indices: entry i holds the rank of the reduced
// homology of one dimension lower, so entry 0 is 1 exactly when the
// underlying complex is empty.
class BettiVector {
  public:
    BettiVector() = default;
    explicit BettiVector(int entries) : size_(static_cast<std::uint8_t>(entries + 0)) {
        if (entries < 0 || entries > kMaxDim + 1)
            throw std::length_error("BettiVector: unsupported length");
    }

    int size() const { return size_; }
    int operator[](int i) const { return data_[static_cast<std::size_t>(i)]; }
    int& operator[](int i) { return data_[static_cast<std::size_t>(i)]; }

    bool is_zero() const {
        for (int i = 0; i < size_; ++i)
            if (data_[static_cast<std::size_t>(i)] != 0) return false;
        return true;
    }

    // Sum of (-1)^i * entry_i; equals the drop of the lower-star Euler
    // increment and drives every TV-ECC weight.
    long long alternating_sum() const {
        long long s = 0;
        for (int i = 0; i < size_; ++i)
            s += (i % 2 == 0) ? data_[static_cast<std::size_t>(i)] : -data_[static_cast<std::size_t>(i)];
        return s;
    }

    // If exactly one entry is non-zero, reports its position and value.
    bool single_nonzero(int& index, int& multiplicity) const {
        index = -1;
        multiplicity = 0;
        for (int i = 0; i < size_; ++i) {
            if (data_[static_cast<std::size_t>(i)] != 0) {
                if (index >= 0) return false;
                index = i;
                multiplicity = data_[static_cast<std::size_t>(i)];
            }
        }
        return index >= 0;
    }

    bool operator==(const BettiVector& o) const {
        if (size_ != o.size_) return false;
        for (int i = 0; i < size_; ++i)
            if (data_[static_cast<std::size_t>(i)] != o.data_[static_cast<std::size_t>(i)]) return false;
        return true;
    }
    bool operator!=(const BettiVector& o) const { return !(*this == o); }

    std::string to_string() const {
        std::string s = "(";
        for (int i = 0; i < size_; ++i) {
            if (i) s += ",";
            s += std::to_string(data_[static_cast<std::size_t>(i)]);
        }
        return s + ")";
    }

  private:
    std::uint8_t size_ = 0;
    std::array<int, kMaxDim + 1> data_{};
};

// Per-vertex scalar values; ties in value are broken by vertex id, which
// makes the induced total order strict for any input.
class Valuation {
  public:
    Valuation() = default;
    explicit Valuation(std::vector<double> values) : values_(std::move(values)) {}

    std::size_t size() const { return values_.size(); }
    double operator[](VertexId v) const { return values_[v]; }
    double& operator[](VertexId v) { return values_[v]; }
    const std::vector<double>& values() const { return values_; }

    // Strict tie-broken order: (value, id) lexicographic.
    bool below(VertexId a, VertexId b) const {
        const double fa = values_[a], fb = values_[b];
        if (fa != fb) return fa < fb;
        return a < b;
    }

  private:
    std::vector<double> values_;
};

} // namespace plcerf

#endif
