#pragma once

// Finitely supported complex functions on Z^d, stored sparsely in canonical
// (lexicographic) key order. Exact zeros are never stored.

#include <map>
#include <unordered_map>

#include "triadne/core.hpp"
#include "triadne/report.hpp"

namespace triadne {

struct VecHash {
    size_t operator()(const LatticeVector& v) const noexcept {
        u64 h = 0x9e3779b97f4a7c15ull;
        for (i64 x : v) {
            h ^= u64(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
        }
        return size_t(h ^ (h >> 33));
    }
};

class GridFunction {
  public:
    using Map = std::map<LatticeVector, cplx>;

    explicit GridFunction(int d = 1);

    int dim() const { return d_; }
    size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const Map& entries() const { return entries_; }

    cplx at(const LatticeVector& x) const;
    void set(LatticeVector x, cplx v);
    void add(const LatticeVector& x, cplx v);

    static GridFunction delta(int d, LatticeVector at = {});
    GridFunction translated(const LatticeVector& w) const;
    GridFunction scaled(cplx c) const;
    GridFunction abs() const;
    GridFunction operator+(const GridFunction& o) const;
    GridFunction operator-(const GridFunction& o) const;

    double sup_norm() const;
    // max over support of the Euclidean distance between points
    double diameter() const;

    json to_json() const;
    static GridFunction from_json(const json& j);

  private:
    int d_;
    Map entries_;
};

// hash-map accumulator used by the convolution kernels
using SparseAccumulator = std::unordered_map<LatticeVector, cplx, VecHash>;
GridFunction from_accumulator(int d, const SparseAccumulator& acc);

}  // namespace triadne
