#pragma once

#include <map>
#include <optional>

#include "semnorm/poly.hpp"

namespace semnorm {

// Sparse vector over a field coefficient ring, keyed by interned coordinates.
using SparseVec = std::map<size_t, RingValue>;

// Incremental echelon basis of a span of sparse vectors over a field. Columns
// are added once; membership and exact expression queries run against the
// echelonized basis. Combinations are tracked over the original column ids.
class SpanSolver {
  public:
    explicit SpanSolver(RingPtr field);

    void add_vector(size_t column_id, SparseVec v);
    bool contains(SparseVec target) const;
    // coefficients over the original column ids with target = sum coeff·col
    std::optional<std::map<size_t, RingValue>> express(SparseVec target) const;

  private:
    struct Row {
        SparseVec vec;                        // echelonized, pivot = smallest key
        std::map<size_t, RingValue> combo;    // over original column ids
    };
    RingPtr field_;
    std::map<size_t, Row> rows_;  // pivot -> row

    // reduce v against the rows; returns the residual and accumulates the
    // combination used
    SparseVec reduce(SparseVec v, std::map<size_t, RingValue>* combo) const;
};

// Interns flat-term exponent vectors of ambient values as coordinate ids.
class CoordSpace {
  public:
    explicit CoordSpace(RingPtr scalar_field) : field_(std::move(scalar_field)) {}
    const RingPtr& field() const { return field_; }
    // coordinates of an ambient ring value (its flat terms)
    SparseVec coords(const RingValue& ambient_value);

  private:
    RingPtr field_;
    std::map<Exps, size_t> ids_;
};

}  // namespace semnorm
