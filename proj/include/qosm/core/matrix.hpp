#pragma once

#include "qosm/core/trace.hpp"
#include "qosm/core/types.hpp"

#include <vector>

namespace qosm {

/// Environmental primitives enter the model one interval behind control
/// primitives: the value at matrix row r is the traced mean at
/// t - r - lag_offset(kind).
inline int lag_offset(PrimitiveKind kind) {
    return kind == PrimitiveKind::Environmental ? 1 : 0;
}

/// The lagged input matrix: one column per selected primitive, q time-lag
/// rows. Row 0 holds the most recent values. Stored row-major.
struct SelectedPrimitivesMatrix {
    std::vector<PrimitiveId> columns;
    int q = 1;
    std::vector<double> cells;  // q rows x columns.size()

    double at(int row, int col) const {
        return cells[static_cast<std::size_t>(row) * columns.size() +
                     static_cast<std::size_t>(col)];
    }

    /// Row-major flattening (row 0 first); the learners' input layout.
    const std::vector<double>& flat() const { return cells; }
};

/// Extracts the matrix at interval `t`. Requires the trace to cover every
/// lag: column c needs intervals down to t - (q-1) - lag_offset(c.kind).
SelectedPrimitivesMatrix build_matrix(const TraceLog& trace,
                                      const std::vector<PrimitiveId>& columns, int q,
                                      long t);

}  // namespace qosm
