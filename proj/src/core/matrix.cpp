#include "qosm/core/matrix.hpp"

namespace qosm {

SelectedPrimitivesMatrix build_matrix(const TraceLog& trace,
                                      const std::vector<PrimitiveId>& columns, int q,
                                      long t) {
    if (q < 1) throw Error(Errc::bad_config, "q must be >= 1");
    SelectedPrimitivesMatrix m;
    m.columns = columns;
    m.q = q;
    m.cells.resize(static_cast<std::size_t>(q) * columns.size());
    for (int row = 0; row < q; ++row) {
        for (std::size_t col = 0; col < columns.size(); ++col) {
            long when = t - row - lag_offset(columns[col].kind);
            if (when < trace.first_interval() || when >= trace.end_interval())
                throw Error(Errc::insufficient_history,
                            "lag " + std::to_string(row) + " of " +
                                columns[col].label() + " needs interval " +
                                std::to_string(when));
            m.cells[static_cast<std::size_t>(row) * columns.size() + col] =
                trace.at(metric_of(columns[col]), when);
        }
    }
    return m;
}

}  // namespace qosm
