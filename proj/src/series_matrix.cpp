#include "crflat/series_matrix.hpp"

#include <algorithm>

namespace crflat {

int SeriesMatrix::order() const {
  int order = Series::kExact;
  for (const auto& s : entries_) order = std::min(order, s.order());
  return order;
}

SeriesMatrix SeriesMatrix::with_column(Index j, const std::vector<Series>& column) const {
  if (static_cast<Index>(column.size()) != rows_) {
    throw Error(ErrorCode::DimensionMismatch, "column length does not match row count");
  }
  SeriesMatrix out = *this;
  for (Index i = 0; i < rows_; ++i) {
    if (!same_context(column[i].context(), ctx_)) {
      throw Error(ErrorCode::ContextMismatch, "column entry in a foreign context");
    }
    out(i, j) = column[i];
  }
  return out;
}

GaussianMatrix SeriesMatrix::at_origin() const {
  GaussianMatrix m(rows_, cols_);
  for (Index i = 0; i < rows_; ++i) {
    for (Index j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).constant_term();
  }
  return m;
}

}  // namespace crflat
