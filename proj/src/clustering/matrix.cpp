#include "segdiscover/clustering/matrix.hpp"

namespace segdiscover::clustering {

Matrix Matrix::from_embeddings(const embedding::EmbeddingMatrix& m) {
    Matrix out(m.count(), m.dim);
    for (std::size_t i = 0; i < m.values.size(); ++i) out.data[i] = m.values[i];
    return out;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace segdiscover::clustering
