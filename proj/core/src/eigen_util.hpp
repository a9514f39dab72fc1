#pragma once

#include <Eigen/Dense>

#include "unireduce/numerics.hpp"

namespace unireduce::detail {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& a) {
    Eigen::MatrixXcd m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
    return m;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
    ComplexMatrix a(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
    return a;
}

}  // namespace unireduce::detail
